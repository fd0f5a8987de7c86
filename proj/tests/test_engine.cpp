#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <string>

#include "dubrovnik/bridge.hpp"
#include "dubrovnik/diagram.hpp"
#include "dubrovnik/engine.hpp"
#include "dubrovnik/m2.hpp"
#include "dubrovnik/random_diagrams.hpp"
#include "support/reference_eval.hpp"

using namespace dubrovnik;

namespace {

LaurentPoly lp(const std::string& text) { return LaurentPoly::parse(text); }

const char* kKinkPos = "X 1 2 2 1\n";
const char* kKinkNeg = "X 1 1 2 2\n";
const char* kHopf = "X 1 3 2 4\nX 3 1 4 2\n";
const char* kTrefoil = "X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n";

// Collapse lambda to 1: sum the coefficients of each z power.
std::map<int, Int> at_lambda_one(const LaurentPoly& p) {
    std::map<int, Int> out;
    for (const auto& [key, coef] : p.terms()) out[key.z] += coef;
    std::erase_if(out, [](const auto& e) { return e.second == 0; });
    return out;
}

Diagram double_twist_tangle() {
    return Diagram::tangle({Crossing{{1, 0, 4, 5}}, Crossing{{5, 4, 2, 3}}},
                           {0, 1, 2, 3});
}

} // namespace

TEST_CASE("small closed diagrams evaluate to frozen polynomials") {
    Evaluator ev;
    CHECK(ev.evaluate_link(Diagram::link({}, 1)).render() == "1 l^0 z^0");
    CHECK(ev.evaluate_link(Diagram::link({}, 2)) == LaurentPoly::delta());
    CHECK(ev.evaluate_link(Diagram::link({}, 4)) == LaurentPoly::delta_power(3));
    CHECK(ev.evaluate_link(Diagram::parse_pd(kKinkPos)).render() == "1 l^1 z^0");
    CHECK(ev.evaluate_link(Diagram::parse_pd(kKinkNeg)).render() == "1 l^-1 z^0");
    CHECK(ev.evaluate_link(Diagram::parse_pd(kHopf)).render() ==
          "1 l^-1 z^-1 + -1 l^1 z^-1 + 1 l^0 z^0 + 1 l^-1 z^1 + -1 l^1 z^1");
    CHECK(ev.evaluate_link(Diagram::parse_pd(kTrefoil)).render() ==
          "-1 l^-1 z^0 + 2 l^1 z^0 + 1 l^-2 z^1 + -1 l^0 z^1 + "
          "-1 l^-1 z^2 + 1 l^1 z^2");
}

TEST_CASE("writhe and ambient normalization") {
    Evaluator ev;
    CHECK(Evaluator::writhe(Diagram::parse_pd(kKinkPos)) == 1);
    CHECK(Evaluator::writhe(Diagram::parse_pd(kKinkNeg)) == -1);
    CHECK(Evaluator::writhe(Diagram::parse_pd(kTrefoil)) == 3);

    Diagram tre = Diagram::parse_pd(kTrefoil);
    LaurentPoly raw = ev.evaluate_link(tre);
    LaurentPoly norm = Evaluator::ambient_normalize(raw, Evaluator::writhe(tre));
    CHECK(norm.render() == "-1 l^-4 z^0 + 2 l^-2 z^0 + 1 l^-5 z^1 + "
                           "-1 l^-3 z^1 + -1 l^-4 z^2 + 1 l^-2 z^2");
    LaurentPoly shifted = raw;
    shifted.mul_monomial(0, -3);
    CHECK(norm == shifted);

    // A curl multiplies the raw value by lambda^{+-1} and shifts the writhe
    // to match, so the normalized value is untouched.
    std::mt19937_64 rng(77);
    for (unsigned long long seed = 1; seed <= 10; ++seed) {
        Diagram d = random_link(seed, 4);
        LaurentPoly base = Evaluator::ambient_normalize(ev.evaluate_link(d),
                                                        Evaluator::writhe(d));
        Diagram c = insert_curl(d, static_cast<int>(rng() % d.edge_count()), rng);
        LaurentPoly curled = Evaluator::ambient_normalize(
            ev.evaluate_link(c), Evaluator::writhe(c));
        CHECK(base == curled);
    }
}

TEST_CASE("setting lambda to 1 collapses every link to 1") {
    Evaluator ev;
    std::map<int, Int> unit{{0, Int(1)}};
    CHECK(at_lambda_one(ev.evaluate_link(Diagram::parse_pd(kHopf))) == unit);
    for (unsigned long long seed = 101; seed <= 115; ++seed) {
        Diagram d = random_link(seed, 3 + static_cast<int>(seed % 5));
        CHECK(at_lambda_one(ev.evaluate_link(d)) == unit);
    }
}

TEST_CASE("basis tangles decompose to pure coordinates") {
    Evaluator ev;
    for (auto strat : {Strategy::BridgeGuided, Strategy::FirstCrossing}) {
        CHECK(ev.decompose(basis_P(), strat) ==
              M2Element::pure(BasisTangle::P, LaurentPoly::one()));
        CHECK(ev.decompose(basis_Q(), strat) ==
              M2Element::pure(BasisTangle::Q, LaurentPoly::one()));
        CHECK(ev.decompose(basis_R1(), strat) ==
              M2Element::pure(BasisTangle::R1, LaurentPoly::one()));
        CHECK(ev.decompose(basis_R2(), strat) ==
              M2Element::pure(BasisTangle::R2, LaurentPoly::one()));
    }
}

TEST_CASE("frozen decompositions") {
    Evaluator ev;

    M2Element r2 = ev.decompose(basis_R2());
    Basis3 b3 = to_basis3(r2);
    CHECK(b3.g_P.render() == "1 l^0 z^1");
    CHECK(b3.g_Q.render() == "-1 l^0 z^1");
    CHECK(b3.g_R1.render() == "1 l^0 z^0");

    // Two stacked positive twists: one skein step plus a curl absorption.
    M2Element m = ev.decompose(double_twist_tangle());
    CHECK(m.f_P.render() == "1 l^0 z^0");
    CHECK(m.f_Q.render() == "1 l^-1 z^1");
    CHECK(m.f_R1.render() == "-1 l^0 z^1");
    CHECK(m.f_R2.is_zero());
    CHECK(m.source_n == 2);
    CHECK(m.source_b == 1);
}

TEST_CASE("basis tangle closures") {
    Evaluator ev;
    auto num = [&](const Diagram& t) {
        return ev.evaluate_link(Evaluator::close_diagram(t, ClosureMode::Numerator));
    };
    auto den = [&](const Diagram& t) {
        return ev.evaluate_link(Evaluator::close_diagram(t, ClosureMode::Denominator));
    };
    CHECK(num(basis_P()) == LaurentPoly::one());
    CHECK(den(basis_P()) == LaurentPoly::delta());
    CHECK(num(basis_Q()) == LaurentPoly::delta());
    CHECK(den(basis_Q()) == LaurentPoly::one());
    CHECK(num(basis_R1()).render() == "1 l^-1 z^0");
    CHECK(den(basis_R1()).render() == "1 l^1 z^0");
    CHECK(num(basis_R2()).render() == "1 l^1 z^0");
    CHECK(den(basis_R2()).render() == "1 l^-1 z^0");
}

TEST_CASE("closing a decomposition matches closing the diagram") {
    Evaluator ev;
    for (unsigned long long seed = 301; seed <= 320; ++seed) {
        Diagram t = random_tangle(seed, 2 + static_cast<int>(seed % 5));
        M2Element m = ev.decompose(t);
        for (auto mode : {ClosureMode::Numerator, ClosureMode::Denominator}) {
            LaurentPoly direct =
                ev.evaluate_link(Evaluator::close_diagram(t, mode));
            CHECK(ev.close_tangle(m, mode) == direct);
        }
    }
}

TEST_CASE("both strategies agree") {
    Evaluator ev;
    for (unsigned long long seed = 401; seed <= 420; ++seed) {
        Diagram t = random_tangle(seed, 2 + static_cast<int>(seed % 6));
        Basis3 a = to_basis3(ev.decompose(t, Strategy::BridgeGuided));
        Basis3 b = to_basis3(ev.decompose(t, Strategy::FirstCrossing));
        CHECK(a.g_P == b.g_P);
        CHECK(a.g_Q == b.g_Q);
        CHECK(a.g_R1 == b.g_R1);
    }
    for (unsigned long long seed = 451; seed <= 462; ++seed) {
        Diagram d = random_link(seed, 3 + static_cast<int>(seed % 5));
        CHECK(ev.evaluate_link(d, Strategy::BridgeGuided) ==
              ev.evaluate_link(d, Strategy::FirstCrossing));
    }
}

TEST_CASE("bridge bound holds for random diagrams") {
    Evaluator ev;
    for (unsigned long long seed = 501; seed <= 525; ++seed) {
        Diagram t = random_tangle(seed, 2 + static_cast<int>(seed % 7));
        M2Element m = ev.decompose(t);
        int bound = m.source_n - m.source_b;
        for (const auto* f : {&m.f_P, &m.f_Q, &m.f_R1, &m.f_R2}) {
            auto deg = f->z_degree();
            if (deg) CHECK(*deg <= bound);
        }
    }
    for (unsigned long long seed = 551; seed <= 570; ++seed) {
        Diagram d = random_link(seed, 3 + static_cast<int>(seed % 6));
        auto deg = ev.evaluate_link(d).z_degree();
        REQUIRE(deg.has_value());
        CHECK(*deg <= bridge_degree_bound(d));
    }
}

TEST_CASE("engine matches an unmemoized reference evaluator") {
    Evaluator ev;
    for (const char* pd : {kKinkPos, kKinkNeg, kHopf, kTrefoil}) {
        Diagram d = Diagram::parse_pd(pd);
        CHECK(refeval::matches(refeval::evaluate(d), ev.evaluate_link(d)));
    }
    for (unsigned long long seed = 601; seed <= 612; ++seed) {
        Diagram d = random_link(seed, 3 + static_cast<int>(seed % 6));
        CHECK(refeval::matches(refeval::evaluate(d), ev.evaluate_link(d)));
    }
    for (unsigned long long seed = 651; seed <= 658; ++seed) {
        Diagram t = random_tangle(seed, 2 + static_cast<int>(seed % 5));
        for (auto mode : {ClosureMode::Numerator, ClosureMode::Denominator}) {
            Diagram d = Evaluator::close_diagram(t, mode);
            CHECK(refeval::matches(refeval::evaluate(d), ev.evaluate_link(d)));
        }
    }
}

TEST_CASE("memoization is keyed on the diagram, not the labeling") {
    Evaluator ev;
    LaurentPoly first = ev.evaluate_link(Diagram::parse_pd(kTrefoil));
    // Same knot with permuted labels and crossing order lands on the cache.
    Diagram relabeled =
        Diagram::parse_pd("X 21 40 2 5\nX 30 9 40 21\nX 5 2 9 30\n");
    CHECK(ev.evaluate_link(relabeled) == first);
    CHECK(ev.evaluate_link(Diagram::parse_pd(kTrefoil)) == first);
}

TEST_CASE("engine rejects mismatched diagram kinds") {
    Evaluator ev;
    auto kind = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        FAIL("expected an error");
        return ErrorKind::Internal;
    };
    CHECK(kind([&] { ev.evaluate_link(basis_P()); }) == ErrorKind::NotALink);
    CHECK(kind([&] { ev.decompose(Diagram::parse_pd(kHopf)); }) ==
          ErrorKind::NotATangle);
    CHECK(kind([&] { ev.evaluate_link(Diagram::link({})); }) ==
          ErrorKind::NotALink);
}

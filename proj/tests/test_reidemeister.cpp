#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "dubrovnik/diagram.hpp"
#include "dubrovnik/engine.hpp"
#include "dubrovnik/random_diagrams.hpp"
#include "dubrovnik/reidemeister.hpp"
#include "support/builders.hpp"

using namespace dubrovnik;

namespace {

const char* kHopf = "X 1 3 2 4\nX 3 1 4 2\n";
const char* kTrefoil = "X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n";

int dart_total(const std::vector<std::vector<FaceDart>>& faces) {
    int total = 0;
    for (const auto& f : faces) total += static_cast<int>(f.size());
    return total;
}

} // namespace

TEST_CASE("face census") {
    // Connected diagrams on the sphere: F = E - V + 2 = n + 2.
    CHECK(enumerate_faces(Diagram::parse_pd("X 1 2 2 1\n")).size() == 3);
    CHECK(enumerate_faces(Diagram::parse_pd(kHopf)).size() == 4);
    CHECK(enumerate_faces(Diagram::parse_pd(kTrefoil)).size() == 5);

    for (unsigned long long seed = 1; seed <= 20; ++seed) {
        Diagram d = random_link(seed, 3 + static_cast<int>(seed % 5));
        auto faces = enumerate_faces(d);
        CHECK(dart_total(faces) == 4 * d.n());
        std::vector<char> seen(static_cast<size_t>(4 * d.n()), 0);
        for (const auto& f : faces)
            for (const auto& fd : f) {
                char& mark = seen[static_cast<size_t>(4 * fd.crossing + fd.slot)];
                CHECK(mark == 0);
                mark = 1;
            }
    }

    auto kind = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        FAIL("expected an error");
        return ErrorKind::Internal;
    };
    Diagram t = Diagram::tangle({}, {0, 1, 0, 1});
    CHECK(kind([&] { enumerate_faces(t); }) == ErrorKind::NotALink);
}

TEST_CASE("r2 insertion preserves the polynomial") {
    Evaluator ev;
    int tested = 0;
    for (unsigned long long seed = 31; seed <= 45 && tested < 20; ++seed) {
        Diagram d = random_link(seed, 2 + static_cast<int>(seed % 4));
        LaurentPoly base = ev.evaluate_link(d);
        for (const auto& f : enumerate_faces(d)) {
            if (f.size() < 2) continue;
            FaceDart a = f[0], b = f[1];
            if (d.crossing(a.crossing)[a.slot] == d.crossing(b.crossing)[b.slot])
                continue;
            for (bool first_over : {true, false}) {
                Diagram pushed = r2_insert(d, a, b, first_over);
                CHECK(pushed.n() == d.n() + 2);
                CHECK(ev.evaluate_link(pushed) == base);
            }
            ++tested;
            break;
        }
    }
    CHECK(tested >= 10);
}

TEST_CASE("r2 removal undoes an insertion") {
    Evaluator ev;
    int removed = 0;
    for (unsigned long long seed = 61; seed <= 72; ++seed) {
        Diagram d = random_link(seed, 2 + static_cast<int>(seed % 4));
        LaurentPoly base = ev.evaluate_link(d);
        for (const auto& f : enumerate_faces(d)) {
            if (f.size() < 2) continue;
            FaceDart a = f[0], b = f[1];
            if (d.crossing(a.crossing)[a.slot] == d.crossing(b.crossing)[b.slot])
                continue;
            Diagram pushed = r2_insert(d, a, b, seed % 2 == 0);
            std::optional<Bigon> bigon;
            for (const auto& pf : enumerate_faces(pushed))
                if (auto found = find_removable_bigon(pushed, pf)) {
                    bigon = found;
                    break;
                }
            REQUIRE(bigon.has_value());
            Diagram back = r2_remove(pushed, *bigon);
            CHECK(back.n() == pushed.n() - 2);
            CHECK(ev.evaluate_link(back) == base);
            ++removed;
            break;
        }
    }
    CHECK(removed >= 8);
}

TEST_CASE("clasp bigons are not removable") {
    // Both Hopf link faces of size two are clasps: no strand runs over both
    // crossings, so nothing reports as removable.
    Diagram d = Diagram::parse_pd(kHopf);
    for (const auto& f : enumerate_faces(d))
        CHECK_FALSE(find_removable_bigon(d, f).has_value());
}

TEST_CASE("r3 slide preserves the polynomial") {
    Evaluator ev;
    // Braid closures with a sigma_i sigma_j sigma_i stretch carry triangle
    // faces of every over-pattern; slide each one found.
    std::vector<std::vector<int>> words = {
        {1, 2, 1},         {1, 2, -1},      {-1, 2, 1},    {1, -2, 1},
        {-1, -2, -1},      {1, 2, 1, 2},    {2, 1, 2, -1}, {1, 2, -1, -2},
        {-1, 2, -1, 2, 1}, {1, 2, 1, 2, 1},
    };
    int slid = 0;
    for (const auto& word : words) {
        Diagram d = testsupport::braid_closure(3, word);
        LaurentPoly base = ev.evaluate_link(d);
        for (const auto& f : enumerate_faces(d)) {
            auto t = find_slidable_triangle(d, f);
            if (!t) continue;
            Diagram next = r3_slide(d, *t);
            CHECK(next.n() == d.n());
            CHECK(ev.evaluate_link(next) == base);
            ++slid;
        }
    }
    CHECK(slid >= 10);
}

TEST_CASE("random move walks preserve the polynomial") {
    Evaluator ev;
    std::mt19937_64 rng(20260815);
    for (unsigned long long seed = 151; seed <= 165; ++seed) {
        Diagram d = random_link(seed, 2 + static_cast<int>(seed % 4));
        LaurentPoly base = ev.evaluate_link(d);
        Diagram walked = random_moves(d, 6, rng);
        CHECK(ev.evaluate_link(walked) == base);
    }
}

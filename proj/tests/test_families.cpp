#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "dubrovnik/diagram.hpp"
#include "dubrovnik/engine.hpp"
#include "dubrovnik/families.hpp"
#include "dubrovnik/wiring.hpp"

using namespace dubrovnik;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Internal;
}

// All closed chains with k regions of magnitude 2 and the given sign word.
ChainSpec spec_from_signs(unsigned mask, int k) {
    ChainSpec spec;
    for (int i = 0; i < k; ++i)
        spec.twists.push_back((mask >> i) & 1 ? 2 : -2);
    return spec;
}

} // namespace

TEST_CASE("chain specs are validated") {
    CHECK(kind_of([] { build_chain({{}, true}); }) == ErrorKind::InvalidSpec);
    CHECK(kind_of([] { build_chain({{3, 2}, true}); }) == ErrorKind::InvalidSpec);
    CHECK(kind_of([] { build_chain({{2, 0}, true}); }) == ErrorKind::InvalidSpec);
    CHECK(kind_of([] { build_chain({{4}, true}); }) == ErrorKind::InvalidSpec);
    CHECK_NOTHROW(build_chain({{4}, false}));
}

TEST_CASE("chain diagrams have the promised shape") {
    Diagram two = build_chain({{2, -2}, true});
    CHECK(two.n() == 4);
    CHECK(two.strand_components() == 2);

    ChainSpec big{{2, -2, 2, -2, 2, -2, 2}, true};
    Diagram d = build_chain(big);
    CHECK(d.n() == chain_crossing_count(big));
    CHECK(d.n() == 14);
    CHECK(d.strand_components() == chain_component_count(big));
    CHECK(d.strand_components() == 7);

    ChainSpec open{{2, 2}, false};
    CHECK(build_chain(open).strand_components() == 3);
    CHECK(chain_component_count(open) == 3);
}

TEST_CASE("small closed chains evaluate to known degrees") {
    Evaluator ev;
    LaurentPoly mixed = ev.evaluate_link(build_chain({{2, -2}, true}));
    CHECK(mixed.z_degree() == 0);
    CHECK(mixed.z_min_degree() == -1);

    LaurentPoly same = ev.evaluate_link(build_chain({{2, 2}, true}));
    CHECK(same.z_degree() == 3);
    CHECK(same.z_min_degree() == -1);

    LaurentPoly wide = ev.evaluate_link(build_chain({{2, 4, -4, 2}, true}));
    CHECK(wide.z_degree() == 10);
    CHECK(wide.z_min_degree() == -3);

    Diagram chain43 = build_chain({{2, -2, 2, -2, 2, -2, 2}, true});
    LaurentPoly p43 = ev.evaluate_link(chain43);
    CHECK(p43.z_degree() == 10);
    CHECK(p43.z_min_degree() == -6);
}

TEST_CASE("sharp degree for closed chains with three or more regions") {
    Evaluator ev;
    for (int k = 3; k <= 5; ++k) {
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
            ChainSpec spec = spec_from_signs(mask, k);
            int p = 0, q = 0;
            for (int m : spec.twists) (m > 0 ? p : q) += 1;
            int n = chain_crossing_count(spec);
            LaurentPoly val = ev.evaluate_link(build_chain(spec));
            REQUIRE(val.z_degree().has_value());
            CHECK(*val.z_degree() == expected_chain_degree(p, q, n));
            CHECK(*val.z_min_degree() == -(chain_component_count(spec) - 1));
        }
    }
    // Same-sign pairs already obey the formula at two regions.
    for (unsigned mask : {0u, 3u}) {
        ChainSpec spec = spec_from_signs(mask, 2);
        LaurentPoly val = ev.evaluate_link(build_chain(spec));
        CHECK(*val.z_degree() == expected_chain_degree(mask ? 2 : 0, mask ? 0 : 2, 4));
    }
    // Unequal magnitudes, spot-checked.
    LaurentPoly v = ev.evaluate_link(build_chain({{4, -2, 2}, true}));
    CHECK(*v.z_degree() == expected_chain_degree(2, 1, 8));
}

TEST_CASE("two mixed regions collapse below the sharp degree") {
    // A closed two-region chain with opposite twist signs untwists: both
    // regions drain into the same pair of circles and the leading terms
    // cancel, so the sharp count needs at least three regions when signs mix.
    Evaluator ev;
    LaurentPoly small = ev.evaluate_link(build_chain({{2, -2}, true}));
    CHECK(*small.z_degree() == 0);
    CHECK(*small.z_degree() < expected_chain_degree(1, 1, 4));
    LaurentPoly large = ev.evaluate_link(build_chain({{4, -4}, true}));
    CHECK(*large.z_degree() < expected_chain_degree(1, 1, 8));
}

TEST_CASE("open chains respect the component floor") {
    Evaluator ev;
    for (const std::vector<int>& twists :
         {std::vector<int>{4}, {2, 2}, {2, -2, 2}, {-2, 4, -2}}) {
        ChainSpec spec{twists, false};
        LaurentPoly val = ev.evaluate_link(build_chain(spec));
        REQUIRE(val.z_min_degree().has_value());
        CHECK(*val.z_min_degree() >= -(chain_component_count(spec) - 1));
    }
}

TEST_CASE("chain splits reassemble to the same link") {
    Evaluator ev;
    ChainSpec spec{{2, -2, 2, -2}, true};
    ChainSplit split = split_chain_into_tangles(spec, ChainGrouping::Alternating);
    CHECK(split.wiring.k == 2);
    REQUIRE(split.tangles.size() == 2);
    for (const Diagram& t : split.tangles) {
        CHECK(t.is_tangle());
        CHECK(t.n() == 4);
        CHECK(longest_bridge(t).second == 2);
    }
    LaurentPoly direct = ev.evaluate_link(build_chain(spec));
    CHECK(ev.evaluate_link(insert_tangles(split.wiring, split.tangles)) == direct);
    CHECK(evaluate_by_decomposition(split.wiring, split.tangles, ev) == direct);
    CHECK(*direct.z_degree() == 5);
}

TEST_CASE("split granularity steers the wiring bound") {
    Evaluator ev;
    ChainSpec spec{{2, -2, 2, -2, 2, -2, 2}, true};

    ChainSplit fine = split_chain_into_tangles(spec, ChainGrouping::Alternating);
    CHECK(fine.wiring.k == 3);
    BoundReport fr = check_bound(fine.wiring, fine.tangles, ev);
    CHECK(fr.bound == 10);
    CHECK(fr.actual == 10);
    CHECK(fr.slack == 0);

    ChainSplit coarse = split_chain_into_tangles(spec, ChainGrouping::Blocked);
    CHECK(coarse.wiring.k == 2);
    BoundReport cr = check_bound(coarse.wiring, coarse.tangles, ev);
    CHECK(cr.bound == 11);
    CHECK(cr.actual == 10);
    CHECK(cr.slack == 1);

    CHECK(kind_of([&] {
              split_chain_into_tangles({{2, 2}, false}, ChainGrouping::Blocked);
          }) == ErrorKind::InvalidSpec);
}

TEST_CASE("rational words build one crossing per letter") {
    const std::vector<std::string> samples = {"", "V", "H", "VH", "HHV"};
    for (bool negative : {false, true}) {
        for (const std::string& word : samples) {
            Diagram t = build_rational({negative, word});
            CHECK(t.is_tangle());
            CHECK(t.n() == static_cast<int>(word.size()) + 1);
            CHECK(longest_bridge(t).second == 1);
        }
    }
    CHECK(kind_of([] { build_rational({false, "VX"}); }) == ErrorKind::InvalidSpec);
}

TEST_CASE("rational tangles meet their degree exactly with the quoted lead") {
    Evaluator ev;
    std::vector<std::string> words;
    for (const char* w : {"V", "H"}) words.push_back(w);
    for (const char* a : {"V", "H"})
        for (const char* b : {"V", "H"}) {
            words.push_back(std::string(a) + b);
            for (const char* c : {"V", "H"}) words.push_back(std::string(a) + b + c);
        }
    for (bool negative : {false, true})
        for (const std::string& word : words) {
            RationalWord r{negative, word};
            LeadingFormReport rep = verify_leading_form(r, ev);
            CHECK(rep.n == static_cast<int>(word.size()) + 1);
            CHECK(rep.degree_exact);
            // Exactly one reading of the two naming conventions fits, the
            // same one for every word: both swaps applied.
            CHECK_FALSE(rep.match[0]);
            CHECK_FALSE(rep.match[1]);
            CHECK_FALSE(rep.match[2]);
            CHECK(rep.match[3]);
            CHECK(conway_sign_positive(r) == !negative);
        }
    CHECK(kind_of([&] { verify_leading_form({false, ""}, ev); }) ==
          ErrorKind::InvalidSpec);
}

TEST_CASE("twist regions of a closed chain can be permuted freely") {
    Evaluator ev;
    ChainSpec spec{{2, 4, -4, 2}, true};
    CHECK(permuted_twists_equal(spec, {1, 0, 3, 2}, ev));
    CHECK(permuted_twists_equal(spec, {2, 3, 0, 1}, ev));
    CHECK(permuted_twists_equal(spec, {3, 1, 2, 0}, ev));
    CHECK(kind_of([&] { permuted_twists_equal(spec, {0, 0, 1, 2}, ev); }) ==
          ErrorKind::InvalidSpec);
    CHECK(kind_of([&] { permuted_twists_equal(spec, {0, 1}, ev); }) ==
          ErrorKind::InvalidSpec);
    CHECK(kind_of([&] {
              permuted_twists_equal({{2, 2}, false}, {0, 1}, ev);
          }) == ErrorKind::InvalidSpec);
}

#pragma once

#include <algorithm>
#include <climits>
#include <string>
#include <vector>

#include "dubrovnik/diagram.hpp"
#include "dubrovnik/engine.hpp"
#include "dubrovnik/wiring.hpp"

namespace dubrovnik {

// A chain of unknotted circles where consecutive circles share a twist
// region of an even number of crossings; closed chains wrap around.
struct ChainSpec {
    std::vector<int> twists;
    bool closed = true;
};

inline void validate_chain(const ChainSpec& spec) {
    if (spec.twists.empty()) fail(ErrorKind::InvalidSpec, "chain needs twist entries");
    for (int m : spec.twists)
        if (m == 0 || m % 2 != 0)
            fail(ErrorKind::InvalidSpec, "twist counts must be nonzero and even");
    if (spec.closed && spec.twists.size() < 2)
        fail(ErrorKind::InvalidSpec, "closed chain needs at least two regions");
}

inline int chain_crossing_count(const ChainSpec& spec) {
    int n = 0;
    for (int m : spec.twists) n += std::abs(m);
    return n;
}

inline int chain_component_count(const ChainSpec& spec) {
    return static_cast<int>(spec.twists.size()) + (spec.closed ? 0 : 1);
}

namespace detail {

// One twist region: a vertical ladder of |m| crossings between a left and a
// right strand.  Level edges run l_0..l_m and r_0..r_m from top to bottom;
// level 0 and level m are shared with the neighboring circles' arcs.
// A positive region stores crossing j as (r_{j-1}, l_{j-1}, l_j, r_j), a
// negative one rotates the frame by one slot so the other strand dives.
inline void emit_region(std::vector<Crossing>& xs, int m, int l0, int r0, int lm, int rm,
                        int& fresh) {
    int count = std::abs(m);
    std::vector<int> l(static_cast<size_t>(count) + 1), r(static_cast<size_t>(count) + 1);
    l[0] = l0;
    r[0] = r0;
    l[static_cast<size_t>(count)] = lm;
    r[static_cast<size_t>(count)] = rm;
    for (int j = 1; j < count; ++j) {
        l[static_cast<size_t>(j)] = fresh++;
        r[static_cast<size_t>(j)] = fresh++;
    }
    for (int j = 1; j <= count; ++j) {
        size_t a = static_cast<size_t>(j - 1), b = static_cast<size_t>(j);
        if (m > 0)
            xs.push_back(Crossing{{r[a], l[a], l[b], r[b]}});
        else
            xs.push_back(Crossing{{l[a], l[b], r[b], r[a]}});
    }
}

struct ChainEdges {
    // Per region: the four level-boundary edges shared with circle arcs.
    std::vector<int> tl, tr, bl, br;
    int fresh = 0;
};

inline ChainEdges chain_boundary_edges(const ChainSpec& spec) {
    int k = static_cast<int>(spec.twists.size());
    ChainEdges e;
    e.tl.assign(static_cast<size_t>(k), -1);
    e.tr.assign(static_cast<size_t>(k), -1);
    e.bl.assign(static_cast<size_t>(k), -1);
    e.br.assign(static_cast<size_t>(k), -1);
    if (spec.closed) {
        // Circle i hands its top arc from region i-1's right side to region
        // i's left side, and likewise along the bottom.
        for (int i = 0; i < k; ++i) {
            e.tl[static_cast<size_t>(i)] = e.fresh++;
            e.bl[static_cast<size_t>(i)] = e.fresh++;
        }
        for (int i = 0; i < k; ++i) {
            e.tr[static_cast<size_t>(i)] = e.tl[static_cast<size_t>((i + 1) % k)];
            e.br[static_cast<size_t>(i)] = e.bl[static_cast<size_t>((i + 1) % k)];
        }
    } else {
        for (int i = 0; i < k; ++i) {
            if (i == 0) {
                e.tl[0] = e.fresh++;
                e.bl[0] = e.tl[0]; // leftmost circle closes around the end
            } else {
                e.tl[static_cast<size_t>(i)] = e.tr[static_cast<size_t>(i - 1)];
                e.bl[static_cast<size_t>(i)] = e.br[static_cast<size_t>(i - 1)];
            }
            if (i == k - 1) {
                e.tr[static_cast<size_t>(i)] = e.fresh++;
                e.br[static_cast<size_t>(i)] = e.tr[static_cast<size_t>(i)];
            } else {
                e.tr[static_cast<size_t>(i)] = e.fresh++;
                e.br[static_cast<size_t>(i)] = e.fresh++;
            }
        }
    }
    return e;
}

} // namespace detail

inline Diagram build_chain(const ChainSpec& spec) {
    validate_chain(spec);
    int k = static_cast<int>(spec.twists.size());
    detail::ChainEdges e = detail::chain_boundary_edges(spec);
    std::vector<Crossing> xs;
    for (int i = 0; i < k; ++i)
        detail::emit_region(xs, spec.twists[static_cast<size_t>(i)], e.tl[static_cast<size_t>(i)],
                            e.tr[static_cast<size_t>(i)], e.bl[static_cast<size_t>(i)],
                            e.br[static_cast<size_t>(i)], e.fresh);
    return Diagram::link(std::move(xs), 0);
}

// Sharp degree for closed chains: crossings less the smaller sign count,
// less one.
inline int expected_chain_degree(int p, int q, int n) { return n - std::min(p, q) - 1; }

enum class ChainGrouping { Alternating, Blocked };

struct ChainSplit {
    WiringDiagram wiring;
    std::vector<Diagram> tangles;
};

// Cut a closed chain into consecutive region groups joined by the ring
// wiring.  A cut placed away from a sign change leaves that junction's
// length-2 bridge inside a group.  Alternating grouping keeps as many
// junctions interior as disjointness allows; blocked grouping keeps two
// (the paper's weak split).
inline ChainSplit split_chain_into_tangles(const ChainSpec& spec, ChainGrouping grouping) {
    validate_chain(spec);
    if (!spec.closed) fail(ErrorKind::InvalidSpec, "splitting is for closed chains");
    int k = static_cast<int>(spec.twists.size());
    auto sign = [&](int i) { return spec.twists[static_cast<size_t>(((i % k) + k) % k)] > 0; };
    // Junction j sits between regions j and j+1 (mod k).
    std::vector<int> junctions;
    for (int j = 0; j < k; ++j)
        if (sign(j) != sign(j + 1)) junctions.push_back(j);
    std::vector<int> chosen;
    for (int j : junctions) {
        if (!chosen.empty() && j == chosen.back() + 1) continue;
        if (j == k - 1 && !chosen.empty() && chosen.front() == 0) continue;
        chosen.push_back(j);
        if (grouping == ChainGrouping::Blocked && chosen.size() == 2) break;
    }
    // Group boundaries: cut after region j+1 for each chosen junction, so
    // regions j and j+1 stay together.
    std::vector<int> cuts;
    for (int j : chosen) cuts.push_back((j + 2) % k);
    if (cuts.empty()) cuts.push_back(0); // single-sign chain: one group
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    int groups = static_cast<int>(cuts.size());

    ChainSplit out;
    out.wiring.k = groups;
    for (int g = 0; g < groups; ++g) {
        int h = (g + 1) % groups;
        out.wiring.joins.push_back({{g, Corner::NE}, {h, Corner::NW}});
        out.wiring.joins.push_back({{g, Corner::SE}, {h, Corner::SW}});
    }
    validate_wiring(out.wiring);

    detail::ChainEdges e = detail::chain_boundary_edges(spec);
    for (int g = 0; g < groups; ++g) {
        int first = cuts[static_cast<size_t>(g)];
        int last_excl = cuts[static_cast<size_t>((g + 1) % groups)];
        std::vector<Crossing> xs;
        int fresh = e.fresh;
        std::vector<int> span;
        for (int i = first; i != last_excl || span.empty(); i = (i + 1) % k)
            span.push_back(i);
        // With a single group the last region's right edges wrap onto the
        // first region's left edges; cut them apart with fresh labels.
        int ne = e.tr[static_cast<size_t>(span.back())];
        int se = e.br[static_cast<size_t>(span.back())];
        if (groups == 1) {
            ne = fresh++;
            se = fresh++;
        }
        for (int i : span) {
            int tr = e.tr[static_cast<size_t>(i)], br = e.br[static_cast<size_t>(i)];
            if (i == span.back()) { tr = ne; br = se; }
            detail::emit_region(xs, spec.twists[static_cast<size_t>(i)],
                                e.tl[static_cast<size_t>(i)], tr,
                                e.bl[static_cast<size_t>(i)], br, fresh);
        }
        int nw = e.tl[static_cast<size_t>(span.front())];
        int sw = e.bl[static_cast<size_t>(span.front())];
        out.tangles.push_back(Diagram::tangle(std::move(xs), {nw, ne, sw, se}, 0));
    }
    return out;
}

// Rational tangles: start from the one-crossing tangle of the given sign and
// repeatedly adjoin another copy, vertically (stacked below) or horizontally
// (to the right).
struct RationalWord {
    bool negative = false;
    std::string word; // letters V and H
};

inline void validate_rational(const RationalWord& r) {
    for (char c : r.word)
        if (c != 'V' && c != 'H')
            fail(ErrorKind::InvalidSpec, std::string("bad build letter '") + c + "'");
}

namespace detail {

inline Diagram compose_tangles(const Diagram& a, const Diagram& b, bool vertical) {
    int base = a.edge_count();
    EdgeGlue glue(base + b.edge_count());
    auto ea = [&](Corner c) { return a.endpoint(c); };
    auto eb = [&](Corner c) { return base + b.endpoint(c); };
    std::array<int, 4> eps{};
    if (vertical) {
        glue.glue(ea(Corner::SW), eb(Corner::NW));
        glue.glue(ea(Corner::SE), eb(Corner::NE));
        eps = {ea(Corner::NW), ea(Corner::NE), eb(Corner::SW), eb(Corner::SE)};
    } else {
        glue.glue(ea(Corner::NE), eb(Corner::NW));
        glue.glue(ea(Corner::SE), eb(Corner::SW));
        eps = {ea(Corner::NW), eb(Corner::NE), ea(Corner::SW), eb(Corner::SE)};
    }
    std::vector<Crossing> xs;
    for (const Crossing& c : a.crossings()) {
        Crossing m;
        for (int s = 0; s < 4; ++s) m.e[static_cast<size_t>(s)] = glue.find(c[s]);
        xs.push_back(m);
    }
    for (const Crossing& c : b.crossings()) {
        Crossing m;
        for (int s = 0; s < 4; ++s) m.e[static_cast<size_t>(s)] = glue.find(c[s] + base);
        xs.push_back(m);
    }
    for (int& ep : eps) ep = glue.find(ep);
    return Diagram::tangle(std::move(xs), eps,
                           a.free_circles() + b.free_circles() + glue.circles);
}

} // namespace detail

inline Diagram build_rational(const RationalWord& r) {
    validate_rational(r);
    Diagram step = basis_diagram(r.negative ? BasisTangle::R2 : BasisTangle::R1);
    Diagram t = step;
    for (char c : r.word) t = detail::compose_tangles(t, step, c == 'V');
    return t;
}

// Conway continued fraction of the build word: read the word from the
// outside in (reversed), each maximal letter run is one partial quotient,
// the seed crossing extends the innermost run.  Sign of the value classifies
// the tangle.
inline bool conway_sign_positive(const RationalWord& r) {
    validate_rational(r);
    std::vector<long long> runs;
    std::string rev(r.word.rbegin(), r.word.rend());
    for (size_t i = 0; i < rev.size();) {
        size_t j = i;
        while (j < rev.size() && rev[j] == rev[i]) ++j;
        runs.push_back(static_cast<long long>(j - i));
        i = j;
    }
    if (runs.empty()) runs.push_back(0);
    runs.back() += 1; // the seed crossing
    long long s = r.negative ? -1 : +1;
    // Evaluate a0 + 1/(a1 + 1/(...)) as an exact fraction from the inside.
    long long num = s * runs.back(), den = 1;
    for (size_t i = runs.size() - 1; i-- > 0;) {
        std::swap(num, den);
        num += s * runs[i] * den;
    }
    if (den < 0) { num = -num; den = -den; }
    if (num == 0) fail(ErrorKind::Internal, "continued fraction vanished");
    return num > 0;
}

// The sharp leading coefficient of a rational tangle's decomposition: a
// two-term combination, one crossing tangle minus lambda^e times a
// crossingless one, up to a global sign.  Four case formulas are quoted for
// (sign, vertical/horizontal); because the flat tangle naming and the
// vertical/horizontal naming each admit two conventions, the checker tests
// all four readings and reports which ones match.
struct LeadingFormReport {
    int n = 0;
    bool degree_exact = false;  // max coefficient z-degree is exactly n-1
    std::array<bool, 4> match{}; // index = 2*(P<->Q swapped) + (V<->H swapped)
    std::string computed;        // rendered leading tuple, for diagnostics
};

inline LeadingFormReport verify_leading_form(const RationalWord& r, Evaluator& ev) {
    validate_rational(r);
    if (r.word.empty()) fail(ErrorKind::InvalidSpec, "leading form needs at least two crossings");
    Diagram t = build_rational(r);
    int n = t.n();
    M2Element m = ev.decompose(t);
    LeadingFormReport rep;
    rep.n = n;
    int maxdeg = INT_MIN;
    for (BasisTangle b :
         {BasisTangle::P, BasisTangle::Q, BasisTangle::R1, BasisTangle::R2})
        if (auto d = m.coeff(b).z_degree()) maxdeg = std::max(maxdeg, *d);
    rep.degree_exact = maxdeg == n - 1;

    std::array<LaurentPoly, 4> lead = {
        m.f_P.z_part(n - 1), m.f_Q.z_part(n - 1), m.f_R1.z_part(n - 1),
        m.f_R2.z_part(n - 1)};
    rep.computed = "P:" + lead[0].render() + " Q:" + lead[1].render() +
                   " R1:" + lead[2].render() + " R2:" + lead[3].render();

    bool vertical = r.word.back() == 'V';
    for (int swap_pq = 0; swap_pq < 2; ++swap_pq)
        for (int swap_vh = 0; swap_vh < 2; ++swap_vh) {
            bool v = swap_vh ? !vertical : vertical;
            // Quoted forms: pos V: R1 - l Q; pos H: R1 - 1/l P;
            //               neg V: R2 - 1/l Q; neg H: R2 - l P.
            int rest = r.negative ? 3 : 2; // R2 or R1 slot in lead[]
            int flat;
            int e;
            if (!r.negative) { flat = v ? 1 : 0; e = v ? 1 : -1; }
            else             { flat = v ? 1 : 0; e = v ? -1 : 1; }
            if (swap_pq) flat = 1 - flat;
            int other_flat = 1 - flat;
            int other_cross = 5 - rest; // the unused crossing tangle
            bool ok = false;
            for (int s : {+1, -1}) {
                LaurentPoly want_r = LaurentPoly::monomial(s, 0, 0);
                LaurentPoly want_f = LaurentPoly::monomial(-s, 0, e);
                ok = lead[static_cast<size_t>(rest)] == want_r &&
                     lead[static_cast<size_t>(flat)] == want_f &&
                     lead[static_cast<size_t>(other_flat)].is_zero() &&
                     lead[static_cast<size_t>(other_cross)].is_zero();
                if (ok) break;
            }
            rep.match[static_cast<size_t>(2 * swap_pq + swap_vh)] = ok;
        }
    return rep;
}

inline bool permuted_twists_equal(const ChainSpec& spec, const std::vector<int>& perm,
                                  Evaluator& ev) {
    validate_chain(spec);
    if (!spec.closed) fail(ErrorKind::InvalidSpec, "mutation check is for closed chains");
    if (perm.size() != spec.twists.size())
        fail(ErrorKind::InvalidSpec, "permutation length mismatch");
    ChainSpec shuffled = spec;
    std::vector<char> hit(perm.size(), 0);
    for (size_t i = 0; i < perm.size(); ++i) {
        int p = perm[i];
        if (p < 0 || p >= static_cast<int>(perm.size()) || hit[static_cast<size_t>(p)])
            fail(ErrorKind::InvalidSpec, "not a permutation");
        hit[static_cast<size_t>(p)] = 1;
        shuffled.twists[i] = spec.twists[static_cast<size_t>(p)];
    }
    return ev.evaluate_link(build_chain(spec)) == ev.evaluate_link(build_chain(shuffled));
}

} // namespace dubrovnik

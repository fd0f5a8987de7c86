#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "dubrovnik/bridge.hpp"
#include "dubrovnik/canonical.hpp"
#include "dubrovnik/diagram.hpp"
#include "dubrovnik/laurent.hpp"
#include "dubrovnik/m2.hpp"
#include "dubrovnik/moves.hpp"

namespace dubrovnik {

// Crossing-selection strategy for the skein recursion.  BridgeGuided follows
// the longest bordering bridge; FirstCrossing drives the diagram toward a
// layered (descending) form along a fixed traversal.  Both must agree after
// eliminating the R2 redundancy.
enum class Strategy { BridgeGuided = 0, FirstCrossing = 1 };

enum class ClosureMode { Numerator, Denominator };

namespace detail {

inline const Bridge* pick_skein_bridge(const std::vector<Bridge>& bs) {
    for (const auto& b : bs)
        if (b.prop != Properness::proper || !b.interior_end_crossings().empty())
            return &b;
    return nullptr;
}

// Fixed traversal of all passages: tangle arcs from the corners first
// (NW, NE, SW, SE), then closed strands.  Slot data refers to the diagram
// the traversal was built from; crossings later switched in place rotate
// their frame by -1 per switch.
struct Traversal {
    std::vector<Passage> seq;
    std::vector<int> strand_of; // parallel to seq
    std::vector<int> strand_end_corner;
    int strand_count = 0;
    int open_strands = 0;
};

inline Traversal make_traversal(const Diagram& d) {
    Traversal t;
    auto strands = extract_strands(d);
    t.strand_count = static_cast<int>(strands.size());
    for (int i = 0; i < t.strand_count; ++i) {
        const auto& s = strands[static_cast<size_t>(i)];
        if (!s.closed) ++t.open_strands;
        t.strand_end_corner.push_back(s.end_corner);
        for (const auto& p : s.passages) {
            t.seq.push_back(p);
            t.strand_of.push_back(i);
        }
    }
    return t;
}

// First crossing whose first visit dives under, given how often each
// crossing has been switched since the traversal was built.
inline int first_bad(const Traversal& t, const std::vector<int>& switched,
                     std::vector<char>& seen_scratch) {
    std::fill(seen_scratch.begin(), seen_scratch.end(), 0);
    for (const auto& p : t.seq) {
        if (seen_scratch[static_cast<size_t>(p.crossing)]) continue;
        seen_scratch[static_cast<size_t>(p.crossing)] = 1;
        int slot = (p.arrive_slot - switched[static_cast<size_t>(p.crossing)] + 4) % 4;
        if (!Diagram::over_passage(slot)) return p.crossing;
    }
    return -1;
}

// Writhe-style sign of a crossing from its two passage exits: positive when
// the over-strand exit sits one counterclockwise step past the under exit.
inline int crossing_sign(int under_exit_slot, int over_exit_slot) {
    return over_exit_slot == (under_exit_slot + 1) % 4 ? +1 : -1;
}

// Value of a layered diagram: every crossing's first visit (in the given
// traversal) passes over.  Such a diagram is regularly isotopic to its
// flattened strands, so only self-crossing curls and split circles remain.
struct LayeredValue {
    int lambda_exp = 0;
    int closed_strands = 0;
    BasisTangle basis = BasisTangle::P; // tangles only
};

inline LayeredValue layered_value(const Traversal& t,
                                  const std::vector<int>& switched,
                                  bool is_tangle) {
    // Collect both passages of each crossing, with current slots.
    std::vector<int> under_exit, over_exit, under_strand, over_strand;
    int maxc = -1;
    for (const auto& p : t.seq) maxc = std::max(maxc, p.crossing);
    under_exit.assign(static_cast<size_t>(maxc + 1), -1);
    over_exit.assign(static_cast<size_t>(maxc + 1), -1);
    under_strand.assign(static_cast<size_t>(maxc + 1), -1);
    over_strand.assign(static_cast<size_t>(maxc + 1), -1);
    for (size_t i = 0; i < t.seq.size(); ++i) {
        const auto& p = t.seq[i];
        int slot = (p.arrive_slot - switched[static_cast<size_t>(p.crossing)] + 4) % 4;
        int exit = (slot + 2) % 4;
        if (Diagram::over_passage(slot)) {
            over_exit[static_cast<size_t>(p.crossing)] = exit;
            over_strand[static_cast<size_t>(p.crossing)] = t.strand_of[i];
        } else {
            under_exit[static_cast<size_t>(p.crossing)] = exit;
            under_strand[static_cast<size_t>(p.crossing)] = t.strand_of[i];
        }
    }
    LayeredValue v;
    for (int c = 0; c <= maxc; ++c) {
        if (under_exit[static_cast<size_t>(c)] < 0) continue;
        if (under_strand[static_cast<size_t>(c)] == over_strand[static_cast<size_t>(c)])
            v.lambda_exp += crossing_sign(under_exit[static_cast<size_t>(c)],
                                          over_exit[static_cast<size_t>(c)]);
    }
    v.closed_strands = t.strand_count - t.open_strands;
    if (is_tangle) {
        // Strand 0 starts at NW; where it ends fixes the pattern.  In a
        // layered diagram strand 0 lies on top, so a diagonal pattern is the
        // NW-SE-over crossing.
        switch (t.strand_end_corner[0]) {
            case 2: v.basis = BasisTangle::P; break;  // SW
            case 1: v.basis = BasisTangle::Q; break;  // NE
            case 3: v.basis = BasisTangle::R1; break; // SE
            default: fail(ErrorKind::Internal, "open strand returned to NW");
        }
    }
    return v;
}

} // namespace detail

class Evaluator {
  public:
    M2Element decompose(const Diagram& t, Strategy strat = Strategy::BridgeGuided) {
        if (!t.is_tangle()) fail(ErrorKind::NotATangle, "decompose needs a 4-ended tangle");
        return decompose_impl(t, static_cast<int>(strat), 0);
    }

    LaurentPoly evaluate_link(const Diagram& d, Strategy strat = Strategy::BridgeGuided) {
        if (d.is_tangle()) fail(ErrorKind::NotALink, "evaluate needs a closed diagram");
        if (d.n() == 0 && d.free_circles() == 0)
            fail(ErrorKind::NotALink, "empty diagram has no value");
        return link_impl(d, static_cast<int>(strat), 0);
    }

    // Join a tangle's corners: numerator ties NW-NE and SW-SE, denominator
    // ties NW-SW and NE-SE.
    static Diagram close_diagram(const Diagram& t, ClosureMode mode) {
        if (!t.is_tangle()) fail(ErrorKind::NotATangle, "closure needs a tangle");
        detail::EdgeGlue glue(t.edge_count());
        const auto& eps = t.endpoints();
        auto tie = [&](Corner a, Corner b) {
            glue.glue(eps[static_cast<size_t>(a)], eps[static_cast<size_t>(b)]);
        };
        if (mode == ClosureMode::Numerator) {
            tie(Corner::NW, Corner::NE);
            tie(Corner::SW, Corner::SE);
        } else {
            tie(Corner::NW, Corner::SW);
            tie(Corner::NE, Corner::SE);
        }
        std::vector<Crossing> xs(t.crossings());
        for (auto& c : xs)
            for (int s = 0; s < 4; ++s) c[s] = glue.find(c[s]);
        return Diagram::link(std::move(xs), t.free_circles() + glue.circles);
    }

    LaurentPoly close_tangle(const M2Element& m, ClosureMode mode,
                             Strategy strat = Strategy::BridgeGuided) {
        LaurentPoly out;
        for (BasisTangle b : {BasisTangle::P, BasisTangle::Q, BasisTangle::R1,
                              BasisTangle::R2}) {
            const LaurentPoly& c = m.coeff(b);
            if (c.is_zero()) continue;
            out += c * evaluate_link(close_diagram(basis_diagram(b), mode), strat);
        }
        return out;
    }

    // Deterministic orientation writhe: sum of crossing signs with each
    // strand oriented by its first traversal.
    static int writhe(const Diagram& d) {
        int w = 0;
        std::vector<int> under_exit(static_cast<size_t>(d.n()), -1),
            over_exit(static_cast<size_t>(d.n()), -1);
        for (const auto& s : extract_strands(d))
            for (const auto& p : s.passages) {
                int exit = (p.arrive_slot + 2) % 4;
                (p.over() ? over_exit : under_exit)[static_cast<size_t>(p.crossing)] = exit;
            }
        for (int c = 0; c < d.n(); ++c)
            w += detail::crossing_sign(under_exit[static_cast<size_t>(c)],
                                       over_exit[static_cast<size_t>(c)]);
        return w;
    }

    static LaurentPoly ambient_normalize(const LaurentPoly& p, int writhe_value) {
        return p * LaurentPoly::lambda_power(-writhe_value);
    }

    size_t memo_size() const {
        return tangle_memo_[0].size() + tangle_memo_[1].size() + link_memo_[0].size() +
               link_memo_[1].size();
    }

  private:
    static constexpr int kMaxDepth = 100000;

    static LaurentPoly scale_factor(const Simplified& s) {
        return LaurentPoly::lambda_power(s.lambda_exp) * LaurentPoly::delta_power(s.delta_exp);
    }

    static BasisTangle one_crossing_basis(const Diagram& d) {
        // After curl removal a 1-crossing tangle has four distinct corner
        // rays; the under pair tells R1 from R2.
        const Crossing& x = d.crossing(0);
        auto ray_corner = [&](int slot) {
            for (int k = 0; k < 4; ++k)
                if (d.endpoint(static_cast<Corner>(k)) == x[slot]) return k;
            fail(ErrorKind::Internal, "crossing ray misses the boundary");
        };
        int a = ray_corner(0), b = ray_corner(2);
        bool under_is_ne_sw = (a == 1 && b == 2) || (a == 2 && b == 1);
        bool under_is_nw_se = (a == 0 && b == 3) || (a == 3 && b == 0);
        if (under_is_ne_sw) return BasisTangle::R1;
        if (under_is_nw_se) return BasisTangle::R2;
        fail(ErrorKind::Internal, "one-crossing tangle with adjacent under corners");
    }

    M2Element decompose_impl(const Diagram& d, int strat, int depth) {
        if (depth > kMaxDepth) fail(ErrorKind::Internal, "recursion depth exceeded");
        std::string key = canonical_key(d);
        if (auto it = tangle_memo_[strat].find(key); it != tangle_memo_[strat].end())
            return it->second;

        Simplified s = simplify_trivial(d);
        LaurentPoly scale = scale_factor(s);
        M2Element res;
        if (s.d.n() == 0) {
            res = M2Element::pure(identity_pattern(s.d) ? BasisTangle::P : BasisTangle::Q,
                                  std::move(scale));
        } else if (s.d.n() == 1) {
            res = M2Element::pure(one_crossing_basis(s.d), std::move(scale));
        } else if (strat == static_cast<int>(Strategy::BridgeGuided)) {
            res = scale * decompose_by_bridge(s.d, strat, depth);
        } else {
            res = scale * decompose_by_descent(s.d, strat, depth);
        }
        res.source_n = d.n();
        res.source_b = longest_bridge(d).second;
        if (strat == static_cast<int>(Strategy::BridgeGuided))
            check_bound(res, key);
        tangle_memo_[strat].emplace(std::move(key), res);
        return res;
    }

    M2Element decompose_by_bridge(const Diagram& d, int strat, int depth) {
        auto bridges = find_bridges(d);
        const Bridge* b = detail::pick_skein_bridge(bridges);
        if (!b) fail(ErrorKind::Internal, "no usable bridge on a 2+ crossing tangle");
        if (b->prop != Properness::proper) {
            Reduced r = reduce_improper_bridge(d, *b);
            if (r.d.n() >= d.n())
                fail(ErrorKind::Internal, "bridge reduction failed to drop a crossing");
            return LaurentPoly::lambda_power(r.lambda_exp) *
                   decompose_impl(r.d, strat, depth + 1);
        }
        int c = b->interior_end_crossings().front();
        SkeinTriple tr = skein_triple(d, c);
        LaurentPoly z = LaurentPoly::z_power(1);
        return decompose_impl(tr.switched, strat, depth + 1) +
               z * (decompose_impl(tr.smooth_0, strat, depth + 1) -
                    decompose_impl(tr.smooth_inf, strat, depth + 1));
    }

    M2Element decompose_by_descent(const Diagram& d, int strat, int depth) {
        detail::Traversal trav = detail::make_traversal(d);
        std::vector<int> switched(static_cast<size_t>(d.n()), 0);
        std::vector<char> scratch(static_cast<size_t>(d.n()), 0);
        Diagram cur = d;
        M2Element acc;
        LaurentPoly z = LaurentPoly::z_power(1);
        for (;;) {
            int c = detail::first_bad(trav, switched, scratch);
            if (c < 0) break;
            SkeinTriple tr = skein_triple(cur, c);
            acc += z * (decompose_impl(tr.smooth_0, strat, depth + 1) -
                        decompose_impl(tr.smooth_inf, strat, depth + 1));
            cur = std::move(tr.switched);
            ++switched[static_cast<size_t>(c)];
        }
        detail::LayeredValue v = detail::layered_value(trav, switched, true);
        acc += M2Element::pure(
            v.basis, LaurentPoly::lambda_power(v.lambda_exp) *
                         LaurentPoly::delta_power(v.closed_strands));
        return acc;
    }

    void check_bound(const M2Element& m, const std::string& key) const {
        int bound = m.source_n - m.source_b;
        for (BasisTangle b : {BasisTangle::P, BasisTangle::Q, BasisTangle::R1,
                              BasisTangle::R2}) {
            auto deg = m.coeff(b).z_degree();
            if (deg && *deg > bound)
                fail(ErrorKind::BoundViolated,
                     "coefficient degree " + std::to_string(*deg) + " exceeds " +
                         std::to_string(bound) + " for " + key);
        }
    }

    LaurentPoly link_impl(const Diagram& d, int strat, int depth) {
        if (depth > kMaxDepth) fail(ErrorKind::Internal, "recursion depth exceeded");
        std::string key = canonical_key(d);
        if (auto it = link_memo_[strat].find(key); it != link_memo_[strat].end())
            return it->second;

        Simplified s = simplify_trivial(d);
        LaurentPoly res;
        if (s.d.n() == 0) {
            if (s.delta_exp < 1)
                fail(ErrorKind::Internal, "closed diagram vanished entirely");
            res = LaurentPoly::lambda_power(s.lambda_exp) *
                  LaurentPoly::delta_power(s.delta_exp - 1);
        } else {
            LaurentPoly core;
            if (strat == static_cast<int>(Strategy::BridgeGuided)) {
                auto bridges = find_bridges(s.d);
                const Bridge* b = detail::pick_skein_bridge(bridges);
                if (!b) fail(ErrorKind::Internal, "no usable bridge on a closed diagram");
                if (b->prop != Properness::proper) {
                    Reduced r = reduce_improper_bridge(s.d, *b);
                    if (r.d.n() >= s.d.n())
                        fail(ErrorKind::Internal, "bridge reduction failed to drop a crossing");
                    core = LaurentPoly::lambda_power(r.lambda_exp) *
                           link_impl(r.d, strat, depth + 1);
                } else {
                    int c = b->interior_end_crossings().front();
                    SkeinTriple tr = skein_triple(s.d, c);
                    LaurentPoly z = LaurentPoly::z_power(1);
                    core = link_impl(tr.switched, strat, depth + 1) +
                           z * (link_impl(tr.smooth_0, strat, depth + 1) -
                                link_impl(tr.smooth_inf, strat, depth + 1));
                }
            } else {
                detail::Traversal trav = detail::make_traversal(s.d);
                std::vector<int> switched(static_cast<size_t>(s.d.n()), 0);
                std::vector<char> scratch(static_cast<size_t>(s.d.n()), 0);
                Diagram cur = s.d;
                LaurentPoly z = LaurentPoly::z_power(1);
                for (;;) {
                    int c = detail::first_bad(trav, switched, scratch);
                    if (c < 0) break;
                    SkeinTriple tr = skein_triple(cur, c);
                    core += z * (link_impl(tr.smooth_0, strat, depth + 1) -
                                 link_impl(tr.smooth_inf, strat, depth + 1));
                    cur = std::move(tr.switched);
                    ++switched[static_cast<size_t>(c)];
                }
                detail::LayeredValue v = detail::layered_value(trav, switched, false);
                core += LaurentPoly::lambda_power(v.lambda_exp) *
                        LaurentPoly::delta_power(v.closed_strands - 1);
            }
            res = LaurentPoly::lambda_power(s.lambda_exp) *
                  LaurentPoly::delta_power(s.delta_exp) * core;
        }
        int bound = d.n() - longest_bridge(d).second;
        if (auto deg = res.z_degree(); deg && *deg > bound)
            fail(ErrorKind::BoundViolated,
                 "link degree " + std::to_string(*deg) + " exceeds " + std::to_string(bound));
        link_impl_store(key, res, strat);
        return res;
    }

    void link_impl_store(std::string key, const LaurentPoly& res, int strat) {
        link_memo_[strat].emplace(std::move(key), res);
    }

    std::unordered_map<std::string, M2Element> tangle_memo_[2];
    std::unordered_map<std::string, LaurentPoly> link_memo_[2];
};

} // namespace dubrovnik

#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "dubrovnik/diagram.hpp"
#include "dubrovnik/m2.hpp"
#include "dubrovnik/moves.hpp"

namespace dubrovnik {

// Seeded generators used by the verification suites.  Growth is by local
// surgery: pick two edges and join them through a fresh crossing, keeping
// the result only if it validates, with curl insertion as the fallback that
// always succeeds.

namespace detail {

inline void set_attachment(std::vector<Crossing>& xs, std::optional<std::array<int, 4>>& eps,
                           const Att& at, int edge) {
    if (at.at_corner())
        (*eps)[static_cast<size_t>(at.slot)] = edge;
    else
        xs[static_cast<size_t>(at.crossing)].e[static_cast<size_t>(at.slot)] = edge;
}

inline Diagram with_extra_crossing(const Diagram& d, std::vector<Crossing> xs,
                                   std::optional<std::array<int, 4>> eps) {
    if (eps) return Diagram::tangle(std::move(xs), *eps, d.free_circles());
    return Diagram::link(std::move(xs), d.free_circles());
}

} // namespace detail

// Split edges e1 and e2 and join the four loose ends through one new
// crossing.  Fails (nullopt) when no attachment pattern embeds in the plane.
inline std::optional<Diagram> insert_crossing(const Diagram& d, int e1, int e2,
                                              std::mt19937_64& rng) {
    if (e1 == e2) return std::nullopt;
    int e1b = d.edge_count(), e2b = d.edge_count() + 1;
    std::vector<Crossing> base(d.crossings());
    std::optional<std::array<int, 4>> eps;
    if (d.is_tangle()) eps = d.endpoints();
    detail::set_attachment(base, eps, d.edge_ends(e1)[1], e1b);
    detail::set_attachment(base, eps, d.edge_ends(e2)[1], e2b);
    std::array<Crossing, 4> candidates = {
        Crossing{{e1, e2, e1b, e2b}},
        Crossing{{e2, e1b, e2b, e1}},
        Crossing{{e1, e2b, e1b, e2}},
        Crossing{{e2b, e1b, e2, e1}},
    };
    std::shuffle(candidates.begin(), candidates.end(), rng);
    for (const auto& c : candidates) {
        std::vector<Crossing> xs = base;
        xs.push_back(c);
        try {
            return detail::with_extra_crossing(d, std::move(xs), eps);
        } catch (const Error&) {
        }
    }
    return std::nullopt;
}

// Add a one-crossing loop hanging off edge e; always embeds.
inline Diagram insert_curl(const Diagram& d, int e, std::mt19937_64& rng) {
    int eb = d.edge_count(), m = d.edge_count() + 1;
    std::vector<Crossing> xs(d.crossings());
    std::optional<std::array<int, 4>> eps;
    if (d.is_tangle()) eps = d.endpoints();
    detail::set_attachment(xs, eps, d.edge_ends(e)[1], eb);
    if (rng() % 2 == 0)
        xs.push_back(Crossing{{e, m, m, eb}});
    else
        xs.push_back(Crossing{{m, m, eb, e}});
    return detail::with_extra_crossing(d, std::move(xs), eps);
}

namespace detail {

inline Diagram grow_random(Diagram d, int target_n, std::mt19937_64& rng) {
    auto pick = [&](int m) { return static_cast<int>(rng() % static_cast<unsigned>(m)); };
    while (d.n() < target_n) {
        bool grown = false;
        for (int attempt = 0; attempt < 8 && !grown; ++attempt) {
            int e1 = pick(d.edge_count());
            int e2 = pick(d.edge_count());
            if (auto next = insert_crossing(d, e1, e2, rng)) {
                d = std::move(*next);
                grown = true;
            }
        }
        if (!grown) d = insert_curl(d, pick(d.edge_count()), rng);
    }
    for (int i = 0; i < d.n(); ++i)
        if (rng() % 2 == 0) d = switch_crossing(d, i);
    return d;
}

} // namespace detail

inline Diagram random_link(unsigned long long seed, int target_n) {
    std::mt19937_64 rng(seed);
    if (target_n < 1) target_n = 1;
    Diagram d = Diagram::link({Crossing{{0, 1, 1, 0}}});
    return detail::grow_random(std::move(d), target_n, rng);
}

inline Diagram random_tangle(unsigned long long seed, int target_n) {
    std::mt19937_64 rng(seed);
    static const BasisTangle starts[4] = {BasisTangle::P, BasisTangle::Q, BasisTangle::R1,
                                          BasisTangle::R2};
    Diagram d = basis_diagram(starts[rng() % 4]);
    return detail::grow_random(std::move(d), target_n, rng);
}

} // namespace dubrovnik

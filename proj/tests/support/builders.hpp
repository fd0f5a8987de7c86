#pragma once

#include <cstdlib>
#include <random>
#include <vector>

#include "dubrovnik/diagram.hpp"
#include "dubrovnik/moves.hpp"
#include "dubrovnik/wiring.hpp"

namespace testsupport {

// Closure of a braid word on `strands` strands; word letters are +/-i for
// the generator crossing strands i-1 and i (1-based), positive = the strand
// entering from the left passes over.
inline dubrovnik::Diagram braid_closure(int strands, const std::vector<int>& word) {
    std::vector<int> first(static_cast<size_t>(strands)), cur(static_cast<size_t>(strands));
    for (int i = 0; i < strands; ++i) first[static_cast<size_t>(i)] = cur[static_cast<size_t>(i)] = i;
    int fresh = strands;
    std::vector<dubrovnik::Crossing> xs;
    for (int g : word) {
        int i = std::abs(g) - 1;
        int a = cur[static_cast<size_t>(i)], b = cur[static_cast<size_t>(i) + 1];
        int c = fresh++, d = fresh++;
        if (g > 0)
            xs.push_back(dubrovnik::Crossing{{b, a, c, d}});
        else
            xs.push_back(dubrovnik::Crossing{{a, c, d, b}});
        cur[static_cast<size_t>(i)] = c;
        cur[static_cast<size_t>(i) + 1] = d;
    }
    dubrovnik::detail::EdgeGlue glue(fresh);
    for (int i = 0; i < strands; ++i)
        glue.glue(cur[static_cast<size_t>(i)], first[static_cast<size_t>(i)]);
    for (auto& x : xs)
        for (int s = 0; s < 4; ++s) x.e[static_cast<size_t>(s)] = glue.find(x[s]);
    return dubrovnik::Diagram::link(std::move(xs), glue.circles);
}

// Uniform-ish random non-crossing matching of the 4k wiring endpoints: a
// random Dyck word over the boundary positions, pairing each closer with the
// open position on top of the stack.
inline dubrovnik::WiringDiagram random_wiring(unsigned long long seed, int k) {
    std::mt19937_64 rng(seed);
    int total = 4 * k;
    std::vector<int> mate(static_cast<size_t>(total), -1);
    std::vector<int> stack;
    for (int p = 0; p < total; ++p) {
        int remaining = total - p;
        bool must_close = static_cast<int>(stack.size()) == remaining;
        bool can_close = !stack.empty();
        if (must_close || (can_close && rng() % 2 == 0)) {
            mate[static_cast<size_t>(p)] = stack.back();
            mate[static_cast<size_t>(stack.back())] = p;
            stack.pop_back();
        } else {
            stack.push_back(p);
        }
    }
    auto end_at = [&](int pos) {
        dubrovnik::WiringEnd e;
        if (pos < 2 * k) {
            e.slot = pos / 2;
            e.corner = pos % 2 == 0 ? dubrovnik::Corner::NW : dubrovnik::Corner::NE;
        } else {
            int q = pos - 2 * k;
            e.slot = k - 1 - q / 2;
            e.corner = q % 2 == 0 ? dubrovnik::Corner::SE : dubrovnik::Corner::SW;
        }
        return e;
    };
    dubrovnik::WiringDiagram w;
    w.k = k;
    for (int p = 0; p < total; ++p)
        if (mate[static_cast<size_t>(p)] > p)
            w.joins.emplace_back(end_at(p), end_at(mate[static_cast<size_t>(p)]));
    w.closed_wires = static_cast<int>(rng() % 3);
    return w;
}

} // namespace testsupport

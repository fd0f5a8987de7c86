#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "dubrovnik/diagram.hpp"

namespace dubrovnik {

namespace detail {

// Canonical encoding of one connected piece of a diagram, starting from a
// fixed entry.  Crossings get discovery indices; each crossing's slot frame
// is rotated by 0 or 2 (the two storings of the same crossing) so that its
// first-arrival slot lands in {0,1}, which keeps the under/over split.
// Emitted symbols name the far attachment of each edge, so the piece can be
// reconstructed from the stream: the encoding separates non-isomorphic
// pieces and is invariant under relabeling.
struct PieceEncoder {
    const Diagram& d;
    std::vector<int> index;  // crossing -> discovery index or -1
    std::vector<int> offset; // crossing -> slot rotation (0 or 2)
    std::vector<int> order;  // discovery order
    std::vector<int> out;

    explicit PieceEncoder(const Diagram& dia)
        : d(dia), index(static_cast<size_t>(dia.n()), -1),
          offset(static_cast<size_t>(dia.n()), 0) {}

    void touch(int c, int arrive_slot) {
        if (index[static_cast<size_t>(c)] >= 0) return;
        index[static_cast<size_t>(c)] = static_cast<int>(order.size());
        offset[static_cast<size_t>(c)] = arrive_slot >= 2 ? 2 : 0;
        order.push_back(c);
    }

    int symbol(const Att& a) {
        if (a.at_corner()) return -1 - a.slot;
        touch(a.crossing, a.slot);
        int ns = (a.slot - offset[static_cast<size_t>(a.crossing)] + 4) % 4;
        return 4 * index[static_cast<size_t>(a.crossing)] + ns;
    }

    void run() {
        for (size_t next = 0; next < order.size(); ++next) {
            int c = order[next];
            for (int i = 0; i < 4; ++i) {
                int slot = (offset[static_cast<size_t>(c)] + i) % 4;
                int e = d.crossing(c)[slot];
                out.push_back(symbol(d.other_end(e, Att{c, slot})));
            }
        }
    }
};

inline std::vector<int> encode_tangle_piece(const Diagram& d) {
    PieceEncoder enc(d);
    for (int k = 0; k < 4; ++k) {
        int e = d.endpoint(static_cast<Corner>(k));
        enc.out.push_back(enc.symbol(d.other_end(e, Att{-1, k})));
    }
    enc.run();
    return enc.out;
}

inline std::vector<int> encode_closed_piece(const Diagram& d,
                                            const std::vector<int>& piece) {
    std::vector<int> best;
    for (int c : piece)
        for (int start_off : {0, 2}) {
            PieceEncoder enc(d);
            enc.touch(c, start_off);
            enc.run();
            if (best.empty() || enc.out < best) best = std::move(enc.out);
        }
    return best;
}

} // namespace detail

// Relabeling-invariant key: equal for diagrams that differ only by edge
// labels, crossing order, slot-frame rotation by 2, or the arrangement of
// disjoint pieces.  Distinct connectivity or over/under structure yields
// distinct keys.
inline std::string canonical_key(const Diagram& d) {
    // Pieces: crossings connected through shared edges; for a tangle the
    // corner-reachable crossings form the anchored piece.
    std::vector<int> piece_id(static_cast<size_t>(d.n()), -1);
    std::vector<std::vector<int>> adj(static_cast<size_t>(d.n()));
    for (int e = 0; e < d.edge_count(); ++e) {
        const auto& ends = d.edge_ends(e);
        if (!ends[0].at_corner() && !ends[1].at_corner()) {
            adj[static_cast<size_t>(ends[0].crossing)].push_back(ends[1].crossing);
            adj[static_cast<size_t>(ends[1].crossing)].push_back(ends[0].crossing);
        }
    }
    auto flood = [&](int start, int id) {
        std::vector<int> stack{start};
        piece_id[static_cast<size_t>(start)] = id;
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            for (int nb : adj[static_cast<size_t>(c)])
                if (piece_id[static_cast<size_t>(nb)] < 0) {
                    piece_id[static_cast<size_t>(nb)] = id;
                    stack.push_back(nb);
                }
        }
    };
    if (d.is_tangle())
        for (int k = 0; k < 4; ++k) {
            Att a = d.other_end(d.endpoint(static_cast<Corner>(k)), Att{-1, k});
            if (!a.at_corner() && piece_id[static_cast<size_t>(a.crossing)] < 0)
                flood(a.crossing, 0);
        }
    int next_id = 1;
    for (int c = 0; c < d.n(); ++c)
        if (piece_id[static_cast<size_t>(c)] < 0) flood(c, next_id++);

    std::vector<std::vector<int>> closed_codes;
    for (int id = 1; id < next_id; ++id) {
        std::vector<int> piece;
        for (int c = 0; c < d.n(); ++c)
            if (piece_id[static_cast<size_t>(c)] == id) piece.push_back(c);
        closed_codes.push_back(detail::encode_closed_piece(d, piece));
    }
    std::sort(closed_codes.begin(), closed_codes.end());

    std::string key;
    auto put = [&key](int v) {
        key += std::to_string(v);
        key += ',';
    };
    put(d.is_tangle() ? 1 : 0);
    put(d.free_circles());
    if (d.is_tangle()) {
        key += "t:";
        for (int v : detail::encode_tangle_piece(d)) put(v);
    }
    for (const auto& code : closed_codes) {
        key += "c:";
        for (int v : code) put(v);
    }
    return key;
}

} // namespace dubrovnik

#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "dubrovnik/diagram.hpp"

namespace dubrovnik {

// One pass of a strand through a crossing.
struct Passage {
    int crossing;
    int arrive_slot;
    bool over() const { return Diagram::over_passage(arrive_slot); }
};

// A strand: open (corner to corner) or closed, with its passages in
// traversal order.
struct Strand {
    bool closed = false;
    int start_corner = -1, end_corner = -1;
    std::vector<Passage> passages;
};

// All strands of a diagram, each passage visited exactly once.  Open strands
// are walked from corners in NW, NE, SW, SE order; remaining closed strands
// start at their smallest (crossing, slot-parity) passage.
inline std::vector<Strand> extract_strands(const Diagram& d) {
    std::vector<Strand> out;
    // visited[c][0] = under passage of crossing c seen, [1] = over passage.
    std::vector<std::array<char, 2>> visited(static_cast<size_t>(d.n()), {0, 0});
    auto mark = [&](int c, int slot) { visited[static_cast<size_t>(c)][static_cast<size_t>(slot % 2)] = 1; };
    auto seen = [&](int c, int parity) { return visited[static_cast<size_t>(c)][static_cast<size_t>(parity)] != 0; };

    auto walk = [&](Strand& s, int edge, Att from, std::optional<Att> stop) {
        for (;;) {
            Att a = d.other_end(edge, from);
            if (stop && a == *stop) return;
            if (a.at_corner()) {
                s.end_corner = a.slot;
                return;
            }
            s.passages.push_back({a.crossing, a.slot});
            mark(a.crossing, a.slot);
            int out_slot = Diagram::exit_slot(a.slot);
            from = Att{a.crossing, out_slot};
            edge = d.crossing(a.crossing)[out_slot];
        }
    };

    if (d.is_tangle()) {
        std::array<char, 4> corner_done{0, 0, 0, 0};
        for (int k = 0; k < 4; ++k) {
            if (corner_done[static_cast<size_t>(k)]) continue;
            Strand s;
            s.start_corner = k;
            walk(s, d.endpoint(static_cast<Corner>(k)), Att{-1, k}, std::nullopt);
            corner_done[static_cast<size_t>(k)] = 1;
            corner_done[static_cast<size_t>(s.end_corner)] = 1;
            out.push_back(std::move(s));
        }
    }
    for (int c = 0; c < d.n(); ++c)
        for (int parity = 0; parity < 2; ++parity) {
            if (seen(c, parity)) continue;
            Strand s;
            s.closed = true;
            int slot = parity; // arrive via slot 0 (under) or 1 (over)
            s.passages.push_back({c, slot});
            mark(c, slot);
            int out_slot = Diagram::exit_slot(slot);
            walk(s, d.crossing(c)[out_slot], Att{c, out_slot}, Att{c, slot});
            out.push_back(std::move(s));
        }
    return out;
}

enum class Properness { proper, improper_a, improper_b, improper_c, improper_d };

// One end of a bridge: the tangle corner it leaves through, or the crossing
// where the strand dives under.
struct BridgeEnd {
    bool at_corner = false;
    int corner = -1;
    int crossing = -1;
};

struct Bridge {
    std::vector<int> seq; // crossings overpassed, in order
    bool full_circle = false;
    BridgeEnd start, finish;
    Properness prop = Properness::proper;
    int length() const { return static_cast<int>(seq.size()); }
    bool contains(int c) const {
        return std::find(seq.begin(), seq.end(), c) != seq.end();
    }
    // Interior (undercrossing) ends, deduplicated; empty for circles and
    // corner-to-corner arcs.
    std::vector<int> interior_end_crossings() const {
        std::vector<int> v;
        if (!full_circle) {
            if (!start.at_corner) v.push_back(start.crossing);
            if (!finish.at_corner && finish.crossing != start.crossing)
                v.push_back(finish.crossing);
            std::sort(v.begin(), v.end());
        }
        return v;
    }
};

inline Properness classify_bridge(const Bridge& b) {
    if (b.full_circle && b.length() > 0) return Properness::improper_a;
    bool s_in = !b.start.at_corner && b.contains(b.start.crossing);
    bool f_in = !b.finish.at_corner && b.contains(b.finish.crossing);
    if (s_in || f_in) return Properness::improper_b;
    if (!b.start.at_corner && !b.finish.at_corner &&
        b.start.crossing == b.finish.crossing && b.length() > 1)
        return Properness::improper_c;
    if (b.start.at_corner && b.finish.at_corner && b.length() > 1)
        return Properness::improper_d;
    return Properness::proper;
}

// Orient each bridge so its sequence is lexicographically least, then sort
// all bridges by (length descending, sequence ascending).  This makes the
// longest-bridge choice and its tie-break deterministic.
inline std::vector<Bridge> find_bridges(const Diagram& d) {
    std::vector<Bridge> out;
    auto commit = [&](Bridge b) {
        if (b.seq.empty()) return;
        std::vector<int> rev(b.seq.rbegin(), b.seq.rend());
        if (rev < b.seq) {
            b.seq = std::move(rev);
            std::swap(b.start, b.finish);
        }
        b.prop = classify_bridge(b);
        out.push_back(std::move(b));
    };

    for (const Strand& s : extract_strands(d)) {
        const auto& ps = s.passages;
        const int m = static_cast<int>(ps.size());
        if (s.closed) {
            int first_under = -1;
            for (int i = 0; i < m; ++i)
                if (!ps[static_cast<size_t>(i)].over()) {
                    first_under = i;
                    break;
                }
            if (first_under < 0) {
                Bridge b;
                b.full_circle = true;
                for (const auto& p : ps) b.seq.push_back(p.crossing);
                commit(std::move(b));
                continue;
            }
            // Runs between consecutive underpasses, cyclically.
            int i = first_under;
            do {
                int j = (i + 1) % m;
                Bridge b;
                b.start = {false, -1, ps[static_cast<size_t>(i)].crossing};
                while (ps[static_cast<size_t>(j)].over()) {
                    b.seq.push_back(ps[static_cast<size_t>(j)].crossing);
                    j = (j + 1) % m;
                }
                b.finish = {false, -1, ps[static_cast<size_t>(j)].crossing};
                commit(std::move(b));
                i = j;
            } while (i != first_under);
        } else {
            int i = 0;
            BridgeEnd prev{true, s.start_corner, -1};
            while (i < m) {
                if (!ps[static_cast<size_t>(i)].over()) {
                    prev = {false, -1, ps[static_cast<size_t>(i)].crossing};
                    ++i;
                    continue;
                }
                Bridge b;
                b.start = prev;
                while (i < m && ps[static_cast<size_t>(i)].over()) {
                    b.seq.push_back(ps[static_cast<size_t>(i)].crossing);
                    ++i;
                }
                if (i < m)
                    b.finish = {false, -1, ps[static_cast<size_t>(i)].crossing};
                else
                    b.finish = {true, s.end_corner, -1};
                commit(std::move(b));
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Bridge& a, const Bridge& b) {
        if (a.length() != b.length()) return a.length() > b.length();
        return a.seq < b.seq;
    });
    return out;
}

inline std::pair<std::optional<Bridge>, int> longest_bridge(const Diagram& d) {
    auto bs = find_bridges(d);
    if (bs.empty()) return {std::nullopt, 0};
    return {bs.front(), bs.front().length()};
}

// Degree bound N - B from the longest bridge (0 when crossingless).
inline int bridge_degree_bound(const Diagram& d) {
    return d.n() - longest_bridge(d).second;
}

} // namespace dubrovnik

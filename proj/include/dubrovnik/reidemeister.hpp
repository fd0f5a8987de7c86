#pragma once

#include <optional>
#include <random>
#include <vector>

#include "dubrovnik/diagram.hpp"
#include "dubrovnik/moves.hpp"

namespace dubrovnik {

// Face machinery and the two crossing-preserving Reidemeister moves, for
// closed diagrams.  Faces are orbits of dart -> rotate(other_end(dart)).
struct FaceDart {
    int crossing = 0;
    int slot = 0;
};

inline std::vector<std::vector<FaceDart>> enumerate_faces(const Diagram& d) {
    if (d.is_tangle()) fail(ErrorKind::NotALink, "face moves operate on closed diagrams");
    std::vector<std::vector<FaceDart>> faces;
    std::vector<char> seen(static_cast<size_t>(4 * d.n()), 0);
    for (int c = 0; c < d.n(); ++c)
        for (int s = 0; s < 4; ++s) {
            if (seen[static_cast<size_t>(4 * c + s)]) continue;
            std::vector<FaceDart> face;
            int cc = c, cs = s;
            while (!seen[static_cast<size_t>(4 * cc + cs)]) {
                seen[static_cast<size_t>(4 * cc + cs)] = 1;
                face.push_back({cc, cs});
                Att other = d.other_end(d.crossing(cc)[cs], Att{cc, cs});
                cc = other.crossing;
                cs = (other.slot + 1) % 4;
            }
            faces.push_back(std::move(face));
        }
    return faces;
}

// Push the edge under dart a across the edge under dart b (both on one
// face); `first_over` picks which strand ends up on top.  Adds 2 crossings.
inline Diagram r2_insert(const Diagram& d, FaceDart a, FaceDart b, bool first_over) {
    int e1 = d.crossing(a.crossing)[a.slot];
    int e2 = d.crossing(b.crossing)[b.slot];
    if (e1 == e2) fail(ErrorKind::InvalidSpec, "cannot push an edge across itself");
    Att a2 = d.other_end(e1, Att{a.crossing, a.slot});
    Att b2 = d.other_end(e2, Att{b.crossing, b.slot});
    int e1b = d.edge_count(), e2b = d.edge_count() + 1;
    int m1 = d.edge_count() + 2, m2 = d.edge_count() + 3;
    std::vector<Crossing> xs(d.crossings());
    auto set_att = [&](const Att& at, int edge) {
        xs[static_cast<size_t>(at.crossing)].e[static_cast<size_t>(at.slot)] = edge;
    };
    set_att(a2, e1b);
    set_att(b2, e2b);
    // Face traversal runs e1 from dart a onward and e2 from dart b onward;
    // the bump crosses e2 near its far end first.
    if (first_over) {
        xs.push_back(Crossing{{m2, e1, e2b, m1}});
        xs.push_back(Crossing{{e2, e1b, m2, m1}});
    } else {
        xs.push_back(Crossing{{e1, e2b, m1, m2}});
        xs.push_back(Crossing{{e1b, m2, m1, e2}});
    }
    return Diagram::link(std::move(xs), d.free_circles());
}

struct Bigon {
    int x = 0, y = 0;   // the two crossings
    int sx = 0, sy = 0; // face-orbit slots at x and y
};

// A bigon face is removable when one strand passes over at both crossings.
inline std::optional<Bigon> find_removable_bigon(const Diagram& d,
                                                 const std::vector<FaceDart>& face) {
    if (face.size() != 2 || face[0].crossing == face[1].crossing) return std::nullopt;
    Bigon b{face[0].crossing, face[1].crossing, face[0].slot, face[1].slot};
    if ((b.sx + b.sy) % 2 == 0) return std::nullopt; // a clasp, not a bigon
    return b;
}

inline Diagram r2_remove(const Diagram& d, const Bigon& b) {
    detail::EdgeGlue glue(d.edge_count());
    const Crossing& cx = d.crossing(b.x);
    const Crossing& cy = d.crossing(b.y);
    // The strand through slot sx at x reappears at slot sy-1 at y; its outer
    // edges sit opposite the bigon corner, likewise for the other strand.
    glue.glue(cx[(b.sx + 2) % 4], cy[(b.sy + 1) % 4]);
    glue.glue(cx[(b.sx + 1) % 4], cy[(b.sy + 2) % 4]);
    std::vector<char> drop(static_cast<size_t>(d.n()), 0);
    drop[static_cast<size_t>(b.x)] = 1;
    drop[static_cast<size_t>(b.y)] = 1;
    return detail::rebuild(d, drop, glue);
}

struct Triangle {
    std::array<int, 3> crossing{};
    std::array<int, 3> slot{}; // orbit slot s: out-edge at s, in-edge at s-1
};

// A triangular face admits the slide move unless the three strands cross
// each other cyclically; mixed orbit-slot parities mean a top or bottom
// strand exists.
inline std::optional<Triangle> find_slidable_triangle(const Diagram& d,
                                                      const std::vector<FaceDart>& face) {
    if (face.size() != 3) return std::nullopt;
    Triangle t;
    for (int i = 0; i < 3; ++i) {
        t.crossing[static_cast<size_t>(i)] = face[static_cast<size_t>(i)].crossing;
        t.slot[static_cast<size_t>(i)] = face[static_cast<size_t>(i)].slot;
    }
    if (t.crossing[0] == t.crossing[1] || t.crossing[1] == t.crossing[2] ||
        t.crossing[0] == t.crossing[2])
        return std::nullopt;
    int e01 = d.crossing(t.crossing[0])[t.slot[0]];
    int e12 = d.crossing(t.crossing[1])[t.slot[1]];
    int e20 = d.crossing(t.crossing[2])[t.slot[2]];
    if (e01 == e12 || e12 == e20 || e01 == e20) return std::nullopt;
    bool all_even = t.slot[0] % 2 == 0 && t.slot[1] % 2 == 0 && t.slot[2] % 2 == 0;
    bool all_odd = t.slot[0] % 2 == 1 && t.slot[1] % 2 == 1 && t.slot[2] % 2 == 1;
    if (all_even || all_odd) return std::nullopt; // cyclic over-pattern
    return t;
}

// Flip the triangle to the other side of its three crossings.  Per crossing
// with orbit slot s: the in-edge moves from s-1 to s+1, the out-edge from s
// to s+2, and the freed slots take the neighbors' outer strand edges.
inline Diagram r3_slide(const Diagram& d, const Triangle& t) {
    std::vector<Crossing> xs(d.crossings());
    for (int i = 0; i < 3; ++i) {
        int cur = t.crossing[static_cast<size_t>(i)];
        int s = t.slot[static_cast<size_t>(i)];
        int prev = t.crossing[static_cast<size_t>((i + 2) % 3)];
        int sp = t.slot[static_cast<size_t>((i + 2) % 3)];
        int next = t.crossing[static_cast<size_t>((i + 1) % 3)];
        int sn = t.slot[static_cast<size_t>((i + 1) % 3)];
        const Crossing& oc = d.crossing(cur);
        Crossing& nc = xs[static_cast<size_t>(cur)];
        nc.e[static_cast<size_t>(s)] = d.crossing(next)[(sn + 1) % 4];
        nc.e[static_cast<size_t>((s + 1) % 4)] = oc[(s + 3) % 4];
        nc.e[static_cast<size_t>((s + 2) % 4)] = oc[s];
        nc.e[static_cast<size_t>((s + 3) % 4)] = d.crossing(prev)[(sp + 2) % 4];
    }
    return Diagram::link(std::move(xs), d.free_circles());
}

// Apply `count` random R2/R3 moves.  Insertions are throttled once the
// diagram outgrows its start size so runs stay small.
inline Diagram random_moves(const Diagram& d, int count, std::mt19937_64& rng) {
    Diagram cur = d;
    int start_n = d.n();
    int applied = 0;
    int stuck = 0;
    auto pick = [&](int m) { return static_cast<int>(rng() % static_cast<unsigned>(m)); };
    while (applied < count && stuck < 200) {
        auto faces = enumerate_faces(cur);
        if (faces.empty()) break; // crossingless: no move applies
        int kind = pick(3); // 0: r2 insert, 1: r2 remove, 2: r3
        bool did = false;
        if (kind == 0 && cur.n() <= start_n + 6) {
            const auto& f = faces[static_cast<size_t>(pick(static_cast<int>(faces.size())))];
            if (f.size() >= 2) {
                int i = pick(static_cast<int>(f.size()));
                int j = pick(static_cast<int>(f.size()));
                const FaceDart &da = f[static_cast<size_t>(i)], &db = f[static_cast<size_t>(j)];
                if (cur.crossing(da.crossing)[da.slot] != cur.crossing(db.crossing)[db.slot]) {
                    cur = r2_insert(cur, da, db, pick(2) == 0);
                    did = true;
                }
            }
        } else if (kind == 1) {
            std::vector<Bigon> options;
            for (const auto& f : faces)
                if (auto b = find_removable_bigon(cur, f)) options.push_back(*b);
            if (!options.empty()) {
                cur = r2_remove(cur, options[static_cast<size_t>(pick(static_cast<int>(options.size())))]);
                did = true;
            }
        } else if (kind == 2) {
            std::vector<Triangle> options;
            for (const auto& f : faces)
                if (auto t = find_slidable_triangle(cur, f)) options.push_back(*t);
            if (!options.empty()) {
                cur = r3_slide(cur, options[static_cast<size_t>(pick(static_cast<int>(options.size())))]);
                did = true;
            }
        }
        if (did) {
            ++applied;
            stuck = 0;
        } else {
            ++stuck;
        }
    }
    return cur;
}

} // namespace dubrovnik

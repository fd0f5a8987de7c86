#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dubrovnik/errors.hpp"

namespace dubrovnik {

// Rectangle corners of a tangle.  Storage order NW, NE, SW, SE; the
// geometric boundary order (counterclockwise) is NW, SW, SE, NE.
enum class Corner : int { NW = 0, NE = 1, SW = 2, SE = 3 };

inline const char* corner_name(int c) {
    static constexpr const char* names[4] = {"NW", "NE", "SW", "SE"};
    return names[c];
}

inline std::optional<int> corner_from_name(const std::string& s) {
    for (int i = 0; i < 4; ++i)
        if (s == corner_name(i)) return i;
    return std::nullopt;
}

// One crossing: edge ids at slots 0..3 in counterclockwise order around the
// crossing.  The strand through slots (0,2) passes UNDER the strand through
// slots (1,3).
struct Crossing {
    std::array<int, 4> e;
    int& operator[](int s) { return e[static_cast<size_t>(s)]; }
    int operator[](int s) const { return e[static_cast<size_t>(s)]; }
};

// Where one end of an edge lives: a crossing slot, or a tangle corner
// (crossing == -1, slot == corner code).
struct Att {
    int crossing = -1;
    int slot = 0;
    bool at_corner() const { return crossing < 0; }
    bool operator==(const Att&) const = default;
};

class Diagram {
  public:
    Diagram() = default;

    static Diagram link(std::vector<Crossing> crossings, int circles = 0) {
        Diagram d;
        d.crossings_ = std::move(crossings);
        d.free_circles_ = circles;
        d.finish();
        return d;
    }

    static Diagram tangle(std::vector<Crossing> crossings,
                          std::array<int, 4> corner_edges, int circles = 0) {
        Diagram d;
        d.crossings_ = std::move(crossings);
        d.endpoints_ = corner_edges;
        d.free_circles_ = circles;
        d.finish();
        return d;
    }

    bool is_tangle() const { return endpoints_.has_value(); }
    int n() const { return static_cast<int>(crossings_.size()); }
    int free_circles() const { return free_circles_; }
    int edge_count() const { return edge_count_; }
    const std::vector<Crossing>& crossings() const { return crossings_; }
    const Crossing& crossing(int i) const { return crossings_[static_cast<size_t>(i)]; }
    const std::array<int, 4>& endpoints() const {
        if (!endpoints_) fail(ErrorKind::NotATangle, "diagram has no endpoints");
        return *endpoints_;
    }
    int endpoint(Corner c) const { return endpoints()[static_cast<size_t>(c)]; }

    // The two ends of an edge, in a fixed discovery order.
    const std::array<Att, 2>& edge_ends(int e) const { return ends_[static_cast<size_t>(e)]; }

    Att other_end(int e, const Att& from) const {
        const auto& p = ends_[static_cast<size_t>(e)];
        if (p[0] == from) return p[1];
        if (p[1] == from) return p[0];
        fail(ErrorKind::Internal, "attachment not on edge");
    }

    // Strand step: enter a crossing via `arrive`, leave through the opposite
    // slot.  Arrival at slots 0/2 is an underpass, 1/3 an overpass.
    static int exit_slot(int arrive_slot) { return (arrive_slot + 2) % 4; }
    static bool over_passage(int arrive_slot) { return arrive_slot % 2 == 1; }

    // Strand components by union of edges through opposite crossing slots.
    // Returns the number of components, counting free circles; fills
    // edge_component with a dense id per edge (free circles get ids at the
    // end with no member edges).
    int strand_components(std::vector<int>* edge_component = nullptr) const {
        std::vector<int> parent(static_cast<size_t>(edge_count_));
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[static_cast<size_t>(x)] != x) {
                parent[static_cast<size_t>(x)] =
                    parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
                x = parent[static_cast<size_t>(x)];
            }
            return x;
        };
        for (const auto& c : crossings_) {
            parent[static_cast<size_t>(find(c[0]))] = find(c[2]);
            parent[static_cast<size_t>(find(c[1]))] = find(c[3]);
        }
        std::map<int, int> ids;
        for (int e = 0; e < edge_count_; ++e) ids.try_emplace(find(e), static_cast<int>(ids.size()));
        if (edge_component) {
            edge_component->assign(static_cast<size_t>(edge_count_), -1);
            for (int e = 0; e < edge_count_; ++e)
                (*edge_component)[static_cast<size_t>(e)] = ids[find(e)];
        }
        return static_cast<int>(ids.size()) + free_circles_;
    }

    // --- PD text ---

    static Diagram parse_pd(const std::string& text) {
        std::vector<std::array<int, 4>> xs;
        std::vector<std::pair<int, int>> eps; // (label, corner)
        int circles = 0;
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            std::string tag;
            if (!(ls >> tag)) continue;
            auto want_label = [&](const char* what) {
                long v;
                if (!(ls >> v) || v <= 0 || v > 1000000)
                    fail(ErrorKind::MalformedLine,
                         "line " + std::to_string(lineno) + ": bad " + what);
                return static_cast<int>(v);
            };
            if (tag == "X") {
                std::array<int, 4> e{};
                for (int i = 0; i < 4; ++i) e[static_cast<size_t>(i)] = want_label("edge label");
                xs.push_back(e);
            } else if (tag == "E") {
                int label = want_label("edge label");
                std::string pos;
                if (!(ls >> pos))
                    fail(ErrorKind::MalformedLine,
                         "line " + std::to_string(lineno) + ": missing corner");
                auto c = corner_from_name(pos);
                if (!c)
                    fail(ErrorKind::MalformedLine,
                         "line " + std::to_string(lineno) + ": bad corner '" + pos + "'");
                eps.emplace_back(label, *c);
            } else if (tag == "O") {
                long v;
                if (!(ls >> v) || v < 0 || v > 1000000)
                    fail(ErrorKind::MalformedLine,
                         "line " + std::to_string(lineno) + ": bad circle count");
                circles += static_cast<int>(v);
            } else {
                fail(ErrorKind::MalformedLine,
                     "line " + std::to_string(lineno) + ": unknown record '" + tag + "'");
            }
            std::string extra;
            if (ls >> extra)
                fail(ErrorKind::MalformedLine,
                     "line " + std::to_string(lineno) + ": trailing '" + extra + "'");
        }

        Diagram d;
        for (const auto& e : xs) d.crossings_.push_back(Crossing{e});
        d.free_circles_ = circles;
        if (!eps.empty()) {
            if (eps.size() != 4)
                fail(ErrorKind::BadEndpointSet,
                     "expected 4 endpoints, got " + std::to_string(eps.size()));
            std::array<int, 4> corner_edges{-1, -1, -1, -1};
            for (const auto& [label, corner] : eps) {
                if (corner_edges[static_cast<size_t>(corner)] != -1)
                    fail(ErrorKind::BadEndpointSet,
                         std::string("corner ") + corner_name(corner) + " given twice");
                corner_edges[static_cast<size_t>(corner)] = label;
            }
            d.endpoints_ = corner_edges;
        }
        d.finish();
        return d;
    }

    std::string to_pd_text() const {
        std::ostringstream out;
        for (const auto& c : crossings_)
            out << "X " << c[0] + 1 << ' ' << c[1] + 1 << ' ' << c[2] + 1 << ' '
                << c[3] + 1 << '\n';
        if (endpoints_)
            for (int k = 0; k < 4; ++k)
                out << "E " << (*endpoints_)[static_cast<size_t>(k)] + 1 << ' '
                    << corner_name(k) << '\n';
        if (free_circles_ > 0) out << "O " << free_circles_ << '\n';
        return out.str();
    }

  private:
    // Relabels edges densely, builds the attachment table, and validates
    // every structural invariant.  Called by every construction path.
    void finish() {
        std::map<int, int> dense;
        auto relabel = [&](int& label) {
            auto [it, inserted] = dense.try_emplace(label, static_cast<int>(dense.size()));
            label = it->second;
        };
        for (auto& c : crossings_)
            for (int s = 0; s < 4; ++s) relabel(c[s]);
        if (endpoints_)
            for (auto& label : *endpoints_) relabel(label);
        edge_count_ = static_cast<int>(dense.size());

        std::vector<std::vector<Att>> uses(static_cast<size_t>(edge_count_));
        for (int i = 0; i < n(); ++i)
            for (int s = 0; s < 4; ++s)
                uses[static_cast<size_t>(crossings_[static_cast<size_t>(i)][s])].push_back(
                    Att{i, s});
        if (endpoints_)
            for (int k = 0; k < 4; ++k)
                uses[static_cast<size_t>((*endpoints_)[static_cast<size_t>(k)])].push_back(
                    Att{-1, k});
        ends_.clear();
        ends_.reserve(uses.size());
        for (int e = 0; e < edge_count_; ++e) {
            if (uses[static_cast<size_t>(e)].size() != 2)
                fail(ErrorKind::DuplicateEdgeUse,
                     "edge " + std::to_string(e + 1) + " used " +
                         std::to_string(uses[static_cast<size_t>(e)].size()) +
                         " times, want 2");
            ends_.push_back({uses[static_cast<size_t>(e)][0], uses[static_cast<size_t>(e)][1]});
        }
        if (free_circles_ < 0) fail(ErrorKind::Internal, "negative circle count");
        check_planar();
        if (endpoints_) check_arcs();
    }

    // Genus check: faces of the rotation system (tangles get the rectangle
    // rim: 4 corner vertices of degree 3 joined by 4 rim edges).  Every
    // connected component must have Euler characteristic 2.
    void check_planar() const {
        const bool tang = endpoints_.has_value();
        const int ncross = n();
        const int nvert = ncross + (tang ? 4 : 0);
        if (nvert == 0) return;

        // Darts: 4 per crossing (id 4c+s), then 3 per corner in rotation
        // order.  Corner rotations (rim-edge, rim-edge-or-strand, ...):
        //   NW: top, left, strand    NE: top, strand, right
        //   SE: right, strand, bottom    SW: bottom, strand, left
        const int base = 4 * ncross;
        auto corner_dart = [&](int corner, int j) { return base + 3 * corner + j; };
        const int ndarts = base + (tang ? 12 : 0);

        std::vector<int> sigma(static_cast<size_t>(ndarts), -1),
            alpha(static_cast<size_t>(ndarts), -1);
        for (int c = 0; c < ncross; ++c)
            for (int s = 0; s < 4; ++s) sigma[static_cast<size_t>(4 * c + s)] = 4 * c + (s + 1) % 4;
        if (tang)
            for (int k = 0; k < 4; ++k)
                for (int j = 0; j < 3; ++j)
                    sigma[static_cast<size_t>(corner_dart(k, j))] = corner_dart(k, (j + 1) % 3);

        // Strand-edge darts.  Corner k's strand dart sits at rotation
        // position: NW->2, NE->1, SE->1, SW->1 per the table above.
        auto att_dart = [&](const Att& a) {
            if (!a.at_corner()) return 4 * a.crossing + a.slot;
            static constexpr int strand_pos[4] = {2, 1, 1, 1}; // NW, NE, SW, SE
            return corner_dart(a.slot, strand_pos[a.slot]);
        };
        for (int e = 0; e < edge_count_; ++e) {
            int d0 = att_dart(ends_[static_cast<size_t>(e)][0]);
            int d1 = att_dart(ends_[static_cast<size_t>(e)][1]);
            alpha[static_cast<size_t>(d0)] = d1;
            alpha[static_cast<size_t>(d1)] = d0;
        }
        if (tang) {
            // Rim darts: NW=(top,left,strand) NE=(top,strand,right)
            //            SW=(bottom,strand,left) SE=(right,strand,bottom)
            auto rim = [&](int ka, int ja, int kb, int jb) {
                int da = corner_dart(ka, ja), db = corner_dart(kb, jb);
                alpha[static_cast<size_t>(da)] = db;
                alpha[static_cast<size_t>(db)] = da;
            };
            constexpr int NW = 0, NE = 1, SW = 2, SE = 3;
            rim(NW, 0, NE, 0); // top
            rim(NE, 2, SE, 0); // right
            rim(SE, 2, SW, 0); // bottom
            rim(SW, 2, NW, 1); // left
        }
        for (int d = 0; d < ndarts; ++d)
            if (alpha[static_cast<size_t>(d)] < 0)
                fail(ErrorKind::Internal, "unpaired dart in planarity check");

        // Vertex of each dart, and connected components over shared edges.
        std::vector<int> vert(static_cast<size_t>(ndarts));
        for (int c = 0; c < ncross; ++c)
            for (int s = 0; s < 4; ++s) vert[static_cast<size_t>(4 * c + s)] = c;
        if (tang)
            for (int k = 0; k < 4; ++k)
                for (int j = 0; j < 3; ++j)
                    vert[static_cast<size_t>(corner_dart(k, j))] = ncross + k;

        std::vector<int> vparent(static_cast<size_t>(nvert));
        std::iota(vparent.begin(), vparent.end(), 0);
        auto vfind = [&](int x) {
            while (vparent[static_cast<size_t>(x)] != x) {
                vparent[static_cast<size_t>(x)] =
                    vparent[static_cast<size_t>(vparent[static_cast<size_t>(x)])];
                x = vparent[static_cast<size_t>(x)];
            }
            return x;
        };
        for (int d = 0; d < ndarts; ++d) {
            int a = vfind(vert[static_cast<size_t>(d)]);
            int b = vfind(vert[static_cast<size_t>(alpha[static_cast<size_t>(d)])]);
            if (a != b) vparent[static_cast<size_t>(a)] = b;
        }

        // Count vertices, edges, faces per component; require V - E + F = 2.
        std::map<int, std::array<int, 3>> vef; // root -> {V, E2 (half-edges), F}
        for (int v = 0; v < nvert; ++v) vef[vfind(v)][0]++;
        for (int d = 0; d < ndarts; ++d) vef[vfind(vert[static_cast<size_t>(d)])][1]++;
        std::vector<char> seen(static_cast<size_t>(ndarts), 0);
        for (int d = 0; d < ndarts; ++d) {
            if (seen[static_cast<size_t>(d)]) continue;
            int walk = d;
            do {
                seen[static_cast<size_t>(walk)] = 1;
                walk = sigma[static_cast<size_t>(alpha[static_cast<size_t>(walk)])];
            } while (walk != d);
            vef[vfind(vert[static_cast<size_t>(d)])][2]++;
        }
        for (const auto& [root, counts] : vef) {
            int chi = counts[0] - counts[1] / 2 + counts[2];
            if (chi != 2)
                fail(ErrorKind::NonPlanar,
                     "diagram component has Euler characteristic " + std::to_string(chi));
        }
    }

    // A tangle's four endpoints must pair into exactly two open strands.
    void check_arcs() const {
        std::vector<int> comp;
        strand_components(&comp);
        std::map<int, int> corner_hits;
        for (int k = 0; k < 4; ++k)
            corner_hits[comp[static_cast<size_t>((*endpoints_)[static_cast<size_t>(k)])]]++;
        if (corner_hits.size() != 2)
            fail(ErrorKind::BadEndpointSet,
                 "endpoints form " + std::to_string(corner_hits.size()) +
                     " strands, want 2");
        for (const auto& [id, hits] : corner_hits)
            if (hits != 2)
                fail(ErrorKind::BadEndpointSet, "an open strand has " +
                                                    std::to_string(hits) +
                                                    " endpoints, want 2");
    }

    std::vector<Crossing> crossings_;
    std::optional<std::array<int, 4>> endpoints_;
    int free_circles_ = 0;
    int edge_count_ = 0;
    std::vector<std::array<Att, 2>> ends_;
};

// Arc pattern of a crossingless tangle: true when NW joins SW (and NE joins
// SE), i.e. the identity pattern; false when NW joins NE (the cap-cup).
inline bool identity_pattern(const Diagram& d) {
    if (d.n() != 0) fail(ErrorKind::Internal, "pattern query needs a crossingless tangle");
    std::vector<int> comp;
    d.strand_components(&comp);
    auto cc = [&](Corner k) { return comp[static_cast<size_t>(d.endpoint(k))]; };
    if (cc(Corner::NW) == cc(Corner::SW) && cc(Corner::NE) == cc(Corner::SE)) return true;
    if (cc(Corner::NW) == cc(Corner::NE) && cc(Corner::SW) == cc(Corner::SE)) return false;
    fail(ErrorKind::NonPlanar, "crossingless tangle joins opposite corners");
}

} // namespace dubrovnik

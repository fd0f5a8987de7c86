#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dubrovnik/diagram.hpp"
#include "dubrovnik/engine.hpp"

namespace dubrovnik {

// A planar template with k tangle slots in a row whose 4k corner endpoints
// are joined by non-crossing arcs.  Endpoints live on a disk boundary in the
// cyclic order: top side left to right (each slot NW then NE), then bottom
// side right to left (each slot SE then SW).
struct WiringEnd {
    int slot = 0; // 0-based
    Corner corner = Corner::NW;
};

struct WiringDiagram {
    int k = 0;
    std::vector<std::pair<WiringEnd, WiringEnd>> joins; // 2k of them
    int closed_wires = 0;
};

namespace detail {

inline int wiring_word_pos(int k, const WiringEnd& e) {
    switch (e.corner) {
        case Corner::NW: return 2 * e.slot;
        case Corner::NE: return 2 * e.slot + 1;
        case Corner::SE: return 2 * k + 2 * (k - 1 - e.slot);
        case Corner::SW: return 2 * k + 2 * (k - 1 - e.slot) + 1;
    }
    fail(ErrorKind::Internal, "bad corner");
}

} // namespace detail

inline void validate_wiring(const WiringDiagram& w) {
    if (w.k < 1) fail(ErrorKind::InvalidSpec, "wiring needs at least one slot");
    if (w.closed_wires < 0) fail(ErrorKind::InvalidSpec, "negative circle count");
    std::vector<int> mate(static_cast<size_t>(4 * w.k), -1);
    for (const auto& j : w.joins) {
        for (const WiringEnd* e : {&j.first, &j.second})
            if (e->slot < 0 || e->slot >= w.k)
                fail(ErrorKind::MalformedLine, "slot index out of range");
        int a = detail::wiring_word_pos(w.k, j.first);
        int b = detail::wiring_word_pos(w.k, j.second);
        if (a == b || mate[static_cast<size_t>(a)] >= 0 || mate[static_cast<size_t>(b)] >= 0)
            fail(ErrorKind::NotAMatching, "endpoint joined twice");
        mate[static_cast<size_t>(a)] = b;
        mate[static_cast<size_t>(b)] = a;
    }
    for (int p = 0; p < 4 * w.k; ++p)
        if (mate[static_cast<size_t>(p)] < 0)
            fail(ErrorKind::NotAMatching, "endpoint left unjoined");
    // Non-crossing check: chords over the cyclic word must nest, which the
    // usual stack test detects on any fixed linearization.
    std::vector<int> stack;
    for (int p = 0; p < 4 * w.k; ++p) {
        if (!stack.empty() && mate[static_cast<size_t>(p)] == stack.back())
            stack.pop_back();
        else if (mate[static_cast<size_t>(p)] < p)
            fail(ErrorKind::CrossingArcs, "arcs cannot be drawn without crossing");
        else
            stack.push_back(p);
    }
}

// Wiring file format: `SLOTS k`, then `JOIN s.P t.Q` lines with s,t in 1..k
// and P,Q corner names, then optional `O n` for crossingless circles.
inline WiringDiagram parse_wiring(const std::string& text) {
    WiringDiagram w;
    bool have_slots = false;
    std::istringstream in(text);
    std::string line;
    auto parse_end = [&](const std::string& tok) -> WiringEnd {
        auto dot = tok.find('.');
        if (dot == std::string::npos || dot == 0 || dot + 1 >= tok.size())
            fail(ErrorKind::MalformedLine, "expected slot.CORNER, got '" + tok + "'");
        WiringEnd e;
        try {
            size_t used = 0;
            e.slot = std::stoi(tok.substr(0, dot), &used) - 1;
            if (used != dot) fail(ErrorKind::MalformedLine, "bad slot number in '" + tok + "'");
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            fail(ErrorKind::MalformedLine, "bad slot number in '" + tok + "'");
        }
        auto c = corner_from_name(tok.substr(dot + 1));
        if (!c) fail(ErrorKind::MalformedLine, "bad corner name in '" + tok + "'");
        e.corner = static_cast<Corner>(*c);
        return e;
    };
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "SLOTS") {
            if (have_slots) fail(ErrorKind::MalformedLine, "duplicate SLOTS line");
            if (!(ls >> w.k) || w.k < 1) fail(ErrorKind::MalformedLine, "bad SLOTS count");
            have_slots = true;
        } else if (tag == "JOIN") {
            if (!have_slots) fail(ErrorKind::MalformedLine, "JOIN before SLOTS");
            std::string a, b;
            if (!(ls >> a >> b)) fail(ErrorKind::MalformedLine, "JOIN needs two endpoints");
            w.joins.emplace_back(parse_end(a), parse_end(b));
        } else if (tag == "O") {
            int n = 0;
            if (!(ls >> n) || n < 0) fail(ErrorKind::MalformedLine, "bad O count");
            w.closed_wires += n;
        } else {
            fail(ErrorKind::MalformedLine, "unknown record '" + tag + "'");
        }
        std::string extra;
        if (ls >> extra) fail(ErrorKind::MalformedLine, "trailing tokens after " + tag);
    }
    if (!have_slots) fail(ErrorKind::MalformedLine, "missing SLOTS line");
    validate_wiring(w);
    return w;
}

inline std::string wiring_to_text(const WiringDiagram& w) {
    std::ostringstream out;
    out << "SLOTS " << w.k << "\n";
    for (const auto& j : w.joins)
        out << "JOIN " << j.first.slot + 1 << '.'
            << corner_name(static_cast<int>(j.first.corner)) << ' ' << j.second.slot + 1
            << '.' << corner_name(static_cast<int>(j.second.corner)) << "\n";
    if (w.closed_wires > 0) out << "O " << w.closed_wires << "\n";
    return out.str();
}

// Fill every slot with a tangle and tie the corners along the wiring arcs,
// producing one closed diagram.
inline Diagram insert_tangles(const WiringDiagram& w, const std::vector<Diagram>& tangles) {
    if (static_cast<int>(tangles.size()) != w.k)
        fail(ErrorKind::ArityMismatch,
             "wiring has " + std::to_string(w.k) + " slots, got " +
                 std::to_string(tangles.size()) + " tangles");
    std::vector<int> base(tangles.size() + 1, 0);
    int circles = w.closed_wires;
    for (size_t i = 0; i < tangles.size(); ++i) {
        if (!tangles[i].is_tangle()) fail(ErrorKind::NotATangle, "slot needs a tangle");
        base[i + 1] = base[i] + tangles[i].edge_count();
        circles += tangles[i].free_circles();
    }
    detail::EdgeGlue glue(base.back());
    auto corner_edge = [&](const WiringEnd& e) {
        return base[static_cast<size_t>(e.slot)] + tangles[static_cast<size_t>(e.slot)].endpoint(e.corner);
    };
    for (const auto& j : w.joins) glue.glue(corner_edge(j.first), corner_edge(j.second));
    std::vector<Crossing> xs;
    for (size_t i = 0; i < tangles.size(); ++i)
        for (const Crossing& c : tangles[i].crossings()) {
            Crossing m;
            for (int s = 0; s < 4; ++s) m.e[static_cast<size_t>(s)] = glue.find(c[s] + base[i]);
            xs.push_back(m);
        }
    return Diagram::link(std::move(xs), circles + glue.circles);
}

// Degree bound for the assembled link: k-1 plus each slot's crossing count
// less its longest bridge.
inline int wiring_degree_bound(const WiringDiagram& w, const std::vector<Diagram>& tangles) {
    if (static_cast<int>(tangles.size()) != w.k)
        fail(ErrorKind::ArityMismatch, "tangle count does not match slots");
    int bound = w.k - 1;
    for (const Diagram& t : tangles) bound += t.n() - longest_bridge(t).second;
    return bound;
}

// Decompose each slot and expand the multilinear sum: at most 4^k closed-up
// basis links, each with at most k crossings.
inline LaurentPoly evaluate_by_decomposition(const WiringDiagram& w,
                                             const std::vector<Diagram>& tangles,
                                             Evaluator& ev,
                                             Strategy strat = Strategy::BridgeGuided) {
    if (static_cast<int>(tangles.size()) != w.k)
        fail(ErrorKind::ArityMismatch, "tangle count does not match slots");
    std::vector<M2Element> parts;
    parts.reserve(tangles.size());
    for (const Diagram& t : tangles) parts.push_back(ev.decompose(t, strat));
    static const BasisTangle kBasis[4] = {BasisTangle::P, BasisTangle::Q, BasisTangle::R1,
                                          BasisTangle::R2};
    std::vector<int> pick(tangles.size(), 0);
    LaurentPoly total;
    for (;;) {
        LaurentPoly weight = LaurentPoly::one();
        bool dead = false;
        for (size_t i = 0; i < pick.size() && !dead; ++i) {
            const LaurentPoly& c = parts[i].coeff(kBasis[pick[i]]);
            if (c.is_zero()) dead = true;
            else weight = weight * c;
        }
        if (!dead) {
            std::vector<Diagram> fill;
            fill.reserve(pick.size());
            for (size_t i = 0; i < pick.size(); ++i)
                fill.push_back(basis_diagram(kBasis[pick[i]]));
            Diagram assembled = insert_tangles(w, fill);
            if (assembled.n() > w.k)
                fail(ErrorKind::Internal, "basis link exceeds one crossing per slot");
            LaurentPoly val = ev.evaluate_link(assembled, strat);
            if (auto deg = val.z_degree(); deg && *deg > w.k - 1)
                fail(ErrorKind::Internal, "basis link degree exceeds k-1");
            total += weight * val;
        }
        size_t j = 0;
        while (j < pick.size() && ++pick[j] == 4) pick[j++] = 0;
        if (j == pick.size()) break;
    }
    return total;
}

struct BoundReport {
    int bound = 0;
    int actual = 0;
    int slack = 0;
};

inline BoundReport check_bound(const WiringDiagram& w, const std::vector<Diagram>& tangles,
                               Evaluator& ev) {
    BoundReport r;
    r.bound = wiring_degree_bound(w, tangles);
    LaurentPoly direct = ev.evaluate_link(insert_tangles(w, tangles));
    auto deg = direct.z_degree();
    if (!deg) fail(ErrorKind::Internal, "link polynomial vanished");
    r.actual = *deg;
    r.slack = r.bound - r.actual;
    if (r.slack < 0)
        fail(ErrorKind::BoundViolated, "degree " + std::to_string(r.actual) +
                                           " exceeds bound " + std::to_string(r.bound));
    return r;
}

} // namespace dubrovnik

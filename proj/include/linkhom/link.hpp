#pragma once

// Link diagrams: PD-code parsing, conversion to oriented diagrams, the
// Wirtinger presentation, and the built-in table.
//
// PD convention: X[a,b,c,d] lists the four edge labels counterclockwise
// starting at the incoming under-strand edge a; the under-strand exits at c.
// Edge labels are 1..2n, increasing along each component.  The over pair
// {b,d} gets its direction from global in/out role propagation (each edge
// flows out of exactly one crossing and into exactly one), so orientation
// and components are inferred, never guessed locally.
//
// Relator convention: crossing with over-arc i, under-arcs entering j_in and
// leaving j_out contributes x_i x_{j1} x_i^{-1} x_{j2}^{-1} with
// (j1,j2) = (j_in,j_out) at positive crossings and (j_out,j_in) at negative
// ones.  A global mirror ambiguity remains for arbitrary PD input; it does
// not affect homology orders or the Alexander polynomial up to units.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "linkhom/laurent.hpp"

namespace linkhom {

struct PDTuple {
    int a = 0, b = 0, c = 0, d = 0;
};

struct PDCode {
    std::vector<PDTuple> crossings;
    int num_edges() const { return 2 * static_cast<int>(crossings.size()); }
};

struct Crossing {
    int over_arc = 0;       // 1-based arc labels
    int under_in = 0;
    int under_out = 0;
    int over_component = 0;   // 1-based component indices
    int under_component = 0;
    int sign = +1;
};

struct LinkDiagram {
    int num_arcs = 0;
    int num_components = 0;
    std::vector<int> component_of_arc;  // [arc-1] -> 1..d
    std::vector<Crossing> crossings;
    std::string name;  // optional, set for built-ins
};

struct WirtingerPresentation {
    struct Relator {
        int i = 0, j1 = 0, j2 = 0;  // x_i x_{j1} x_i^{-1} x_{j2}^{-1}
        int t = 0, tp = 0;          // components of x_i and of x_{j1},x_{j2}
    };
    int N = 0;               // generator count (one per arc)
    int d = 0;               // component count
    std::vector<int> t;      // [gen-1] -> component, the map x_i -> u_{t(i)}
    std::vector<Relator> relators;
};

// ---- PD text grammar: X[a,b,c,d] tuples separated by commas/whitespace ----

inline PDCode parse_pd(const std::string& text) {
    PDCode code;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() &&
               std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    };
    auto skip_sep = [&] {  // commas or whitespace between tuples
        while (pos < text.size() &&
               (std::isspace(static_cast<unsigned char>(text[pos])) ||
                text[pos] == ','))
            ++pos;
    };
    auto read_int = [&] {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (start == pos) throw ParseError("expected arc label in PD code");
        return std::stoi(text.substr(start, pos - start));
    };
    auto expect_comma = [&] {
        skip_ws();
        if (pos >= text.size() || text[pos] != ',')
            throw ParseError("expected ',' in PD tuple");
        ++pos;
    };
    skip_sep();
    while (pos < text.size()) {
        if (text[pos] != 'X')
            throw ParseError("expected 'X' at position " + std::to_string(pos));
        ++pos;
        skip_ws();
        if (pos >= text.size() || text[pos] != '[')
            throw ParseError("expected '[' after 'X'");
        ++pos;
        PDTuple t;
        t.a = read_int();
        expect_comma();
        t.b = read_int();
        expect_comma();
        t.c = read_int();
        expect_comma();
        t.d = read_int();
        skip_ws();
        if (pos >= text.size() || text[pos] != ']')
            throw ParseError("expected ']' closing PD tuple");
        ++pos;
        code.crossings.push_back(t);
        skip_sep();
    }
    // labels 1..2n, each exactly twice
    std::map<int, int> count;
    for (const auto& t : code.crossings)
        for (int e : {t.a, t.b, t.c, t.d}) ++count[e];
    const int n_edges = code.num_edges();
    for (int e = 1; e <= n_edges; ++e) {
        auto it = count.find(e);
        if (it == count.end())
            throw ParseError("PD code: missing edge label " + std::to_string(e));
        if (it->second != 2)
            throw ParseError("PD code: edge label " + std::to_string(e) +
                             " appears " + std::to_string(it->second) +
                             " times (want 2)");
    }
    if (static_cast<int>(count.size()) != n_edges)
        throw ParseError("PD code: edge labels not 1..2n");
    return code;
}

inline std::string render_pd(const PDCode& code) {
    std::string out;
    for (std::size_t k = 0; k < code.crossings.size(); ++k) {
        const auto& t = code.crossings[k];
        if (k) out += " ";
        out += "X[" + std::to_string(t.a) + "," + std::to_string(t.b) + "," +
               std::to_string(t.c) + "," + std::to_string(t.d) + "]";
    }
    return out;
}

// ---- validation ----

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

inline ValidationReport validate_diagram(const LinkDiagram& d) {
    ValidationReport rep;
    auto fail = [&](std::string msg) { rep.violations.push_back(std::move(msg)); };
    if (static_cast<int>(d.component_of_arc.size()) != d.num_arcs)
        fail("component_of_arc length != num_arcs");
    std::set<int> comps_seen;
    for (int i = 0; i < static_cast<int>(d.component_of_arc.size()); ++i) {
        int c = d.component_of_arc[i];
        if (c < 1 || c > d.num_components)
            fail("component index out of range at arc " + std::to_string(i + 1));
        else
            comps_seen.insert(c);
    }
    if (static_cast<int>(comps_seen.size()) != d.num_components)
        fail("component_of_arc is not surjective onto 1..d");
    std::map<int, int> out_count;
    std::map<std::pair<int, int>, int> cross_pair;  // component pair -> count
    for (std::size_t k = 0; k < d.crossings.size(); ++k) {
        const auto& cr = d.crossings[k];
        auto arc_ok = [&](int a) { return a >= 1 && a <= d.num_arcs; };
        if (!arc_ok(cr.over_arc) || !arc_ok(cr.under_in) || !arc_ok(cr.under_out)) {
            fail("arc label out of range at crossing " + std::to_string(k + 1));
            continue;
        }
        if (d.component_of_arc[cr.under_in - 1] != d.component_of_arc[cr.under_out - 1])
            fail("under arcs on different components at crossing " +
                 std::to_string(k + 1) + " (relator abelianization nontrivial)");
        if (d.component_of_arc[cr.over_arc - 1] != cr.over_component)
            fail("over_component mismatch at crossing " + std::to_string(k + 1));
        if (d.component_of_arc[cr.under_in - 1] != cr.under_component)
            fail("under_component mismatch at crossing " + std::to_string(k + 1));
        ++out_count[cr.under_out];
        int a = d.component_of_arc[cr.over_arc - 1];
        int b = d.component_of_arc[cr.under_in - 1];
        if (a != b) ++cross_pair[{std::min(a, b), std::max(a, b)}];
    }
    for (const auto& [arc, n] : out_count)
        if (n > 1)
            fail("arc " + std::to_string(arc) +
                 " is the outgoing under-arc of " + std::to_string(n) +
                 " crossings");
    // two closed curves always cross an even number of times
    for (const auto& [pair, n] : cross_pair)
        if (n % 2)
            fail("components " + std::to_string(pair.first) + " and " +
                 std::to_string(pair.second) + " cross " + std::to_string(n) +
                 " times (odd): not a planar diagram");
    return rep;
}

// ---- PD -> oriented diagram ----

inline LinkDiagram pd_to_diagram(const PDCode& code, int unknot_components = 1) {
    const int nc = static_cast<int>(code.crossings.size());
    if (nc == 0) {
        LinkDiagram d;
        d.num_arcs = unknot_components;
        d.num_components = unknot_components;
        d.component_of_arc.resize(unknot_components);
        for (int i = 0; i < unknot_components; ++i) d.component_of_arc[i] = i + 1;
        return d;
    }
    const int ne = 2 * nc;
    // slots: (crossing, 0..3); role: +1 in, -1 out, 0 unknown
    std::vector<std::array<int, 4>> slot_edge(nc);
    std::vector<std::array<int, 4>> role(nc);
    std::map<int, std::vector<std::pair<int, int>>> occ;  // edge -> slots
    for (int k = 0; k < nc; ++k) {
        const auto& t = code.crossings[k];
        slot_edge[k] = {t.a, t.b, t.c, t.d};
        role[k] = {+1, 0, -1, 0};
        for (int s = 0; s < 4; ++s) occ[slot_edge[k][s]].push_back({k, s});
    }
    // propagate: each edge has one in and one out role; over slots 1,3 are
    // opposite within a crossing
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& [e, slots] : occ) {
            int r0 = role[slots[0].first][slots[0].second];
            int r1 = role[slots[1].first][slots[1].second];
            if (r0 != 0 && r1 != 0) {
                if (r0 == r1)
                    throw ValidationError(
                        "PD code is not a consistent oriented diagram (edge " +
                        std::to_string(e) + ")");
            } else if (r0 != 0) {
                role[slots[1].first][slots[1].second] = -r0;
                changed = true;
            } else if (r1 != 0) {
                role[slots[0].first][slots[0].second] = -r1;
                changed = true;
            }
        }
        for (int k = 0; k < nc; ++k) {
            int r1 = role[k][1], r3 = role[k][3];
            if (r1 != 0 && r3 != 0) {
                if (r1 == r3)
                    throw ValidationError(
                        "PD code: over strand at crossing " +
                        std::to_string(k + 1) + " has no consistent direction");
            } else if (r1 != 0) {
                role[k][3] = -r1;
                changed = true;
            } else if (r3 != 0) {
                role[k][1] = -r3;
                changed = true;
            }
        }
    }
    // pure-over components can stay undetermined; fall back to the successor
    // rule (labels increase along the strand)
    for (int k = 0; k < nc; ++k) {
        if (role[k][1] == 0) {
            role[k][1] = slot_edge[k][3] == slot_edge[k][1] + 1 ? +1 : -1;
            role[k][3] = -role[k][1];
        }
    }
    // successor map and components
    std::vector<int> nxt(ne + 1, 0);
    for (int k = 0; k < nc; ++k) {
        nxt[slot_edge[k][0]] = slot_edge[k][2];
        if (role[k][1] > 0)
            nxt[slot_edge[k][1]] = slot_edge[k][3];
        else
            nxt[slot_edge[k][3]] = slot_edge[k][1];
    }
    std::vector<int> comp_of_edge(ne + 1, 0);
    int ncomp = 0;
    for (int e = 1; e <= ne; ++e) {
        if (comp_of_edge[e]) continue;
        ++ncomp;
        int x = e;
        while (!comp_of_edge[x]) {
            comp_of_edge[x] = ncomp;
            x = nxt[x];
            if (x < 1 || x > ne)
                throw ValidationError("PD code: broken edge successor chain");
        }
    }
    // arcs: merge the over pair at each crossing
    std::vector<int> parent(ne + 1);
    for (int e = 0; e <= ne; ++e) parent[e] = e;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int k = 0; k < nc; ++k)
        parent[find(slot_edge[k][1])] = find(slot_edge[k][3]);
    std::map<int, int> arc_id;
    for (int e = 1; e <= ne; ++e) {
        int r = find(e);
        if (!arc_id.count(r)) arc_id[r] = static_cast<int>(arc_id.size()) + 1;
    }
    LinkDiagram diag;
    diag.num_arcs = static_cast<int>(arc_id.size());
    diag.num_components = ncomp;
    diag.component_of_arc.resize(diag.num_arcs);
    for (int e = 1; e <= ne; ++e)
        diag.component_of_arc[arc_id[find(e)] - 1] = comp_of_edge[e];
    for (int k = 0; k < nc; ++k) {
        Crossing cr;
        cr.over_arc = arc_id[find(slot_edge[k][1])];
        cr.under_in = arc_id[find(slot_edge[k][0])];
        cr.under_out = arc_id[find(slot_edge[k][2])];
        cr.sign = role[k][3] > 0 ? +1 : -1;  // over strand running d->b is positive
        cr.over_component = diag.component_of_arc[cr.over_arc - 1];
        cr.under_component = diag.component_of_arc[cr.under_in - 1];
        diag.crossings.push_back(cr);
    }
    auto rep = validate_diagram(diag);
    if (!rep.ok())
        throw ValidationError("PD code: " + rep.violations.front());
    return diag;
}

// ---- Wirtinger presentation ----

inline WirtingerPresentation wirtinger(const LinkDiagram& diag) {
    auto rep = validate_diagram(diag);
    if (!rep.ok())
        throw ValidationError("invalid diagram: " + rep.violations.front());
    WirtingerPresentation w;
    w.N = diag.num_arcs;
    w.d = diag.num_components;
    w.t = diag.component_of_arc;
    for (const auto& cr : diag.crossings) {
        WirtingerPresentation::Relator r;
        r.i = cr.over_arc;
        if (cr.sign > 0) {
            r.j1 = cr.under_in;
            r.j2 = cr.under_out;
        } else {
            r.j1 = cr.under_out;
            r.j2 = cr.under_in;
        }
        r.t = w.t[r.i - 1];
        r.tp = w.t[r.j1 - 1];
        w.relators.push_back(r);
    }
    return w;
}

// ---- built-in table ----

struct BuiltinInfo {
    std::string name;
    std::vector<std::string> aliases;
    int components = 0;
    int crossings = 0;
    std::string delta;      // known normalized Alexander polynomial
    bool poly_only = false; // entry exposes a polynomial, not a diagram
};

namespace detail {

inline LinkDiagram hand_diagram(std::string name, int d,
                                std::vector<int> comp_of_arc,
                                std::vector<std::array<int, 4>> rows) {
    LinkDiagram diag;
    diag.name = std::move(name);
    diag.num_components = d;
    diag.num_arcs = static_cast<int>(comp_of_arc.size());
    diag.component_of_arc = std::move(comp_of_arc);
    for (const auto& r : rows) {
        Crossing cr;
        cr.over_arc = r[0];
        cr.under_in = r[1];
        cr.under_out = r[2];
        cr.sign = r[3];
        cr.over_component = diag.component_of_arc[cr.over_arc - 1];
        cr.under_component = diag.component_of_arc[cr.under_in - 1];
        diag.crossings.push_back(cr);
    }
    return diag;
}

inline std::string canonical_builtin_name(std::string name) {
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    if (name == "3_1") return "trefoil";
    if (name == "4_1") return "figure8";
    if (name == "2_1^2" || name == "l2a1") return "hopf";
    if (name == "5_1^2" || name == "whitehead") return "l5a1";
    if (name == "6_2^2") return "l6a1";
    if (name == "6_2^3") return "l6a2";
    if (name == "lehmer" || name == "lehmer-poly") return "lehmer-poly";
    return name;
}

}  // namespace detail

inline const std::vector<BuiltinInfo>& builtin_table() {
    static const std::vector<BuiltinInfo> table = {
        {"unknot", {}, 1, 0, "1", false},
        {"trefoil", {"3_1"}, 1, 3, "u1^2 - u1 + 1", false},
        {"figure8", {"4_1"}, 1, 4, "u1^2 - 3*u1 + 1", false},
        {"hopf", {"2_1^2", "L2a1"}, 2, 2, "1", false},
        {"L5a1", {"5_1^2", "whitehead"}, 2, 5, "u1*u2 - u1 - u2 + 1", false},
        {"L6a1", {"6_2^2"}, 2, 6, "u1^2*u2 + u1*u2^2 - u1*u2 + u1 + u2", false},
        {"L6a2", {"6_2^3"}, 2, 6, "2*u1*u2 - u1 - u2 + 2", false},
        {"lehmer-poly", {"lehmer"}, 0, 0,
         "u1^10 + u1^9 - u1^7 - u1^6 - u1^5 - u1^4 - u1^3 + u1 + 1", true},
    };
    return table;
}

inline LaurentPoly builtin_polynomial(const std::string& name) {
    const std::string key = detail::canonical_builtin_name(name);
    for (const auto& info : builtin_table())
        if (detail::canonical_builtin_name(info.name) == key)
            return parse_poly(info.delta, std::max(info.components, 1));
    throw ValidationError("unknown built-in link: " + name);
}

inline LinkDiagram builtin_link(const std::string& name) {
    const std::string key = detail::canonical_builtin_name(name);
    using detail::hand_diagram;
    if (key == "unknot") {
        LinkDiagram d;
        d.name = "unknot";
        d.num_arcs = 1;
        d.num_components = 1;
        d.component_of_arc = {1};
        return d;
    }
    if (key == "trefoil") {
        auto d = pd_to_diagram(parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"));
        d.name = "trefoil";
        return d;
    }
    if (key == "figure8") {
        auto d = pd_to_diagram(
            parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"));
        d.name = "figure8";
        return d;
    }
    if (key == "hopf") {
        auto d = pd_to_diagram(parse_pd("X[4,1,3,2] X[2,3,1,4]"));
        d.name = "hopf";
        return d;
    }
    if (key == "l5a1") {
        return hand_diagram("L5a1", 2, {1, 1, 2, 2, 2},
                            {{{1, 3, 5, +1},
                              {3, 2, 1, +1},
                              {5, 4, 3, +1},
                              {4, 1, 2, -1},
                              {2, 5, 4, -1}}});
    }
    if (key == "l6a1") {
        return hand_diagram("L6a1", 2, {1, 2, 2, 1, 2, 1},
                            {{{1, 3, 2, +1},
                              {3, 4, 1, +1},
                              {4, 5, 3, +1},
                              {5, 1, 6, +1},
                              {6, 2, 5, +1},
                              {2, 6, 4, +1}}});
    }
    if (key == "l6a2") {
        return hand_diagram("L6a2", 2, {1, 2, 2, 1, 1, 1},
                            {{{1, 3, 2, +1},
                              {3, 4, 1, +1},
                              {4, 1, 6, +1},
                              {6, 5, 4, +1},
                              {5, 2, 3, +1},
                              {2, 6, 5, +1}}});
    }
    if (key == "lehmer-poly")
        throw ValidationError(
            "'lehmer-poly' exposes a polynomial only, not a diagram");
    throw ValidationError("unknown built-in link: " + name);
}

}  // namespace linkhom

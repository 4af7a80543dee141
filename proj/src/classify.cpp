#include "gbs/classify.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "gbs/invariants.hpp"
#include "gbs/moves.hpp"
#include "gbs/twist.hpp"

namespace gbs {

namespace {

Label coprime_part(Label s, Label q) {
    s = std::llabs(s);
    q = std::llabs(q);
    for (Label g = std::gcd(s, q); g > 1; g = std::gcd(s, q)) s /= g;
    return s;
}

bool divides(Label d, Label n) { return n % d == 0; }

void require_general_reduced(const Graph &g) {
    if (!is_reduced(g)) throw Error(ErrorKind::NotReduced, "graph has a collapsible edge");
    if (kind_of_reduced(g).tag != GraphKind::Tag::General)
        throw Error(ErrorKind::ElementaryInput, "graph is elementary or a solvable Baumslag-Solitar graph");
}

bool bounds_unit_loop(const Graph &g, int v) {
    for (const auto &e : g.edges)
        if (e.is_loop() && e.a == v && std::llabs(e.la) == 1 && std::llabs(e.lb) == 1) return true;
    return false;
}

} // namespace

const char *vertex_type_name(VertexType t) {
    switch (t) {
    case VertexType::PlainCyclic: return "PlainCyclic";
    case VertexType::KleinFromSeg22: return "KleinFromSeg22";
    case VertexType::SolvableVertex: return "SolvableVertex";
    case VertexType::TorusVertex: return "TorusVertex";
    case VertexType::KleinFromLoop: return "KleinFromLoop";
    }
    return "";
}

std::string Verdict::kind_name() const {
    switch (kind) {
    case Kind::Elementary: return "Elementary";
    case Kind::SolvableBS: return "SolvableBS";
    case Kind::ContainsF2: return "ContainsF2";
    case Kind::VirtuallyNilpotent: return "VirtuallyNilpotent";
    }
    return "";
}

std::vector<SlidEdge> slid_edges(const Graph &g) {
    if (!is_reduced(g)) throw Error(ErrorKind::NotReduced, "graph has a collapsible edge");
    std::vector<SlidEdge> out;
    for (int f = 0; f < static_cast<int>(g.edges.size()); ++f) {
        SlidEdge s;
        s.edge = f;
        for (Half across : {Half{f, false}, Half{f, true}})
            for (Half h : g.out(g.origin(across)))
                if (h.edge != f && divides(g.label(across), g.label(h)) &&
                    std::find(s.witnesses.begin(), s.witnesses.end(), h) == s.witnesses.end())
                    s.witnesses.push_back(h);
        if (s.witnesses.empty()) continue;
        const Edge &e = g.edges[f];
        if (auto q = ascending_q(g, f)) {
            s.shape = SlidShape::AscendingLoop;
            s.q = *q;
        } else if (!e.is_loop() && std::llabs(e.la) == 2 && std::llabs(e.lb) == 2) {
            s.shape = SlidShape::Seg22;
        }
        out.push_back(s);
    }
    return out;
}

std::optional<ConditionFailure> check_conditions(const Graph &g) {
    require_general_reduced(g);
    auto slid = slid_edges(g);
    auto edge_at = [&](int e) { return "edge " + g.edges[e].id; };
    auto vertex_at = [&](int v) { return "vertex " + g.vertices[v]; };

    for (const auto &s : slid)
        if (s.shape == SlidShape::Other) return ConditionFailure{1, edge_at(s.edge)};

    std::vector<int> touched(g.vertices.size(), 0);
    for (const auto &s : slid) {
        const Edge &e = g.edges[s.edge];
        if (++touched[e.a] > 1) return ConditionFailure{2, vertex_at(e.a)};
        if (!e.is_loop() && ++touched[e.b] > 1) return ConditionFailure{2, vertex_at(e.b)};
    }

    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
        const Edge &e = g.edges[i];
        if (!e.is_loop()) continue;
        Label p = std::min(std::llabs(e.la), std::llabs(e.lb));
        Label q = std::max(std::llabs(e.la), std::llabs(e.lb));
        if (divides(p, q) && p != q && p != 1) return ConditionFailure{3, edge_at(i)};
    }

    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
        auto q = ascending_q(g, i);
        if (!q || std::llabs(*q) < 2) continue;
        int v = g.edges[i].a;
        std::vector<Half> others;
        for (Half h : g.out(v))
            if (h.edge != i) others.push_back(h);
        for (Half h : others)
            if (coprime_part(g.label(h), *q) == 1) return ConditionFailure{4, vertex_at(v) + " at " + g.half_name(h)};
        for (Half hr : others)
            for (Half hs : others) {
                if (hr == hs) continue;
                if (divides(coprime_part(g.label(hs), *q), g.label(hr)))
                    return ConditionFailure{5, vertex_at(v) + " at " + g.half_name(hs) + " and " + g.half_name(hr)};
            }
    }

    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
        const Edge &e = g.edges[i];
        if (e.is_loop() || std::llabs(e.la) != 2 || std::llabs(e.lb) != 2) continue;
        for (auto [v, w] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}})
            for (Half hr : g.out(v)) {
                if (hr.edge == i) continue;
                for (Half hs : g.out(w)) {
                    if (hs.edge == i) continue;
                    Label r = std::llabs(g.label(hr)), s = std::llabs(g.label(hs));
                    if (!divides(r, s) || s % 2 != 0) continue;
                    if (r != s || hr.edge != hs.edge)
                        return ConditionFailure{6, edge_at(i) + " at " + g.half_name(hr) + " and " + g.half_name(hs)};
                }
            }
    }
    return std::nullopt;
}

CollapsedGraph collapse_slid(const Graph &g) {
    if (check_conditions(g)) throw Error(ErrorKind::ConditionsFailed, "slid edges cannot be collapsed");
    auto slid = slid_edges(g);
    std::vector<int> slid_at(g.vertices.size(), -1);
    for (int i = 0; i < static_cast<int>(slid.size()); ++i) {
        const Edge &e = g.edges[slid[i].edge];
        slid_at[e.a] = i;
        slid_at[e.b] = i;
    }
    CollapsedGraph c;
    c.vertex_of.assign(g.vertices.size(), -1);
    std::vector<int> side(g.vertices.size(), -1);
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
        if (c.vertex_of[v] >= 0) continue;
        CollapsedVertex cv;
        int idx = static_cast<int>(c.vertices.size());
        if (slid_at[v] < 0) {
            cv.id = g.vertices[v];
            cv.members = {v};
        } else {
            const SlidEdge &s = slid[slid_at[v]];
            const Edge &e = g.edges[s.edge];
            cv.collapsed_edge = s.edge;
            if (s.shape == SlidShape::Seg22) {
                cv.type = VertexType::KleinFromSeg22;
                cv.id = g.vertices[e.a] + "+" + g.vertices[e.b];
                cv.members = {e.a, e.b};
                side[e.a] = 0;
                side[e.b] = 1;
            } else {
                cv.q = s.q;
                cv.type = s.q == 1 ? VertexType::TorusVertex
                          : s.q == -1 ? VertexType::KleinFromLoop
                                      : VertexType::SolvableVertex;
                cv.id = g.vertices[v];
                cv.members = {v};
            }
        }
        for (int m : cv.members) c.vertex_of[m] = idx;
        c.vertices.push_back(cv);
    }
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
        bool gone = std::any_of(slid.begin(), slid.end(), [&](const SlidEdge &s) { return s.edge == i; });
        if (gone) continue;
        const Edge &e = g.edges[i];
        CollapsedEdge ce;
        ce.edge = i;
        ce.a = {c.vertex_of[e.a], e.la, side[e.a], e.a};
        ce.b = {c.vertex_of[e.b], e.lb, side[e.b], e.b};
        c.edges.push_back(ce);
    }
    return c;
}

bool has_divisibility_relation(const Graph &g) {
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
        auto hs = g.out(v);
        for (Half e : hs)
            for (Half f : hs)
                if (e != f && divides(g.label(f), g.label(e))) return true;
    }
    return false;
}

bool rigidity_condition(const Graph &g) {
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
        auto hs = g.out(v);
        for (Half e : hs)
            for (Half f : hs) {
                if (e == f || !divides(g.label(f), g.label(e))) continue;
                const Edge &ed = g.edges[e.edge];
                bool pp_loop = e == f.flip() && ed.is_loop() && std::llabs(ed.la) == std::llabs(ed.lb) &&
                               std::llabs(ed.la) >= 2;
                bool unit_loop_vertex = hs.size() == 3 && bounds_unit_loop(g, v);
                if (!pp_loop && !unit_loop_vertex) return false;
            }
    }
    return true;
}

bool finite_out_condition(const Graph &g) {
    int b = betti(g);
    bool divisibility = has_divisibility_relation(g);
    if (b == 0 && !divisibility) return true;
    if (b == 1 && !divisibility && !modulus_group(g).trivial) return true;
    if (b != 1) return false;

    int loop = spanning_tree(g).non_tree.front();
    const Edge &l = g.edges[loop];
    if (!l.is_loop() || l.la != -l.lb) return false;
    Graph tree = g;
    tree.edges.erase(tree.edges.begin() + loop);
    if (has_divisibility_relation(tree)) return false;
    Label k = std::llabs(l.la);
    int v = l.a;
    if (k == 1) return tree.degree(v) == 1;
    for (Half h : tree.out(v)) {
        Label r = std::llabs(tree.label(h));
        if (r % k == 0 || k % r == 0) return false;
    }
    return true;
}

bool has_strict_ascending_loop(const Graph &g) {
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
        auto q = ascending_q(g, i);
        if (q && std::llabs(*q) >= 2) return true;
    }
    return false;
}

bool virtually_abelian_condition(const Graph &g) {
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
        auto q = ascending_q(g, i);
        if (!q || *q != 1) continue;
        for (Half h : g.out(g.edges[i].a))
            if (h.edge != i && !twist_order(g, h).finite) return false;
    }
    return true;
}

Verdict classify(const Graph &g) {
    require_minimal(g);
    Graph r = reduce(g);
    GraphKind kind = kind_of_reduced(r);
    Verdict v;
    if (kind.tag == GraphKind::Tag::Elementary) {
        v.kind = Verdict::Kind::Elementary;
        v.elementary_shape = kind.name();
        v.elementary_out = kind.elementary_out();
        return v;
    }
    if (kind.tag == GraphKind::Tag::SolvableBS) {
        v.kind = Verdict::Kind::SolvableBS;
        v.n = kind.n;
        v.out_rank_hint = static_cast<int>(factorize(kind.n).size()) - 1;
        return v;
    }
    if (auto fail = check_conditions(r)) {
        v.kind = Verdict::Kind::ContainsF2;
        v.violated_condition = fail->condition;
        v.location = fail->location;
        return v;
    }
    v.kind = Verdict::Kind::VirtuallyNilpotent;
    v.k = rank_k(r);
    v.finitely_generated = !has_strict_ascending_loop(r);
    v.virtually_abelian = virtually_abelian_condition(r);
    v.rigid = rigidity_condition(r);
    v.finite = finite_out_condition(r);
    return v;
}

nlohmann::json verdict_to_json(const Verdict &v) {
    nlohmann::json j;
    j["verdict"] = v.kind_name();
    switch (v.kind) {
    case Verdict::Kind::Elementary:
        j["shape"] = v.elementary_shape;
        j["out"] = v.elementary_out;
        break;
    case Verdict::Kind::SolvableBS:
        j["n"] = v.n;
        j["out_rank_hint"] = v.out_rank_hint;
        break;
    case Verdict::Kind::ContainsF2:
        j["violated_condition"] = v.violated_condition;
        j["location"] = v.location;
        break;
    case Verdict::Kind::VirtuallyNilpotent:
        j["k"] = v.k;
        j["virtually_abelian"] = v.virtually_abelian;
        j["finitely_generated"] = v.finitely_generated;
        j["finite"] = v.finite;
        j["rigid"] = v.rigid;
        break;
    }
    return j;
}

nlohmann::json collapsed_to_json(const Graph &g, const CollapsedGraph &c) {
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (const auto &v : c.vertices) {
        nlohmann::json x{{"id", v.id}, {"type", vertex_type_name(v.type)}};
        if (v.type != VertexType::PlainCyclic && v.type != VertexType::KleinFromSeg22) x["q"] = v.q;
        j["vertices"].push_back(x);
    }
    j["edges"] = nlohmann::json::array();
    for (const auto &e : c.edges) {
        nlohmann::json x{{"id", g.edges[e.edge].id},
                         {"a", c.vertices[e.a.vertex].id},
                         {"b", c.vertices[e.b.vertex].id},
                         {"la", e.a.label},
                         {"lb", e.b.label}};
        if (e.a.side >= 0) x["side_a"] = e.a.side;
        if (e.b.side >= 0) x["side_b"] = e.b.side;
        j["edges"].push_back(x);
    }
    return j;
}

} // namespace gbs

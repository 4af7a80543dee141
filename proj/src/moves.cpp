#include "gbs/moves.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace gbs {

namespace {

void check_edge(const Graph &g, int edge) {
    if (edge < 0 || edge >= static_cast<int>(g.edges.size()))
        throw Error(ErrorKind::MalformedInput, "edge index out of range");
}

void check_vertex(const Graph &g, int v) {
    if (v < 0 || v >= static_cast<int>(g.vertices.size()))
        throw Error(ErrorKind::MalformedInput, "vertex index out of range");
}

Graph remove_vertex(Graph g, int v) {
    g.vertices.erase(g.vertices.begin() + v);
    for (auto &e : g.edges) {
        if (e.a > v) --e.a;
        if (e.b > v) --e.b;
    }
    return g;
}

} // namespace

Graph collapse(const Graph &g, int edge) {
    check_edge(g, edge);
    const Edge &e = g.edges[edge];
    if (!is_collapsible(g, edge))
        throw Error(ErrorKind::NotCollapsible, "edge " + e.id + " is not a segment with a unit label");
    Half gone = std::llabs(e.lb) == 1 ? Half{edge, true} : Half{edge, false};
    int v = g.origin(gone);
    int w = g.terminus(gone);
    Label factor = e.la * e.lb;

    Graph r = g;
    for (Half h : g.out(v)) {
        if (h.edge == edge) continue;
        r.set_label(h, checked_mul(g.label(h), factor));
        r.set_origin(h, w);
    }
    r.edges.erase(r.edges.begin() + edge);
    return remove_vertex(std::move(r), v);
}

Graph expand(const Graph &g, int vertex, Label divisor, const std::vector<Half> &moved) {
    check_vertex(g, vertex);
    if (divisor == 0) throw Error(ErrorKind::BadFactor, "expansion divisor must be nonzero");
    std::set<Half> distinct;
    for (Half h : moved) {
        check_edge(g, h.edge);
        if (g.origin(h) != vertex)
            throw Error(ErrorKind::NotAdjacent, g.half_name(h) + " does not start at " + g.vertices[vertex]);
        if (!distinct.insert(h).second) throw Error(ErrorKind::MalformedInput, "edge end moved twice");
        if (g.label(h) % divisor != 0)
            throw Error(ErrorKind::IndivisibleLabel, g.half_name(h) + " is not divisible by " + std::to_string(divisor));
    }
    Graph r = g;
    int fresh = static_cast<int>(r.vertices.size());
    r.vertices.push_back(fresh_vertex_id(g));
    Edge link;
    link.id = fresh_edge_id(g);
    link.a = vertex;
    link.b = fresh;
    link.la = divisor;
    link.lb = 1;
    for (Half h : moved) {
        r.set_label(h, g.label(h) / divisor);
        r.set_origin(h, fresh);
    }
    r.edges.push_back(link);
    return r;
}

Graph reduce(const Graph &g) {
    Graph r = g;
    for (;;) {
        int pick = -1;
        for (int i = 0; i < static_cast<int>(r.edges.size()); ++i) {
            if (!is_collapsible(r, i)) continue;
            if (pick < 0 || r.edges[i].id < r.edges[pick].id) pick = i;
        }
        if (pick < 0) return r;
        r = collapse(r, pick);
    }
}

Graph slide(const Graph &g, Half moving, Half across) {
    check_edge(g, moving.edge);
    check_edge(g, across.edge);
    if (g.origin(moving) != g.origin(across))
        throw Error(ErrorKind::NotAdjacent, g.half_name(moving) + " and " + g.half_name(across) + " have different origins");
    if (moving.edge == across.edge)
        throw Error(ErrorKind::SameGeometricEdge, "cannot slide " + g.half_name(moving) + " across its own edge");
    if (g.label(moving) % g.label(across) != 0)
        throw Error(ErrorKind::NotDivisible, g.half_name(across) + " label does not divide " + g.half_name(moving));
    Graph r = g;
    r.set_label(moving, checked_mul(g.label(moving) / g.label(across), g.far_label(across)));
    r.set_origin(moving, g.terminus(across));
    return r;
}

Graph induction_move(const Graph &g, int loop, Label factor, Direction dir) {
    check_edge(g, loop);
    auto q = ascending_q(g, loop);
    if (!q) throw Error(ErrorKind::NotAscendingLoop, g.edges[loop].id + " is not a (1,q)-loop");
    if (std::llabs(factor) < 2 || *q % factor != 0)
        throw Error(ErrorKind::BadFactor, std::to_string(factor) + " is not a proper divisor factor of q");
    int v = g.edges[loop].a;
    Graph r = g;
    for (Half h : g.out(v)) {
        if (h.edge == loop) continue;
        if (dir == Direction::Multiply) {
            r.set_label(h, checked_mul(g.label(h), factor));
        } else {
            if (g.label(h) % factor != 0)
                throw Error(ErrorKind::IndivisibleLabel, g.half_name(h) + " is not divisible by " + std::to_string(factor));
            r.set_label(h, g.label(h) / factor);
        }
    }
    return r;
}

Graph slide_around_loop(const Graph &g, Half moving, int loop, Direction dir) {
    check_edge(g, loop);
    check_edge(g, moving.edge);
    if (!ascending_q(g, loop)) throw Error(ErrorKind::NotAscendingLoop, g.edges[loop].id + " is not a (1,q)-loop");
    if (moving.edge == loop) throw Error(ErrorKind::SameGeometricEdge, "cannot slide a loop around itself");
    if (g.origin(moving) != g.edges[loop].a)
        throw Error(ErrorKind::NotAdjacent, g.half_name(moving) + " does not start at the loop basepoint");
    Half unit = std::llabs(g.edges[loop].la) == 1 ? Half{loop, false} : Half{loop, true};
    return slide(g, moving, dir == Direction::Multiply ? unit : unit.flip());
}

Graph apply_move(const Graph &g, const Move &m) {
    return std::visit(
        [&](const auto &mv) -> Graph {
            using T = std::decay_t<decltype(mv)>;
            if constexpr (std::is_same_v<T, CollapseMove>) {
                return collapse(g, g.require_edge(mv.edge));
            } else if constexpr (std::is_same_v<T, ExpansionMove>) {
                std::vector<Half> hs;
                for (const auto &name : mv.moved) hs.push_back(g.parse_half(name));
                return expand(g, g.require_vertex(mv.vertex), mv.divisor, hs);
            } else if constexpr (std::is_same_v<T, SlideMove>) {
                return slide(g, g.parse_half(mv.moving), g.parse_half(mv.across));
            } else if constexpr (std::is_same_v<T, InductionMove>) {
                return induction_move(g, g.require_edge(mv.loop), mv.factor, mv.direction);
            } else {
                int target = mv.kind == SignChange::Kind::Vertex ? g.require_vertex(mv.target)
                                                                 : g.require_edge(mv.target);
                return apply_sign_change(g, {mv.kind, target});
            }
        },
        m);
}

namespace {

std::string get_string(const nlohmann::json &j, const char *key) {
    if (!j.contains(key) || !j[key].is_string())
        throw Error(ErrorKind::MalformedInput, std::string("move needs string field ") + key);
    return j[key].get<std::string>();
}

Label get_int(const nlohmann::json &j, const char *key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw Error(ErrorKind::MalformedInput, std::string("move needs integer field ") + key);
    return j[key].get<Label>();
}

Direction get_direction(const nlohmann::json &j) {
    auto d = get_string(j, "direction");
    if (d == "multiply") return Direction::Multiply;
    if (d == "divide") return Direction::Divide;
    throw Error(ErrorKind::MalformedInput, "direction must be multiply or divide");
}

} // namespace

Move move_from_json(const nlohmann::json &j) {
    if (!j.is_object()) throw Error(ErrorKind::MalformedInput, "move must be an object");
    auto kind = get_string(j, "move");
    if (kind == "collapse") return CollapseMove{get_string(j, "edge")};
    if (kind == "expand") {
        ExpansionMove m{get_string(j, "vertex"), get_int(j, "divisor"), {}};
        if (!j.contains("ends") || !j["ends"].is_array())
            throw Error(ErrorKind::MalformedInput, "expand needs an ends array");
        for (const auto &e : j["ends"]) {
            if (!e.is_string()) throw Error(ErrorKind::MalformedInput, "ends must be strings");
            m.moved.push_back(e.get<std::string>());
        }
        return m;
    }
    if (kind == "slide") return SlideMove{get_string(j, "e"), get_string(j, "f")};
    if (kind == "induction") return InductionMove{get_string(j, "loop"), get_int(j, "factor"), get_direction(j)};
    if (kind == "flip_vertex") return SignMove{SignChange::Kind::Vertex, get_string(j, "vertex")};
    if (kind == "flip_edge") return SignMove{SignChange::Kind::Edge, get_string(j, "edge")};
    throw Error(ErrorKind::MalformedInput, "unknown move " + kind);
}

nlohmann::json move_to_json(const Move &m) {
    return std::visit(
        [](const auto &mv) -> nlohmann::json {
            using T = std::decay_t<decltype(mv)>;
            if constexpr (std::is_same_v<T, CollapseMove>) {
                return {{"move", "collapse"}, {"edge", mv.edge}};
            } else if constexpr (std::is_same_v<T, ExpansionMove>) {
                return {{"move", "expand"}, {"vertex", mv.vertex}, {"divisor", mv.divisor}, {"ends", mv.moved}};
            } else if constexpr (std::is_same_v<T, SlideMove>) {
                return {{"move", "slide"}, {"e", mv.moving}, {"f", mv.across}};
            } else if constexpr (std::is_same_v<T, InductionMove>) {
                return {{"move", "induction"},
                        {"loop", mv.loop},
                        {"factor", mv.factor},
                        {"direction", mv.direction == Direction::Multiply ? "multiply" : "divide"}};
            } else {
                if (mv.kind == SignChange::Kind::Vertex) return {{"move", "flip_vertex"}, {"vertex", mv.target}};
                return {{"move", "flip_edge"}, {"edge", mv.target}};
            }
        },
        m);
}

} // namespace gbs

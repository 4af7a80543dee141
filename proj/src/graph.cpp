#include "gbs/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "gbs/moves.hpp"

namespace gbs {

const char *kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::ZeroLabel: return "ZeroLabel";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::EmptyGraph: return "EmptyGraph";
    case ErrorKind::NotMinimal: return "NotMinimal";
    case ErrorKind::NotReduced: return "NotReduced";
    case ErrorKind::ElementaryInput: return "ElementaryInput";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::ConditionsFailed: return "ConditionsFailed";
    case ErrorKind::NotCollapsible: return "NotCollapsible";
    case ErrorKind::IndivisibleLabel: return "IndivisibleLabel";
    case ErrorKind::NotAdjacent: return "NotAdjacent";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::SameGeometricEdge: return "SameGeometricEdge";
    case ErrorKind::NotAscendingLoop: return "NotAscendingLoop";
    case ErrorKind::BadFactor: return "BadFactor";
    case ErrorKind::NotAClosedPath: return "NotAClosedPath";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::BoundTooSmall: return "BoundTooSmall";
    case ErrorKind::CriterionMismatch: return "CriterionMismatch";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

Label checked_mul(Label x, Label y) {
    Label r;
    if (__builtin_mul_overflow(x, y, &r) || r == std::numeric_limits<Label>::min())
        throw Error(ErrorKind::SizeLimitExceeded, "label overflow");
    return r;
}

std::vector<Half> Graph::out(int v) const {
    std::vector<Half> hs;
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        if (edges[i].a == v) hs.push_back({i, false});
        if (edges[i].b == v) hs.push_back({i, true});
    }
    return hs;
}

int Graph::vertex_index(std::string_view id) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == id) return static_cast<int>(i);
    return -1;
}

int Graph::edge_index(std::string_view id) const {
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].id == id) return static_cast<int>(i);
    return -1;
}

int Graph::require_vertex(std::string_view id) const {
    int v = vertex_index(id);
    if (v < 0) throw Error(ErrorKind::MalformedInput, "unknown vertex " + std::string(id));
    return v;
}

int Graph::require_edge(std::string_view id) const {
    int e = edge_index(id);
    if (e < 0) throw Error(ErrorKind::MalformedInput, "unknown edge " + std::string(id));
    return e;
}

std::string Graph::half_name(Half h) const {
    return edges[h.edge].id + (h.rev ? "-" : "+");
}

Half Graph::parse_half(std::string_view name) const {
    if (name.size() < 2 || (name.back() != '+' && name.back() != '-'))
        throw Error(ErrorKind::MalformedInput, "oriented edge needs a +/- suffix: " + std::string(name));
    int e = require_edge(name.substr(0, name.size() - 1));
    return {e, name.back() == '-'};
}

std::string GraphKind::name() const {
    switch (tag) {
    case Tag::SolvableBS: return "SolvableBS";
    case Tag::General: return "General";
    case Tag::Elementary: break;
    }
    switch (shape) {
    case ElementaryShape::Point: return "Point";
    case ElementaryShape::Loop11: return "Loop11";
    case ElementaryShape::Loop1m1: return "Loop1m1";
    case ElementaryShape::Seg22: return "Seg22";
    }
    return "";
}

std::string GraphKind::elementary_out() const {
    switch (shape) {
    case ElementaryShape::Point: return "Z/2";
    case ElementaryShape::Loop11: return "GL(2,Z)";
    case ElementaryShape::Loop1m1:
    case ElementaryShape::Seg22: return "Z/2xZ/2";
    }
    return "";
}

namespace {

Label json_label(const nlohmann::json &j, const char *what) {
    if (j.is_number_integer() && !j.is_number_unsigned()) {
        auto v = j.get<std::int64_t>();
        if (v == std::numeric_limits<Label>::min())
            throw Error(ErrorKind::MalformedInput, std::string(what) + " out of range");
        return v;
    }
    if (j.is_number_unsigned()) {
        auto v = j.get<std::uint64_t>();
        if (v > static_cast<std::uint64_t>(std::numeric_limits<Label>::max()))
            throw Error(ErrorKind::MalformedInput, std::string(what) + " out of range");
        return static_cast<Label>(v);
    }
    throw Error(ErrorKind::MalformedInput, std::string(what) + " must be an integer");
}

} // namespace

Graph graph_from_json(const nlohmann::json &doc) {
    if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges"))
        throw Error(ErrorKind::MalformedInput, "expected an object with vertices and edges");
    const auto &vs = doc.at("vertices");
    const auto &es = doc.at("edges");
    if (!vs.is_array() || !es.is_array())
        throw Error(ErrorKind::MalformedInput, "vertices and edges must be arrays");

    Graph g;
    std::set<std::string> seen;
    for (const auto &v : vs) {
        if (!v.is_string()) throw Error(ErrorKind::MalformedInput, "vertex ids must be strings");
        auto id = v.get<std::string>();
        if (!seen.insert(id).second) throw Error(ErrorKind::MalformedInput, "duplicate vertex " + id);
        g.vertices.push_back(id);
    }
    seen.clear();
    for (const auto &e : es) {
        if (!e.is_object()) throw Error(ErrorKind::MalformedInput, "edges must be objects");
        for (const char *key : {"id", "a", "b", "la", "lb"})
            if (!e.contains(key)) throw Error(ErrorKind::MalformedInput, std::string("edge missing ") + key);
        if (!e["id"].is_string() || !e["a"].is_string() || !e["b"].is_string())
            throw Error(ErrorKind::MalformedInput, "edge id and ends must be strings");
        Edge ed;
        ed.id = e["id"].get<std::string>();
        if (!seen.insert(ed.id).second) throw Error(ErrorKind::MalformedInput, "duplicate edge " + ed.id);
        ed.a = g.require_vertex(e["a"].get<std::string>());
        ed.b = g.require_vertex(e["b"].get<std::string>());
        ed.la = json_label(e["la"], "la");
        ed.lb = json_label(e["lb"], "lb");
        g.edges.push_back(ed);
    }
    validate(g);
    return g;
}

Graph parse_graph(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw Error(ErrorKind::MalformedInput, e.what());
    }
    return graph_from_json(doc);
}

nlohmann::json graph_to_json(const Graph &g) {
    nlohmann::json doc;
    doc["vertices"] = g.vertices;
    doc["edges"] = nlohmann::json::array();
    for (const auto &e : g.edges) {
        doc["edges"].push_back({{"id", e.id}, {"a", g.vertices[e.a]}, {"b", g.vertices[e.b]},
                                {"la", e.la}, {"lb", e.lb}});
    }
    return doc;
}

std::string serialize(const Graph &g) { return graph_to_json(g).dump(); }

std::string to_dot(const Graph &g) {
    std::ostringstream os;
    os << "graph gbs {\n";
    for (const auto &v : g.vertices) os << "  \"" << v << "\";\n";
    for (const auto &e : g.edges) {
        os << "  \"" << g.vertices[e.a] << "\" -- \"" << g.vertices[e.b] << "\" [label=\"" << e.id
           << "\", taillabel=\"" << e.la << "\", headlabel=\"" << e.lb << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

bool is_connected(const Graph &g) {
    if (g.vertices.empty()) return false;
    std::vector<bool> seen(g.vertices.size(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto &e : g.edges) {
            int w = -1;
            if (e.a == v) w = e.b;
            else if (e.b == v) w = e.a;
            if (w >= 0 && !seen[w]) {
                seen[w] = true;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == g.vertices.size();
}

void validate(const Graph &g) {
    if (g.vertices.empty()) throw Error(ErrorKind::EmptyGraph, "graph has no vertices");
    int nv = static_cast<int>(g.vertices.size());
    for (const auto &e : g.edges) {
        if (e.a < 0 || e.a >= nv || e.b < 0 || e.b >= nv)
            throw Error(ErrorKind::MalformedInput, "edge " + e.id + " has a dangling end");
        if (e.la == 0 || e.lb == 0) throw Error(ErrorKind::ZeroLabel, "edge " + e.id + " has a zero label");
    }
    if (!is_connected(g)) throw Error(ErrorKind::Disconnected, "graph is not connected");
}

bool is_minimal(const Graph &g) {
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
        auto hs = g.out(v);
        if (hs.size() == 1 && std::llabs(g.label(hs[0])) < 2) return false;
    }
    return true;
}

void require_minimal(const Graph &g) {
    if (!is_minimal(g)) throw Error(ErrorKind::NotMinimal, "graph is not minimal");
}

bool is_collapsible(const Graph &g, int edge) {
    const Edge &e = g.edges[edge];
    return !e.is_loop() && (std::llabs(e.la) == 1 || std::llabs(e.lb) == 1);
}

bool is_reduced(const Graph &g) {
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
        if (is_collapsible(g, i)) return false;
    return true;
}

SpanningTree spanning_tree(const Graph &g) {
    SpanningTree t;
    std::size_t nv = g.vertices.size();
    t.parent.assign(nv, std::nullopt);
    t.in_tree.assign(g.edges.size(), false);
    std::vector<bool> seen(nv, false);
    std::deque<int> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        t.order.push_back(v);
        for (Half h : g.out(v)) {
            int w = g.terminus(h);
            if (seen[w]) continue;
            seen[w] = true;
            t.parent[w] = h;
            t.in_tree[h.edge] = true;
            queue.push_back(w);
        }
    }
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
        if (!t.in_tree[i]) t.non_tree.push_back(i);
    return t;
}

std::optional<Label> ascending_q(const Graph &g, int edge) {
    const Edge &e = g.edges[edge];
    if (!e.is_loop()) return std::nullopt;
    if (std::llabs(e.la) == 1) return e.la * e.lb;
    if (std::llabs(e.lb) == 1) return e.la * e.lb;
    return std::nullopt;
}

Graph apply_sign_change(const Graph &g, const SignChange &change) {
    Graph r = g;
    if (change.kind == SignChange::Kind::Edge) {
        r.edges.at(change.target).la = -r.edges[change.target].la;
        r.edges[change.target].lb = -r.edges[change.target].lb;
        return r;
    }
    if (change.target < 0 || change.target >= static_cast<int>(g.vertices.size()))
        throw Error(ErrorKind::MalformedInput, "vertex flip target out of range");
    for (Half h : g.out(change.target)) r.set_label(h, -g.label(h));
    return r;
}

Graph normalize_signs(const Graph &g) {
    Graph r = g;
    SpanningTree t = spanning_tree(g);
    for (int v : t.order) {
        if (!t.parent[v]) continue;
        Half p = *t.parent[v];
        if ((r.label(p) < 0) != (r.far_label(p) < 0)) r = apply_sign_change(r, {SignChange::Kind::Vertex, v});
    }
    for (auto &e : r.edges) {
        bool flip;
        if ((e.la < 0) == (e.lb < 0)) {
            flip = e.la < 0;
        } else {
            bool a_small = std::llabs(e.la) <= std::llabs(e.lb);
            flip = a_small ? e.la < 0 : e.lb < 0;
        }
        if (flip) {
            e.la = -e.la;
            e.lb = -e.lb;
        }
    }
    return r;
}

GraphKind kind_of_reduced(const Graph &g) {
    GraphKind k;
    if (g.vertices.size() == 1 && g.edges.empty()) {
        k.tag = GraphKind::Tag::Elementary;
        k.shape = ElementaryShape::Point;
        return k;
    }
    if (g.vertices.size() == 1 && g.edges.size() == 1) {
        const Edge &e = g.edges[0];
        if (std::llabs(e.la) == 1 && std::llabs(e.lb) == 1) {
            k.tag = GraphKind::Tag::Elementary;
            k.shape = e.la * e.lb > 0 ? ElementaryShape::Loop11 : ElementaryShape::Loop1m1;
            return k;
        }
        if (auto q = ascending_q(g, 0)) {
            k.tag = GraphKind::Tag::SolvableBS;
            k.n = *q;
            return k;
        }
    }
    if (g.vertices.size() == 2 && g.edges.size() == 1 && std::llabs(g.edges[0].la) == 2 &&
        std::llabs(g.edges[0].lb) == 2) {
        k.tag = GraphKind::Tag::Elementary;
        k.shape = ElementaryShape::Seg22;
        return k;
    }
    k.tag = GraphKind::Tag::General;
    return k;
}

GraphKind graph_kind(const Graph &g) {
    require_minimal(g);
    return kind_of_reduced(reduce(g));
}

namespace {

using Signature = std::vector<std::tuple<Label, Label, bool>>;

Signature vertex_signature(const Graph &g, int v) {
    Signature s;
    for (Half h : g.out(v))
        s.emplace_back(std::llabs(g.label(h)), std::llabs(g.far_label(h)), g.edges[h.edge].is_loop());
    std::sort(s.begin(), s.end());
    return s;
}

// Oriented absolute label pairs of the edges running from v to u.
std::vector<std::pair<Label, Label>> link_profile(const Graph &g, int v, int u) {
    std::vector<std::pair<Label, Label>> p;
    for (Half h : g.out(v)) {
        if (g.terminus(h) != u) continue;
        if (u == v && h.rev) continue;
        Label x = std::llabs(g.label(h)), y = std::llabs(g.far_label(h));
        if (u == v && x > y) std::swap(x, y);
        p.emplace_back(x, y);
    }
    std::sort(p.begin(), p.end());
    return p;
}

struct IsoSearch {
    const Graph &g1;
    const Graph &g2;
    std::vector<int> order;
    std::vector<Signature> sig1, sig2;
    std::vector<int> vmap;
    std::vector<bool> used;
    std::vector<Half> emap;
    std::vector<bool> eused;

    bool signs_compatible() const {
        std::size_t nv = g1.vertices.size();
        std::vector<std::vector<std::pair<int, int>>> adj(nv);
        for (std::size_t i = 0; i < g1.edges.size(); ++i) {
            const Edge &e = g1.edges[i];
            Half h = emap[i];
            int ra = (e.la < 0) != (g2.label(h) < 0);
            int rb = (e.lb < 0) != (g2.far_label(h) < 0);
            if (e.is_loop()) {
                if (ra != rb) return false;
                continue;
            }
            adj[e.a].push_back({e.b, ra ^ rb});
            adj[e.b].push_back({e.a, ra ^ rb});
        }
        std::vector<int> colour(nv, -1);
        colour[0] = 0;
        std::vector<int> stack{0};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [w, parity] : adj[v]) {
                int want = colour[v] ^ parity;
                if (colour[w] < 0) {
                    colour[w] = want;
                    stack.push_back(w);
                } else if (colour[w] != want) {
                    return false;
                }
            }
        }
        return true;
    }

    bool match_edges(std::size_t i) {
        if (i == g1.edges.size()) return signs_compatible();
        const Edge &e = g1.edges[i];
        Label a1 = std::llabs(e.la), b1 = std::llabs(e.lb);
        for (std::size_t j = 0; j < g2.edges.size(); ++j) {
            if (eused[j]) continue;
            for (bool rev : {false, true}) {
                Half h{static_cast<int>(j), rev};
                if (g2.origin(h) != vmap[e.a] || g2.terminus(h) != vmap[e.b]) continue;
                if (std::llabs(g2.label(h)) != a1 || std::llabs(g2.far_label(h)) != b1) continue;
                eused[j] = true;
                emap[i] = h;
                if (match_edges(i + 1)) return true;
                eused[j] = false;
            }
        }
        return false;
    }

    bool assign(std::size_t k) {
        if (k == order.size()) return match_edges(0);
        int v = order[k];
        for (int w = 0; w < static_cast<int>(g2.vertices.size()); ++w) {
            if (used[w] || sig1[v] != sig2[w]) continue;
            vmap[v] = w;
            bool ok = link_profile(g1, v, v) == link_profile(g2, w, w);
            for (std::size_t j = 0; ok && j < k; ++j) {
                int u = order[j];
                ok = link_profile(g1, v, u) == link_profile(g2, w, vmap[u]);
            }
            if (!ok) continue;
            used[w] = true;
            if (assign(k + 1)) return true;
            used[w] = false;
        }
        vmap[v] = -1;
        return false;
    }
};

} // namespace

std::optional<LabelledIso> labelled_isomorphism(const Graph &g1, const Graph &g2, std::size_t max_edges) {
    if (g1.edges.size() > max_edges || g2.edges.size() > max_edges)
        throw Error(ErrorKind::SizeLimitExceeded, "labelled isomorphism edge bound exceeded");
    if (g1.vertices.size() != g2.vertices.size() || g1.edges.size() != g2.edges.size()) return std::nullopt;
    if (shape_key(g1) != shape_key(g2)) return std::nullopt;

    IsoSearch s{g1, g2, spanning_tree(g1).order, {}, {}, {}, {}, {}, {}};
    for (int v = 0; v < static_cast<int>(g1.vertices.size()); ++v) s.sig1.push_back(vertex_signature(g1, v));
    for (int v = 0; v < static_cast<int>(g2.vertices.size()); ++v) s.sig2.push_back(vertex_signature(g2, v));
    s.vmap.assign(g1.vertices.size(), -1);
    s.used.assign(g2.vertices.size(), false);
    s.emap.assign(g1.edges.size(), Half{});
    s.eused.assign(g2.edges.size(), false);
    if (!s.assign(0)) return std::nullopt;
    return LabelledIso{s.vmap, s.emap};
}

bool graphs_isomorphic_as_labelled(const Graph &g1, const Graph &g2, std::size_t max_edges) {
    return labelled_isomorphism(g1, g2, max_edges).has_value();
}

std::string shape_key(const Graph &g) {
    std::vector<Signature> sigs;
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) sigs.push_back(vertex_signature(g, v));
    std::sort(sigs.begin(), sigs.end());
    std::vector<std::tuple<Label, Label, int>> es;
    for (const auto &e : g.edges) {
        Label x = std::llabs(e.la), y = std::llabs(e.lb);
        if (x > y) std::swap(x, y);
        int loop_sign = e.is_loop() ? ((e.la < 0) == (e.lb < 0) ? 1 : -1) : 0;
        es.emplace_back(x, y, loop_sign);
    }
    std::sort(es.begin(), es.end());
    std::ostringstream os;
    os << g.vertices.size() << '/' << g.edges.size() << '|';
    for (const auto &s : sigs) {
        for (const auto &[x, y, loop] : s) os << x << ',' << y << (loop ? 'L' : 'S') << ';';
        os << '|';
    }
    for (const auto &[x, y, sgn] : es) os << x << ',' << y << ',' << sgn << ';';
    return os.str();
}

int GraphSet::find(const Graph &g) const {
    auto it = buckets_.find(shape_key(g));
    if (it == buckets_.end()) return -1;
    for (int i : it->second)
        if (graphs_isomorphic_as_labelled(graphs_[i], g)) return i;
    return -1;
}

std::pair<int, bool> GraphSet::insert(const Graph &g) {
    std::string key = shape_key(g);
    auto &bucket = buckets_[key];
    for (int i : bucket)
        if (graphs_isomorphic_as_labelled(graphs_[i], g)) return {i, false};
    int idx = static_cast<int>(graphs_.size());
    graphs_.push_back(g);
    bucket.push_back(idx);
    return {idx, true};
}

namespace {

template <typename Used>
std::string fresh_id(char prefix, Used used) {
    for (int n = 1;; ++n) {
        std::string id = prefix + std::to_string(n);
        if (!used(id)) return id;
    }
}

} // namespace

std::string fresh_vertex_id(const Graph &g) {
    return fresh_id('v', [&](const std::string &id) { return g.vertex_index(id) >= 0; });
}

std::string fresh_edge_id(const Graph &g) {
    return fresh_id('e', [&](const std::string &id) { return g.edge_index(id) >= 0; });
}

} // namespace gbs

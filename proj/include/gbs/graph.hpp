#pragma once

#include <compare>
#include <map>
#include <utility>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gbs/error.hpp"

namespace gbs {

using Label = std::int64_t;

struct Edge {
    std::string id;
    int a = 0;
    int b = 0;
    Label la = 1;  // label at end a
    Label lb = 1;  // label at end b

    bool is_loop() const { return a == b; }
    bool operator==(const Edge &) const = default;
};

// An oriented edge. The forward orientation has origin at end a.
struct Half {
    int edge = 0;
    bool rev = false;

    Half flip() const { return {edge, !rev}; }
    bool operator==(const Half &) const = default;
    auto operator<=>(const Half &) const = default;
};

struct Graph {
    std::vector<std::string> vertices;
    std::vector<Edge> edges;

    int origin(Half h) const { return h.rev ? edges[h.edge].b : edges[h.edge].a; }
    int terminus(Half h) const { return h.rev ? edges[h.edge].a : edges[h.edge].b; }
    Label label(Half h) const { return h.rev ? edges[h.edge].lb : edges[h.edge].la; }
    Label far_label(Half h) const { return h.rev ? edges[h.edge].la : edges[h.edge].lb; }
    void set_label(Half h, Label l) { (h.rev ? edges[h.edge].lb : edges[h.edge].la) = l; }
    void set_origin(Half h, int v) { (h.rev ? edges[h.edge].b : edges[h.edge].a) = v; }

    // Oriented edges with origin v, in edge order; a loop contributes both.
    std::vector<Half> out(int v) const;
    std::size_t degree(int v) const { return out(v).size(); }

    int vertex_index(std::string_view id) const;
    int edge_index(std::string_view id) const;
    int require_vertex(std::string_view id) const;
    int require_edge(std::string_view id) const;

    std::string half_name(Half h) const;
    Half parse_half(std::string_view name) const;

    bool operator==(const Graph &) const = default;
};

struct SignChange {
    enum class Kind { Vertex, Edge };
    Kind kind = Kind::Vertex;
    int target = 0;
};

enum class ElementaryShape { Point, Loop11, Loop1m1, Seg22 };

struct GraphKind {
    enum class Tag { Elementary, SolvableBS, General };
    Tag tag = Tag::General;
    ElementaryShape shape = ElementaryShape::Point;
    Label n = 0;  // BS(1,n) parameter for the solvable tag

    std::string name() const;
    std::string elementary_out() const;
};

struct SpanningTree {
    std::vector<int> order;                 // BFS order, root first
    std::vector<std::optional<Half>> parent; // half from parent to vertex
    std::vector<bool> in_tree;               // per edge
    std::vector<int> non_tree;               // edges outside the tree, in edge order
};

struct LabelledIso {
    std::vector<int> vertex_map;   // first graph vertex -> second graph vertex
    std::vector<Half> edge_map;    // forward half of first graph edge -> half in second
};

Graph parse_graph(std::string_view text);
Graph graph_from_json(const nlohmann::json &doc);
nlohmann::json graph_to_json(const Graph &g);
std::string serialize(const Graph &g);
std::string to_dot(const Graph &g);

void validate(const Graph &g);
bool is_connected(const Graph &g);
bool is_minimal(const Graph &g);
bool is_collapsible(const Graph &g, int edge);
bool is_reduced(const Graph &g);
void require_minimal(const Graph &g);

SpanningTree spanning_tree(const Graph &g);

// q for a loop carrying a label of absolute value 1, after sign normalization
// to the form (1, q).
std::optional<Label> ascending_q(const Graph &g, int edge);

Graph apply_sign_change(const Graph &g, const SignChange &change);
Graph normalize_signs(const Graph &g);

GraphKind graph_kind(const Graph &g);
GraphKind kind_of_reduced(const Graph &g);

std::optional<LabelledIso> labelled_isomorphism(const Graph &g1, const Graph &g2,
                                                std::size_t max_edges = 16);
bool graphs_isomorphic_as_labelled(const Graph &g1, const Graph &g2,
                                   std::size_t max_edges = 16);

// Hash key that is constant on labelled-isomorphism classes.
std::string shape_key(const Graph &g);

// Set of graphs up to labelled isomorphism.
class GraphSet {
public:
    // Index of a stored graph isomorphic to g, or -1.
    int find(const Graph &g) const;
    // Inserts g unless present; returns its index and whether it was new.
    std::pair<int, bool> insert(const Graph &g);
    const Graph &at(int i) const { return graphs_[i]; }
    std::size_t size() const { return graphs_.size(); }
    const std::vector<Graph> &graphs() const { return graphs_; }

private:
    std::vector<Graph> graphs_;
    std::map<std::string, std::vector<int>> buckets_;
};

std::string fresh_vertex_id(const Graph &g);
std::string fresh_edge_id(const Graph &g);

Label checked_mul(Label x, Label y);

} // namespace gbs

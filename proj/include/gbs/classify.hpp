#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gbs/graph.hpp"

namespace gbs {

enum class SlidShape { Seg22, AscendingLoop, Other };

struct SlidEdge {
    int edge = 0;
    std::vector<Half> witnesses;  // oriented edges that can slide across it
    SlidShape shape = SlidShape::Other;
    Label q = 0;                  // for ascending loops
};

struct ConditionFailure {
    int condition = 0;  // 1..6
    std::string location;
};

enum class VertexType { PlainCyclic, KleinFromSeg22, SolvableVertex, TorusVertex, KleinFromLoop };

struct CollapsedVertex {
    std::string id;
    VertexType type = VertexType::PlainCyclic;
    Label q = 0;               // loop parameter for loop-derived types
    std::vector<int> members;  // original vertices; for a (2,2)-segment, side 0 then side 1
    int collapsed_edge = -1;
};

struct CollapsedEnd {
    int vertex = 0;        // collapsed vertex
    Label label = 1;
    int side = -1;         // 0 or 1 at a Klein vertex from a segment
    int origin = 0;        // original vertex
};

struct CollapsedEdge {
    int edge = 0;  // original edge index
    CollapsedEnd a, b;
};

struct CollapsedGraph {
    std::vector<CollapsedVertex> vertices;
    std::vector<CollapsedEdge> edges;
    std::vector<int> vertex_of;  // original vertex -> collapsed vertex
};

struct Verdict {
    enum class Kind { Elementary, SolvableBS, ContainsF2, VirtuallyNilpotent };
    Kind kind = Kind::VirtuallyNilpotent;
    std::string elementary_shape;
    std::string elementary_out;
    Label n = 0;
    int out_rank_hint = 0;
    int violated_condition = 0;
    std::string location;
    int k = 0;
    bool virtually_abelian = false;
    bool finitely_generated = false;
    bool finite = false;
    bool rigid = false;

    std::string kind_name() const;
    bool operator==(const Verdict &) const = default;
};

std::vector<SlidEdge> slid_edges(const Graph &g);
std::optional<ConditionFailure> check_conditions(const Graph &g);
CollapsedGraph collapse_slid(const Graph &g);

bool has_divisibility_relation(const Graph &g);
bool rigidity_condition(const Graph &g);
bool finite_out_condition(const Graph &g);
bool has_strict_ascending_loop(const Graph &g);
bool virtually_abelian_condition(const Graph &g);

Verdict classify(const Graph &g);

nlohmann::json verdict_to_json(const Verdict &v);
nlohmann::json collapsed_to_json(const Graph &g, const CollapsedGraph &c);
const char *vertex_type_name(VertexType t);

} // namespace gbs

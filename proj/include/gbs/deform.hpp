#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gbs/graph.hpp"

namespace gbs {

struct ExploreBounds {
    std::size_t max_edges = 10;
    Label max_label = 64;
    std::size_t max_states = 20000;
};

struct ExplorationReport {
    Graph seed;
    ExploreBounds bounds;
    std::vector<Graph> reduced_found;  // sorted, one per labelled isomorphism class
    bool exhausted = false;
    std::size_t states_visited = 0;
};

// Stops early once stop_after reduced classes have been seen (0 = never).
ExplorationReport explore(const Graph &g, const ExploreBounds &bounds, std::size_t stop_after = 0);

struct RigidityProbe {
    bool consistent_with_rigid = true;
    std::optional<std::pair<Graph, Graph>> witness;
    bool syntactic_rigid = false;
    bool exhausted = false;
    std::size_t states_visited = 0;
};

RigidityProbe rigidity_probe(const Graph &g, const ExploreBounds &bounds);

nlohmann::json exploration_to_json(const ExplorationReport &r);
nlohmann::json rigidity_to_json(const RigidityProbe &r);

} // namespace gbs

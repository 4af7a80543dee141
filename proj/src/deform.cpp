#include "gbs/deform.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>

#include "gbs/classify.hpp"
#include "gbs/moves.hpp"

namespace gbs {

namespace {

bool within(const Graph &g, const ExploreBounds &b) {
    if (g.edges.size() > b.max_edges) return false;
    for (const auto &e : g.edges)
        if (std::llabs(e.la) > b.max_label || std::llabs(e.lb) > b.max_label) return false;
    return true;
}

std::vector<Graph> deformation_neighbours(const Graph &g, const ExploreBounds &b) {
    std::vector<Graph> out;
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
        if (!is_collapsible(g, i)) continue;
        try {
            out.push_back(collapse(g, i));
        } catch (const Error &) {
        }
    }
    if (g.edges.size() + 1 > b.max_edges) return out;
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
        auto hs = g.out(v);
        for (Label d = 1; d <= b.max_label; ++d) {
            std::vector<Half> divisible;
            for (Half h : hs)
                if (g.label(h) % d == 0) divisible.push_back(h);
            if (divisible.empty()) continue;
            std::size_t full = (std::size_t{1} << divisible.size()) - 1;
            for (std::size_t mask = 1; mask <= full; ++mask) {
                if (d == 1 && mask == full) continue;
                std::vector<Half> moved;
                for (std::size_t i = 0; i < divisible.size(); ++i)
                    if (mask >> i & 1) moved.push_back(divisible[i]);
                out.push_back(expand(g, v, d, moved));
            }
        }
    }
    return out;
}

std::string sort_key(const Graph &g) {
    return std::to_string(g.edges.size()) + ":" + shape_key(g) + ":" + serialize(normalize_signs(g));
}

} // namespace

ExplorationReport explore(const Graph &g, const ExploreBounds &bounds, std::size_t stop_after) {
    require_minimal(g);
    ExplorationReport rep;
    rep.seed = g;
    rep.bounds = bounds;
    GraphSet visited, found;
    std::deque<int> queue;
    visited.insert(g);
    queue.push_back(0);
    found.insert(reduce(g));
    bool cut = false;
    while (!queue.empty()) {
        if (stop_after && found.size() >= stop_after) {
            cut = true;
            break;
        }
        Graph cur = visited.at(queue.front());
        queue.pop_front();
        for (const Graph &n : deformation_neighbours(cur, bounds)) {
            if (!within(n, bounds)) continue;
            if (visited.size() >= bounds.max_states && visited.find(n) < 0) {
                cut = true;
                continue;
            }
            auto [idx, fresh] = visited.insert(n);
            if (!fresh) continue;
            queue.push_back(idx);
            try {
                Graph r = reduce(n);
                if (within(r, bounds)) found.insert(r);
            } catch (const Error &) {
            }
        }
        if (cut) break;
    }
    rep.exhausted = !cut && queue.empty();
    rep.states_visited = visited.size();
    rep.reduced_found = found.graphs();
    std::sort(rep.reduced_found.begin(), rep.reduced_found.end(),
              [](const Graph &x, const Graph &y) { return sort_key(x) < sort_key(y); });
    return rep;
}

RigidityProbe rigidity_probe(const Graph &g, const ExploreBounds &bounds) {
    RigidityProbe p;
    Graph r = reduce(g);
    p.syntactic_rigid = rigidity_condition(r);
    ExplorationReport rep = explore(g, bounds, 2);
    p.exhausted = rep.exhausted;
    p.states_visited = rep.states_visited;
    if (rep.reduced_found.size() >= 2) {
        p.consistent_with_rigid = false;
        p.witness = {rep.reduced_found[0], rep.reduced_found[1]};
    }
    return p;
}

nlohmann::json exploration_to_json(const ExplorationReport &r) {
    nlohmann::json found = nlohmann::json::array();
    for (const auto &g : r.reduced_found) found.push_back(graph_to_json(g));
    return {{"seed", graph_to_json(r.seed)},
            {"bounds",
             {{"max_edges", r.bounds.max_edges}, {"max_label", r.bounds.max_label}, {"max_states", r.bounds.max_states}}},
            {"reduced_found", found},
            {"exhausted", r.exhausted},
            {"states_visited", r.states_visited}};
}

nlohmann::json rigidity_to_json(const RigidityProbe &r) {
    nlohmann::json j{{"verdict", r.consistent_with_rigid ? "ConsistentWithRigid" : "NotRigid"},
                     {"syntactic_rigid", r.syntactic_rigid},
                     {"exhausted", r.exhausted},
                     {"states_visited", r.states_visited}};
    if (r.witness) j["witness"] = {graph_to_json(r.witness->first), graph_to_json(r.witness->second)};
    return j;
}

} // namespace gbs

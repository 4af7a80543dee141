#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gbs/graph.hpp"

namespace gbs {

enum class Direction { Multiply, Divide };

struct CollapseMove {
    std::string edge;
};

struct ExpansionMove {
    std::string vertex;
    Label divisor = 2;
    std::vector<std::string> moved;  // oriented edge names with origin at vertex
};

struct SlideMove {
    std::string moving;
    std::string across;
};

struct InductionMove {
    std::string loop;
    Label factor = 2;
    Direction direction = Direction::Multiply;
};

struct SignMove {
    SignChange::Kind kind = SignChange::Kind::Vertex;
    std::string target;
};

using Move = std::variant<CollapseMove, ExpansionMove, SlideMove, InductionMove, SignMove>;

Graph collapse(const Graph &g, int edge);
Graph expand(const Graph &g, int vertex, Label divisor, const std::vector<Half> &moved);
Graph reduce(const Graph &g);
Graph slide(const Graph &g, Half moving, Half across);
Graph induction_move(const Graph &g, int loop, Label factor, Direction dir);
Graph slide_around_loop(const Graph &g, Half moving, int loop, Direction dir);

Graph apply_move(const Graph &g, const Move &m);
Move move_from_json(const nlohmann::json &j);
nlohmann::json move_to_json(const Move &m);

} // namespace gbs

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gbs/graph.hpp"

namespace gbs::fixtures {

Graph bs(Label m, Label n);
Graph fig2();
Graph fig3();
Graph fig4(Label n);
Graph one_p(int p);
Graph seg(Label p, Label q);
Graph f2xz();

// The named corpus written by `gbs examples`.
std::vector<std::pair<std::string, Graph>> corpus();

} // namespace gbs::fixtures

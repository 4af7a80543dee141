#include "gbs/fixtures.hpp"

namespace gbs::fixtures {

namespace {

Graph make(std::vector<std::string> vertices, std::vector<Edge> edges) {
    Graph g{std::move(vertices), std::move(edges)};
    validate(g);
    return g;
}

} // namespace

Graph bs(Label m, Label n) { return make({"v"}, {{"e1", 0, 0, m, n}}); }

Graph fig2() { return make({"v"}, {{"e1", 0, 0, 1, 1}, {"e2", 0, 0, 2, 2}}); }

Graph fig3() { return make({"a", "b", "c"}, {{"e1", 0, 1, 5, 4}, {"e2", 1, 2, 2, 3}}); }

Graph fig4(Label n) { return make({"u", "w"}, {{"e1", 0, 0, 1, 2}, {"e2", 0, 1, n, 2}}); }

Graph one_p(int p) { return make({"b", "a"}, {{"e1", 0, 0, 1, 2}, {"e2", 0, 1, Label{1} << p, 2}}); }

Graph seg(Label p, Label q) { return make({"u", "w"}, {{"e1", 0, 1, p, q}}); }

Graph f2xz() { return make({"v"}, {{"e1", 0, 0, 1, 1}, {"e2", 0, 0, 1, 1}}); }

std::vector<std::pair<std::string, Graph>> corpus() {
    return {{"bs_1_2", bs(1, 2)},   {"bs_2_2", bs(2, 2)},   {"bs_2_3", bs(2, 3)},    {"bs_2_4", bs(2, 4)},
            {"bs_2_-2", bs(2, -2)}, {"bs_3_3", bs(3, 3)},   {"bs_3_6", bs(3, 6)},    {"fig2", fig2()},
            {"fig3", fig3()},       {"fig4_3", fig4(3)},    {"fig4_5", fig4(5)},     {"1p_1", one_p(1)},
            {"1p_2", one_p(2)},     {"1p_3", one_p(3)},     {"seg_2_3", seg(2, 3)},  {"seg_3_3", seg(3, 3)},
            {"seg_5_7", seg(5, 7)}, {"f2xz", f2xz()}};
}

} // namespace gbs::fixtures

#include <doctest.h>

#include "generators.hpp"
#include "gbs/classify.hpp"
#include "gbs/fixtures.hpp"
#include "gbs/invariants.hpp"
#include "gbs/twist.hpp"

using namespace gbs;
namespace fx = gbs::fixtures;

namespace {

// Verdict data that must not depend on the chosen reduced graph.
std::string invariant_part(const Verdict &v) {
    std::string s = v.kind_name();
    switch (v.kind) {
    case Verdict::Kind::Elementary: return s + ":" + v.elementary_shape;
    case Verdict::Kind::SolvableBS: return s + ":" + std::to_string(v.n);
    case Verdict::Kind::ContainsF2: return s;
    case Verdict::Kind::VirtuallyNilpotent:
        return s + ":" + std::to_string(v.k) + std::to_string(v.virtually_abelian) +
               std::to_string(v.finitely_generated) + std::to_string(v.finite) + std::to_string(v.rigid);
    }
    return s;
}

} // namespace

TEST_SUITE("classification") {

TEST_CASE("slid edges") {
    auto f2 = slid_edges(fx::fig2());
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].edge == 0);
    CHECK(f2[0].shape == SlidShape::AscendingLoop);
    CHECK(f2[0].q == 1);

    auto f3 = slid_edges(fx::fig3());
    REQUIRE(f3.size() == 1);
    CHECK(f3[0].edge == 1);
    CHECK(f3[0].shape == SlidShape::Other);
    CHECK(f3[0].witnesses == std::vector<Half>{Half{0, true}});

    CHECK(slid_edges(fx::bs(2, 3)).empty());
    CHECK_THROWS_AS(slid_edges(Graph{{"u", "w", "x"}, {{"e1", 0, 1, 1, 2}, {"e2", 1, 2, 3, 2}}}), Error);
}

TEST_CASE("condition checks") {
    auto f3 = check_conditions(fx::fig3());
    REQUIRE(f3);
    CHECK(f3->condition == 1);
    auto p2 = check_conditions(fx::one_p(2));
    REQUIRE(p2);
    CHECK(p2->condition == 4);
    CHECK_FALSE(check_conditions(fx::fig4(3)));
    // a (2,4)-loop is pseudo-ascending without being a (p,p) or (1,q) loop
    auto c3 = check_conditions(Graph{{"v", "w"}, {{"e1", 0, 0, 2, 4}, {"e2", 0, 1, 3, 5}}});
    REQUIRE(c3);
    CHECK(c3->condition == 3);
    // labels 15 and 12 beside a (1,2)-loop: 12 divides 15 * 2^2
    auto c5 = check_conditions(Graph{{"v", "w", "x"}, {{"e1", 0, 0, 1, 2}, {"e2", 0, 1, 15, 7}, {"e3", 0, 2, 12, 11}}});
    REQUIRE(c5);
    CHECK(c5->condition == 5);
    // 3 on one side of a (2,2)-segment divides the even label 6 on the other
    auto c6 = check_conditions(Graph{{"u", "w", "x", "y"},
                                     {{"e1", 0, 1, 2, 2}, {"e2", 0, 2, 3, 5}, {"e3", 1, 3, 6, 7}}});
    REQUIRE(c6);
    CHECK(c6->condition == 6);
    CHECK_FALSE(check_conditions(Graph{{"u", "w", "x", "y"},
                                       {{"e1", 0, 1, 2, 2}, {"e2", 0, 2, 3, 5}, {"e3", 1, 3, 10, 7}}}));
}

TEST_CASE("collapsed graphs") {
    CollapsedGraph c2 = collapse_slid(fx::fig2());
    REQUIRE(c2.vertices.size() == 1);
    CHECK(c2.vertices[0].type == VertexType::TorusVertex);
    REQUIRE(c2.edges.size() == 1);
    CHECK(c2.edges[0].edge == 1);

    CollapsedGraph c4 = collapse_slid(fx::fig4(3));
    REQUIRE(c4.vertices.size() == 2);
    CHECK(c4.vertices[0].type == VertexType::SolvableVertex);
    CHECK(c4.vertices[0].q == 2);
    CHECK(c4.vertices[1].type == VertexType::PlainCyclic);
    REQUIRE(c4.edges.size() == 1);
    CHECK(c4.edges[0].a.label == 3);

    CollapsedGraph c23 = collapse_slid(fx::bs(2, 3));
    CHECK(c23.vertices.size() == 1);
    CHECK(c23.vertices[0].type == VertexType::PlainCyclic);
    CHECK(c23.edges.size() == 1);

    CHECK_THROWS_AS(collapse_slid(fx::fig3()), Error);
}

TEST_CASE("classification anchors") {
    CHECK(classify(fx::fig3()).kind == Verdict::Kind::ContainsF2);
    for (int p = 1; p <= 4; ++p) CHECK(classify(fx::one_p(p)).kind == Verdict::Kind::ContainsF2);

    Verdict h = classify(fx::fig2());
    CHECK(h.kind == Verdict::Kind::VirtuallyNilpotent);
    CHECK(h.k == 2);
    CHECK_FALSE(h.virtually_abelian);
    CHECK(h.finitely_generated);
    CHECK_FALSE(h.finite);
    CHECK_FALSE(h.rigid);

    Verdict b = classify(fx::bs(2, 3));
    CHECK(b.kind == Verdict::Kind::VirtuallyNilpotent);
    CHECK(b.k == 0);
    CHECK(b.finite);
    CHECK(b.rigid);
    CHECK(b.virtually_abelian);
    CHECK(b.finitely_generated);

    Verdict f4 = classify(fx::fig4(3));
    CHECK(f4.kind == Verdict::Kind::VirtuallyNilpotent);
    CHECK(f4.k == 0);
    CHECK(f4.virtually_abelian);
    CHECK_FALSE(f4.finitely_generated);
    CHECK_FALSE(f4.finite);
    CHECK_FALSE(f4.rigid);

    Verdict e = classify(fx::seg(2, 2));
    CHECK(e.kind == Verdict::Kind::Elementary);
    CHECK(e.elementary_out == "Z/2xZ/2");
    Verdict s = classify(fx::bs(1, 12));
    CHECK(s.kind == Verdict::Kind::SolvableBS);
    CHECK(s.out_rank_hint == 1);

    CHECK(classify(fx::bs(2, 4)).kind == Verdict::Kind::ContainsF2);
    CHECK(classify(fx::f2xz()).kind == Verdict::Kind::ContainsF2);
}

TEST_CASE("finite Out cases") {
    CHECK(finite_out_condition(fx::seg(2, 3)));
    CHECK_FALSE(finite_out_condition(fx::bs(3, 3)));
    // a (3,-3)-loop with an attached edge whose label is prime to 3
    CHECK(finite_out_condition(Graph{{"v", "w"}, {{"e1", 0, 0, 3, -3}, {"e2", 0, 1, 2, 5}}}));
    CHECK_FALSE(finite_out_condition(Graph{{"v", "w"}, {{"e1", 0, 0, 3, -3}, {"e2", 0, 1, 6, 5}}}));
    // a (1,-1)-loop at a vertex of valence one in the tree
    CHECK(finite_out_condition(Graph{{"v", "w"}, {{"e1", 0, 0, 1, -1}, {"e2", 0, 1, 2, 3}}}));
}

TEST_CASE("verdicts are invariant under moves") {
    testing::Rng rng(61);
    int done = 0;
    for (int i = 0; i < 250; ++i) {
        Graph g = testing::random_graph(rng, 4, 8);
        std::string base = invariant_part(classify(g));
        Graph h = testing::random_sign_change(rng, g);
        for (int s = 0; s < 4; ++s) testing::random_move(rng, h);
        CHECK(invariant_part(classify(h)) == base);
        ++done;
    }
    CHECK(done == 250);
}

TEST_CASE("flag implications") {
    testing::Rng rng(62);
    int nilpotent = 0;
    for (int i = 0; i < 600; ++i) {
        Graph g = testing::random_graph(rng, 4, 8);
        Verdict v = classify(g);
        if (v.kind != Verdict::Kind::VirtuallyNilpotent) continue;
        ++nilpotent;
        Graph r = reduce(g);
        if (v.finite) CHECK(v.rigid);
        if (v.rigid) {
            CHECK(v.finitely_generated);
            CHECK(twist_structure(r).rank == static_cast<std::size_t>(v.k));
        }
        if (has_strict_ascending_loop(r)) CHECK_FALSE(v.finitely_generated);
        CHECK(v.k == rank_k(r));
    }
    CHECK(nilpotent > 30);
}

} // TEST_SUITE

#include <doctest.h>

#include "generators.hpp"
#include "gbs/fixtures.hpp"
#include "gbs/invariants.hpp"
#include "gbs/isomorphism.hpp"
#include "gbs/moves.hpp"
#include "gbs/twist.hpp"

using namespace gbs;
namespace fx = gbs::fixtures;

namespace {

Graph random_f2free(testing::Rng &rng) {
    for (;;) {
        Graph g = testing::random_graph(rng, 4, 8);
        Verdict v = classify(g);
        if (v.kind == Verdict::Kind::VirtuallyNilpotent) return reduce(g);
    }
}

Graph walk(testing::Rng &rng, Graph g, int steps) {
    for (int i = 0; i < steps; ++i) {
        auto ns = f2free_neighbours(g);
        if (ns.empty()) break;
        g = ns[rng() % ns.size()];
    }
    return testing::random_sign_change(rng, g);
}

} // namespace

TEST_SUITE("isomorphism") {

TEST_CASE("local normal forms at a solvable vertex") {
    Graph a = fx::fig4(3), b = fx::fig4(3);
    b.edges[1].la = 6;
    auto fa = canonical_local_data(a, collapse_slid(a));
    auto fb = canonical_local_data(b, collapse_slid(b));
    CHECK(fa[0].coprime_parts == std::vector<Label>{3});
    CHECK(fa[0] == fb[0]);
    Graph c = fx::fig4(5);
    CHECK_FALSE(canonical_local_data(c, collapse_slid(c))[0] == fa[0]);
}

TEST_CASE("local normal forms at a segment vertex ignore the side swap") {
    Graph a{{"u", "w", "x", "y"}, {{"e1", 0, 1, 2, 2}, {"e2", 0, 2, 3, 5}, {"e3", 1, 3, 10, 7}}};
    Graph b{{"u", "w", "x", "y"}, {{"e1", 0, 1, 2, 2}, {"e2", 1, 2, 3, 5}, {"e3", 0, 3, 10, 7}}};
    auto fa = canonical_local_data(a, collapse_slid(a));
    auto fb = canonical_local_data(b, collapse_slid(b));
    CHECK(fa[0] == fb[0]);
    CHECK(isomorphic(a, b).kind == IsoVerdict::Kind::Iso);
}

TEST_CASE("local normal forms are invariant under slides around the loop and induction") {
    Graph g{{"v", "w", "x"}, {{"e1", 0, 0, 1, 6}, {"e2", 0, 1, 5, 7}, {"e3", 0, 2, 28, 11}}};
    REQUIRE_FALSE(check_conditions(g));
    auto base = canonical_local_data(g, collapse_slid(g))[0];
    for (const Graph &h : {slide_around_loop(g, Half{1, false}, 0, Direction::Multiply),
                           induction_move(g, 0, 2, Direction::Multiply), induction_move(g, 0, 3, Direction::Multiply),
                           slide_around_loop(g, Half{2, false}, 0, Direction::Multiply)}) {
        CHECK(canonical_local_data(h, collapse_slid(h))[0] == base);
    }
}

TEST_CASE("decision examples") {
    Graph f4 = fx::fig4(3);
    Graph scrambled = induction_move(slide_around_loop(f4, Half{1, false}, 0, Direction::Multiply), 0, 2,
                                     Direction::Multiply);
    CHECK(isomorphic(f4, scrambled).kind == IsoVerdict::Kind::Iso);
    CHECK(isomorphic(f4, fx::fig4(5)).kind == IsoVerdict::Kind::NotIso);
    CHECK(isomorphic(fx::bs(2, 3), fx::bs(2, 4)).kind == IsoVerdict::Kind::NotIso);
    CHECK(isomorphic(fx::bs(2, 4), fx::fig3()).kind == IsoVerdict::Kind::OutOfScope);
    CHECK(isomorphic(fx::bs(1, 6), fx::bs(1, 6)).kind == IsoVerdict::Kind::Iso);
    CHECK(isomorphic(fx::bs(1, 6), fx::bs(1, -6)).kind == IsoVerdict::Kind::NotIso);
    CHECK(isomorphic(fx::seg(2, 2), fx::bs(1, -1)).kind == IsoVerdict::Kind::NotIso);
    CHECK(isomorphic(fx::fig2(), fx::fig2()).kind == IsoVerdict::Kind::Iso);
    CHECK_THROWS_AS(isomorphic(fx::seg(1, 2), fx::fig2()), Error);
}

TEST_CASE("oracle examples") {
    OracleVerdict same = oracle_isomorphic(fx::fig4(3), fx::fig4(3), 1000);
    CHECK(same.iso);
    CHECK(same.depth == 0);
    Graph six = induction_move(fx::fig4(3), 0, 2, Direction::Multiply);
    OracleVerdict one = oracle_isomorphic(fx::fig4(3), six, 1000);
    CHECK(one.iso);
    CHECK(one.depth == 1);
    BigInt bound = label_product(fx::fig4(5)) * 10;
    CHECK_FALSE(oracle_isomorphic(fx::fig4(3), fx::fig4(5), bound).iso);
    CHECK_THROWS_AS(oracle_isomorphic(fx::fig4(3), fx::fig4(5), 5), Error);
}

TEST_CASE("scrambled copies are isomorphic and share invariants") {
    testing::Rng rng(71);
    for (int i = 0; i < 40; ++i) {
        Graph g = random_f2free(rng);
        Graph h = walk(rng, g, 3);
        IsoVerdict v = isomorphic(g, h);
        CHECK(v.kind == IsoVerdict::Kind::Iso);
        CHECK(betti(g) == betti(h));
        CHECK(twist_structure(g).rank == twist_structure(h).rank);
        CHECK(same_modulus_group(modulus_group(g).generators, modulus_group(h).generators));
        CHECK(classify(g) .kind == classify(h).kind);
    }
}

TEST_CASE("decision agrees with the oracle on random pairs") {
    testing::Rng rng(72);
    int agree = 0, iso = 0;
    for (int i = 0; i < 40; ++i) {
        Graph g = random_f2free(rng), h = random_f2free(rng);
        BigInt bound = std::max(label_product(g), label_product(h)) * 8;
        bool decided = isomorphic(g, h).kind == IsoVerdict::Kind::Iso;
        bool found = oracle_isomorphic(g, h, bound).iso;
        CHECK(decided == found);
        agree += decided == found;
        iso += decided;
    }
    CHECK(agree == 40);
}

} // TEST_SUITE

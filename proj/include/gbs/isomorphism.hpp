#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "gbs/classify.hpp"
#include "gbs/smith.hpp"

namespace gbs {

// Local data at one end of a surviving edge, seen from a collapsed vertex.
struct LocalEnd {
    int edge = 0;        // index into CollapsedGraph::edges
    bool far = false;    // false for end a, true for end b
    Label label = 1;
    int side = -1;
    Label coprime = 1;   // part of |label| prime to q at a solvable vertex
    std::vector<std::int64_t> q_class;  // coset data of the q-part, see below
};

// Per collapsed vertex normal form. For a solvable vertex the q-parts of
// the adjacent labels are taken as exponent vectors over the primes of q,
// made relative to the first end and reduced modulo the exponent vector of q;
// two orderings of ends with identical data lie in one orbit of moves that
// slide around the loop or induct at the vertex.
struct LocalNormalForm {
    VertexType type = VertexType::PlainCyclic;
    Label q = 0;
    std::vector<Label> labels;                 // sorted |labels|
    std::vector<Label> odd_first, odd_second;  // segment vertices: odd |labels| per side, unordered pair
    std::vector<Label> even;                   // segment vertices: even |labels|
    std::vector<Label> coprime_parts;          // solvable vertices, sorted
    std::vector<LocalEnd> ends;                // ends in edge order

    bool operator==(const LocalNormalForm &o) const;
};

std::vector<LocalNormalForm> canonical_local_data(const Graph &g, const CollapsedGraph &c);

struct IsoVerdict {
    enum class Kind { Iso, NotIso, OutOfScope };
    Kind kind = Kind::NotIso;
    std::string witness;
    std::vector<std::pair<std::string, std::string>> vertex_map;  // collapsed vertex ids

    std::string kind_name() const;
};

IsoVerdict isomorphic(const Graph &g1, const Graph &g2);

struct OracleVerdict {
    bool iso = false;
    std::size_t depth = 0;   // combined search depth at which the frontiers met
    std::size_t states = 0;  // states visited on both sides
};

// Graphs reachable in one step by slides across (2,2)-segments, slides
// around (1,q)-loops and induction moves.
std::vector<Graph> f2free_neighbours(const Graph &g);

BigInt label_product(const Graph &g);

OracleVerdict oracle_isomorphic(const Graph &g1, const Graph &g2, const BigInt &product_bound);

nlohmann::json iso_to_json(const IsoVerdict &v);

} // namespace gbs

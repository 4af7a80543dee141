#pragma once

#include <vector>

#include "gbs/graph.hpp"
#include "gbs/smith.hpp"

namespace gbs {

// Presentation of the twist group: one generator per oriented edge
// (column 2i is edge i forward, 2i+1 reversed), edge rows first, then one
// row per vertex.
struct TwistPresentation {
    std::vector<Half> generators;
    Matrix relations;
    std::size_t edge_rows = 0;
};

struct TwistOrder {
    bool finite = false;
    BigInt order = 0;  // meaningful when finite
};

TwistPresentation twist_presentation(const Graph &g);
AbelianGroup twist_structure(const Graph &g);

// Order of a twist read from the Smith normal form, cross-checked against
// the separating/non-separating modulus criterion.
TwistOrder twist_order(const Graph &g, Half h);

// Finiteness predicted by the modulus criterion alone.
bool twist_finite_by_moduli(const Graph &g, Half h);

std::vector<Half> maximal_tree_twist_basis(const Graph &g);

// Whether the twists of the given oriented edges generate a finite index subgroup.
bool generates_finite_index(const Graph &g, const std::vector<Half> &hs);

} // namespace gbs

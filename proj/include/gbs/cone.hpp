#pragma once

#include <cstddef>
#include <vector>

#include "gbs/smith.hpp"

namespace gbs {

// A linear inequality  coeffs . x >= bound  over the rationals.
struct Inequality {
    Row coeffs;
    BigInt bound = 0;
};

// Exact Fourier-Motzkin feasibility test for a system of inequalities.
bool feasible(std::vector<Inequality> system, std::size_t nvars);

// Whether some rational x gives A^T x >= 0 componentwise with A^T x != 0.
// Rows of `vectors` are the columns of A^T, i.e. one vector per variable.
bool cone_has_nonzero_point(const std::vector<Row> &vectors, std::size_t dim);

} // namespace gbs

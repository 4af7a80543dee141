#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gbs {

using BigInt = boost::multiprecision::cpp_int;
using Row = std::vector<BigInt>;
using Matrix = std::vector<Row>;

// Finitely generated abelian group Z^rank + sum of Z/d_i with d_1 | d_2 | ...
struct AbelianGroup {
    std::size_t rank = 0;
    std::vector<BigInt> invariant_factors;  // each >= 2

    BigInt torsion_order() const;
    std::string to_string() const;
    bool operator==(const AbelianGroup &) const = default;
};

// U * A * V = D with U, V unimodular and D diagonal in divisibility order.
struct SmithForm {
    std::size_t rows = 0;
    std::size_t cols = 0;
    Matrix D, U, V;
    std::vector<BigInt> diagonal;  // nonzero diagonal entries, positive
    std::size_t rank = 0;
};

SmithForm smith_normal_form(const Matrix &a, std::size_t cols);

// Throws CriterionMismatch unless U*A*V == D and det U, det V = +-1.
void verify_smith(const Matrix &a, const SmithForm &s);

// The group Z^cols / (row lattice of a).
AbelianGroup cokernel(const SmithForm &s);
AbelianGroup cokernel(const Matrix &a, std::size_t cols);

// Order of the image of x in Z^cols / (row lattice); nullopt for infinite.
std::optional<BigInt> coset_order(const SmithForm &s, const Row &x);

// Whether x lies in the row lattice.
bool in_row_lattice(const SmithForm &s, const Row &x);

Matrix multiply(const Matrix &a, const Matrix &b, std::size_t inner, std::size_t cols);
BigInt determinant(Matrix m);
std::size_t matrix_rank(Matrix m, std::size_t cols);

} // namespace gbs

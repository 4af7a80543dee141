#include "gbs/smith.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "gbs/error.hpp"

namespace gbs {

namespace {

Matrix identity(std::size_t n) {
    Matrix m(n, Row(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

void add_row(Matrix &m, std::size_t dst, std::size_t src, const BigInt &k) {
    for (std::size_t j = 0; j < m[dst].size(); ++j) m[dst][j] += k * m[src][j];
}

void add_col(Matrix &m, std::size_t dst, std::size_t src, const BigInt &k) {
    for (auto &row : m) row[dst] += k * row[src];
}

void swap_cols(Matrix &m, std::size_t i, std::size_t j) {
    for (auto &row : m) std::swap(row[i], row[j]);
}

BigInt floor_div(const BigInt &a, const BigInt &b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

} // namespace

BigInt AbelianGroup::torsion_order() const {
    BigInt n = 1;
    for (const auto &d : invariant_factors) n *= d;
    return n;
}

std::string AbelianGroup::to_string() const {
    std::ostringstream os;
    bool first = true;
    if (rank > 0) {
        os << "Z";
        if (rank > 1) os << "^" << rank;
        first = false;
    }
    for (const auto &d : invariant_factors) {
        if (!first) os << " + ";
        os << "Z/" << d;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

SmithForm smith_normal_form(const Matrix &a, std::size_t cols) {
    SmithForm s;
    s.rows = a.size();
    s.cols = cols;
    s.D = a;
    s.U = identity(s.rows);
    s.V = identity(cols);
    Matrix &D = s.D;
    std::size_t m = s.rows, n = cols;

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // pivot: least nonzero absolute value in the trailing block
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (D[i][j] != 0 && (pi == m || abs(D[i][j]) < abs(D[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == m) goto done;
            std::swap(D[t], D[pi]);
            std::swap(s.U[t], s.U[pi]);
            swap_cols(D, t, pj);
            swap_cols(s.V, t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D[i][t] == 0) continue;
                BigInt q = floor_div(D[i][t], D[t][t]);
                add_row(D, i, t, -q);
                add_row(s.U, i, t, -q);
                if (D[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D[t][j] == 0) continue;
                BigInt q = floor_div(D[t][j], D[t][t]);
                add_col(D, j, t, -q);
                add_col(s.V, j, t, -q);
                if (D[t][j] != 0) clean = false;
            }
            if (!clean) continue;

            // divisibility of the remaining block by the pivot
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            add_row(D, t, bad, 1);
            add_row(s.U, t, bad, 1);
        }
        if (D[t][t] < 0) {
            for (auto &x : D[t]) x = -x;
            for (auto &x : s.U[t]) x = -x;
        }
        s.diagonal.push_back(D[t][t]);
        ++s.rank;
    }
done:
    return s;
}

Matrix multiply(const Matrix &a, const Matrix &b, std::size_t inner, std::size_t cols) {
    Matrix c(a.size(), Row(cols, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

BigInt determinant(Matrix m) {
    // Bareiss fraction-free elimination
    std::size_t n = m.size();
    if (n == 0) return 1;
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

std::size_t matrix_rank(Matrix m, std::size_t cols) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t p = rank;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[rank], m[p]);
        for (std::size_t i = rank + 1; i < m.size(); ++i) {
            if (m[i][c] == 0) continue;
            BigInt x = m[i][c], y = m[rank][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] = m[i][j] * y - m[rank][j] * x;
        }
        ++rank;
    }
    return rank;
}

void verify_smith(const Matrix &a, const SmithForm &s) {
    Matrix uav = multiply(multiply(s.U, a, s.rows, s.cols), s.V, s.cols, s.cols);
    bool ok = uav == s.D;
    for (std::size_t i = 0; ok && i < s.rows; ++i)
        for (std::size_t j = 0; j < s.cols; ++j)
            if (i != j && s.D[i][j] != 0) ok = false;
    for (std::size_t i = 0; ok && i + 1 < s.rank; ++i)
        if (s.diagonal[i + 1] % s.diagonal[i] != 0) ok = false;
    if (ok) ok = abs(determinant(s.U)) == 1 && abs(determinant(s.V)) == 1;
    if (!ok) throw Error(ErrorKind::CriterionMismatch, "Smith normal form self-check failed");
}

AbelianGroup cokernel(const SmithForm &s) {
    AbelianGroup g;
    g.rank = s.cols - s.rank;
    for (const auto &d : s.diagonal)
        if (d != 1) g.invariant_factors.push_back(d);
    return g;
}

AbelianGroup cokernel(const Matrix &a, std::size_t cols) { return cokernel(smith_normal_form(a, cols)); }

namespace {

Row change_coordinates(const SmithForm &s, const Row &x) {
    Row y(s.cols, 0);
    for (std::size_t k = 0; k < s.cols; ++k)
        if (x[k] != 0)
            for (std::size_t j = 0; j < s.cols; ++j) y[j] += x[k] * s.V[k][j];
    return y;
}

} // namespace

std::optional<BigInt> coset_order(const SmithForm &s, const Row &x) {
    Row y = change_coordinates(s, x);
    for (std::size_t j = s.rank; j < s.cols; ++j)
        if (y[j] != 0) return std::nullopt;
    BigInt order = 1;
    for (std::size_t i = 0; i < s.rank; ++i) {
        BigInt g = gcd(s.diagonal[i], abs(y[i]));
        BigInt part = s.diagonal[i] / g;
        order = order / gcd(order, part) * part;
    }
    return order;
}

bool in_row_lattice(const SmithForm &s, const Row &x) {
    auto order = coset_order(s, x);
    return order && *order == 1;
}

} // namespace gbs

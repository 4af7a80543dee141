#include "gbs/cone.hpp"

#include <algorithm>
#include <set>

namespace gbs {

namespace {

void normalize(Inequality &q) {
    BigInt g = abs(q.bound);
    for (const auto &c : q.coeffs) g = gcd(g, abs(c));
    if (g > 1) {
        for (auto &c : q.coeffs) c /= g;
        q.bound /= g;
    }
}

} // namespace

bool feasible(std::vector<Inequality> system, std::size_t nvars) {
    for (auto &q : system) normalize(q);
    for (std::size_t var = 0; var < nvars; ++var) {
        std::vector<Inequality> pos, neg, next;
        for (auto &q : system) {
            if (q.coeffs[var] > 0) pos.push_back(q);
            else if (q.coeffs[var] < 0) neg.push_back(q);
            else next.push_back(q);
        }
        for (const auto &p : pos)
            for (const auto &n : neg) {
                BigInt a = p.coeffs[var], b = -n.coeffs[var];
                Inequality c;
                c.coeffs.resize(nvars);
                for (std::size_t j = 0; j < nvars; ++j) c.coeffs[j] = b * p.coeffs[j] + a * n.coeffs[j];
                c.bound = b * p.bound + a * n.bound;
                normalize(c);
                next.push_back(c);
            }
        std::set<std::pair<Row, BigInt>> seen;
        system.clear();
        for (auto &q : next) {
            bool constant = std::all_of(q.coeffs.begin(), q.coeffs.end(), [](const BigInt &c) { return c == 0; });
            if (constant) {
                if (q.bound > 0) return false;
                continue;
            }
            if (seen.insert({q.coeffs, q.bound}).second) system.push_back(std::move(q));
        }
    }
    for (const auto &q : system)
        if (q.bound > 0) return false;
    return true;
}

bool cone_has_nonzero_point(const std::vector<Row> &vectors, std::size_t dim) {
    std::size_t nvars = vectors.size();
    if (nvars == 0 || dim == 0) return false;
    std::vector<Inequality> system;
    Inequality total;
    total.coeffs.assign(nvars, 0);
    total.bound = 1;
    for (std::size_t p = 0; p < dim; ++p) {
        Inequality q;
        q.coeffs.resize(nvars);
        for (std::size_t i = 0; i < nvars; ++i) {
            q.coeffs[i] = vectors[i][p];
            total.coeffs[i] += vectors[i][p];
        }
        system.push_back(q);
    }
    system.push_back(total);
    return feasible(system, nvars);
}

} // namespace gbs

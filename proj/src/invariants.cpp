#include "gbs/invariants.hpp"

#include <cstdlib>
#include <set>
#include <sstream>

#include "gbs/cone.hpp"
#include "gbs/moves.hpp"

namespace gbs {

std::map<Label, int> factorize(Label n) {
    std::map<Label, int> f;
    std::uint64_t m = static_cast<std::uint64_t>(std::llabs(n));
    for (std::uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        while (m % p == 0) {
            ++f[static_cast<Label>(p)];
            m /= p;
        }
    }
    if (m > 1) ++f[static_cast<Label>(m)];
    return f;
}

FactoredRational FactoredRational::of(Label n) {
    FactoredRational r;
    r.sign = n < 0 ? -1 : 1;
    for (auto [p, e] : factorize(n)) r.exponents[p] = e;
    return r;
}

FactoredRational FactoredRational::ratio(Label num, Label den) { return of(num) * of(den).inverse(); }

FactoredRational FactoredRational::operator*(const FactoredRational &o) const {
    FactoredRational r = *this;
    r.sign *= o.sign;
    for (auto [p, e] : o.exponents) {
        auto &x = r.exponents[p];
        x += e;
        if (x == 0) r.exponents.erase(p);
    }
    return r;
}

FactoredRational FactoredRational::inverse() const {
    FactoredRational r = *this;
    for (auto &[p, e] : r.exponents) e = -e;
    return r;
}

std::string FactoredRational::to_string() const {
    BigInt num = 1, den = 1;
    for (auto [p, e] : exponents) {
        BigInt pp = pow(BigInt(p), static_cast<unsigned>(std::llabs(e)));
        if (e > 0) num *= pp;
        else den *= pp;
    }
    std::ostringstream os;
    if (sign < 0) os << '-';
    os << num;
    if (den != 1) os << '/' << den;
    return os.str();
}

int betti(const Graph &g) {
    return static_cast<int>(g.edges.size()) - static_cast<int>(g.vertices.size()) + 1;
}

std::vector<std::vector<Half>> cycle_basis(const Graph &g) {
    SpanningTree t = spanning_tree(g);
    std::vector<int> depth(g.vertices.size(), 0);
    for (int v : t.order)
        if (t.parent[v]) depth[v] = depth[g.origin(*t.parent[v])] + 1;

    std::vector<std::vector<Half>> cycles;
    for (int e : t.non_tree) {
        Half h{e, false};
        std::vector<Half> up, down;
        int x = g.terminus(h), y = g.origin(h);
        while (x != y) {
            if (depth[x] >= depth[y]) {
                up.push_back(t.parent[x]->flip());
                x = g.origin(*t.parent[x]);
            } else {
                down.push_back(*t.parent[y]);
                y = g.origin(*t.parent[y]);
            }
        }
        std::vector<Half> cycle{h};
        cycle.insert(cycle.end(), up.begin(), up.end());
        cycle.insert(cycle.end(), down.rbegin(), down.rend());
        cycles.push_back(cycle);
    }
    return cycles;
}

FactoredRational modulus_of_cycle(const Graph &g, const std::vector<Half> &cycle) {
    if (cycle.empty()) throw Error(ErrorKind::NotAClosedPath, "empty path");
    for (Half h : cycle)
        if (h.edge < 0 || h.edge >= static_cast<int>(g.edges.size()))
            throw Error(ErrorKind::NotAClosedPath, "path uses an unknown edge");
    FactoredRational m;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        Half h = cycle[i], next = cycle[(i + 1) % cycle.size()];
        if (g.terminus(h) != g.origin(next)) throw Error(ErrorKind::NotAClosedPath, "path is not a closed edge path");
        m = m * FactoredRational::ratio(g.label(h), g.far_label(h));
    }
    return m;
}

bool has_integral_modulus(const std::vector<FactoredRational> &generators) {
    std::set<Label> primes;
    for (const auto &f : generators)
        for (auto [p, e] : f.exponents) primes.insert(p);
    std::vector<Label> ps(primes.begin(), primes.end());
    std::vector<Row> vectors;
    for (const auto &f : generators) {
        Row r;
        for (Label p : ps) {
            auto it = f.exponents.find(p);
            r.push_back(it == f.exponents.end() ? 0 : it->second);
        }
        vectors.push_back(r);
    }
    return cone_has_nonzero_point(vectors, ps.size());
}

ModulusGroup modulus_group(const Graph &g) {
    ModulusGroup m;
    for (const auto &c : cycle_basis(g)) m.generators.push_back(modulus_of_cycle(g, c));
    for (const auto &f : m.generators) {
        if (!f.is_one()) m.trivial = false;
        if (!f.is_unit()) m.unimodular = false;
    }
    m.integral = has_integral_modulus(m.generators);
    return m;
}

namespace {

Matrix sign_exponent_rows(const std::vector<FactoredRational> &gens, const std::vector<Label> &primes) {
    Matrix rows;
    for (const auto &f : gens) {
        Row r;
        for (Label p : primes) {
            auto it = f.exponents.find(p);
            r.push_back(it == f.exponents.end() ? 0 : it->second);
        }
        r.push_back(f.sign < 0 ? 1 : 0);
        rows.push_back(r);
    }
    return rows;
}

bool contained_in(const std::vector<FactoredRational> &sub, const std::vector<FactoredRational> &super,
                  const std::vector<Label> &primes) {
    Matrix rows = sign_exponent_rows(super, primes);
    Row two(primes.size() + 1, 0);
    two.back() = 2;
    rows.push_back(two);
    SmithForm s = smith_normal_form(rows, primes.size() + 1);
    for (const auto &r : sign_exponent_rows(sub, primes))
        if (!in_row_lattice(s, r)) return false;
    return true;
}

} // namespace

bool same_modulus_group(const std::vector<FactoredRational> &a, const std::vector<FactoredRational> &b) {
    std::set<Label> ps;
    for (const auto *list : {&a, &b})
        for (const auto &f : *list)
            for (auto [p, e] : f.exponents) ps.insert(p);
    std::vector<Label> primes(ps.begin(), ps.end());
    return contained_in(a, b, primes) && contained_in(b, a, primes);
}

bool is_elementary(const Graph &g) { return kind_of_reduced(reduce(g)).tag == GraphKind::Tag::Elementary; }

int rank_k(const Graph &g) {
    if (is_elementary(g)) throw Error(ErrorKind::ElementaryInput, "rank k is defined for non-elementary graphs");
    return betti(g) - (modulus_group(g).trivial ? 0 : 1);
}

CenterType center_type(const Graph &g) {
    if (is_elementary(g)) throw Error(ErrorKind::ElementaryInput, "center type is defined for non-elementary graphs");
    return modulus_group(g).trivial ? CenterType::InfiniteCyclic : CenterType::Trivial;
}

AbelianGroup abelianization(const Graph &g) {
    std::size_t nv = g.vertices.size();
    Matrix rows;
    for (const auto &e : g.edges) {
        Row r(nv, 0);
        r[e.a] += e.la;
        r[e.b] -= e.lb;
        rows.push_back(r);
    }
    AbelianGroup ab = cokernel(rows, nv);
    ab.rank += static_cast<std::size_t>(betti(g));
    return ab;
}

} // namespace gbs

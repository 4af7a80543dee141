#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gbs/graph.hpp"
#include "gbs/smith.hpp"

namespace gbs {

std::map<Label, int> factorize(Label n);

struct FactoredRational {
    int sign = 1;
    std::map<Label, std::int64_t> exponents;  // prime -> valuation, no zero entries

    static FactoredRational of(Label n);
    static FactoredRational ratio(Label num, Label den);

    FactoredRational operator*(const FactoredRational &o) const;
    FactoredRational inverse() const;
    bool is_one() const { return sign == 1 && exponents.empty(); }
    bool is_unit() const { return exponents.empty(); }
    std::string to_string() const;
    bool operator==(const FactoredRational &) const = default;
};

struct ModulusGroup {
    std::vector<FactoredRational> generators;
    bool trivial = true;
    bool unimodular = true;
    bool integral = false;  // contains an integer of absolute value >= 2
};

enum class CenterType { InfiniteCyclic, Trivial };

int betti(const Graph &g);

// One closed path per edge outside the spanning tree: the edge itself
// followed by the tree path back to its origin.
std::vector<std::vector<Half>> cycle_basis(const Graph &g);

FactoredRational modulus_of_cycle(const Graph &g, const std::vector<Half> &cycle);
ModulusGroup modulus_group(const Graph &g);
bool has_integral_modulus(const std::vector<FactoredRational> &generators);

// Equality of the subgroups of Q* generated by the two lists.
bool same_modulus_group(const std::vector<FactoredRational> &a, const std::vector<FactoredRational> &b);

bool is_elementary(const Graph &g);
int rank_k(const Graph &g);
CenterType center_type(const Graph &g);
AbelianGroup abelianization(const Graph &g);

} // namespace gbs

#pragma once

#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "gbs/graph.hpp"
#include "gbs/smith.hpp"

namespace gbs {

using Rational = boost::multiprecision::cpp_rational;

struct UnimodularReport {
    bool delta_trivial = true;
    BigInt delta_power = 1;
    std::vector<Rational> weights;  // per vertex, base vertex has weight 1
    Rational delta_length;          // translation length of the chosen central element
    std::vector<BigInt> vertex_orders;
    std::vector<BigInt> edge_orders;   // per edge
    int aut_kernel_rank = 0;
    int out_kernel_rank = 0;
};

// delta_power 0 picks the default: 1 when every modulus is trivial, 4 otherwise.
UnimodularReport unimodular_report(const Graph &g, const BigInt &delta_power = 0);

// Same computation with weights normalized at a chosen base vertex.
UnimodularReport unimodular_report_from(const Graph &g, int base, const BigInt &delta_power = 0);

nlohmann::json unimodular_to_json(const Graph &g, const UnimodularReport &r);

} // namespace gbs

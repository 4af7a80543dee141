#include "gbs/unimodular.hpp"

#include <cstdlib>

#include "gbs/invariants.hpp"
#include "gbs/moves.hpp"

namespace gbs {

namespace {

Rational rational_lcm(const Rational &x, const Rational &y) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    BigInt n = boost::multiprecision::lcm(numerator(x), numerator(y));
    BigInt d = boost::multiprecision::gcd(denominator(x), denominator(y));
    return Rational(n, d);
}

BigInt as_integer(const Rational &r) {
    if (boost::multiprecision::denominator(r) != 1)
        throw Error(ErrorKind::CriterionMismatch, "non-integral order in unimodular data");
    return boost::multiprecision::numerator(r);
}

std::string rational_string(const Rational &r) {
    std::string s = boost::multiprecision::numerator(r).str();
    if (boost::multiprecision::denominator(r) != 1) s += "/" + boost::multiprecision::denominator(r).str();
    return s;
}

} // namespace

UnimodularReport unimodular_report_from(const Graph &g, int base, const BigInt &delta_power) {
    validate(g);
    if (is_elementary(reduce(g))) throw Error(ErrorKind::ElementaryInput, "graph is elementary");
    ModulusGroup m = modulus_group(g);
    if (!m.unimodular) throw Error(ErrorKind::NotUnimodular, "a cycle has modulus other than +1 or -1");

    UnimodularReport r;
    r.delta_trivial = m.trivial;
    r.delta_power = delta_power != 0 ? delta_power : BigInt(m.trivial ? 1 : 4);
    if (r.delta_power < 1) throw Error(ErrorKind::BadFactor, "delta power must be positive");

    std::size_t nv = g.vertices.size();
    r.weights.assign(nv, Rational(0));
    r.weights[base] = 1;
    std::vector<int> stack{base};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (Half h : g.out(v)) {
            int w = g.terminus(h);
            if (r.weights[w] != 0) continue;
            r.weights[w] = r.weights[v] * std::llabs(g.label(h)) / std::llabs(g.far_label(h));
            stack.push_back(w);
        }
    }
    for (const auto &e : g.edges)
        if (r.weights[e.a] * std::llabs(e.la) != r.weights[e.b] * std::llabs(e.lb))
            throw Error(ErrorKind::CriterionMismatch, "translation weights do not close up around " + e.id);

    Rational ell = 0;
    for (const auto &e : g.edges) {
        Rational len = r.weights[e.a] * std::llabs(e.la);
        ell = ell == 0 ? len : rational_lcm(ell, len);
    }
    r.delta_length = ell * r.delta_power;
    for (std::size_t v = 0; v < nv; ++v) r.vertex_orders.push_back(as_integer(r.delta_length / r.weights[v]));
    for (const auto &e : g.edges)
        r.edge_orders.push_back(as_integer(r.delta_length / (r.weights[e.a] * std::llabs(e.la))));
    r.aut_kernel_rank = betti(g);
    r.out_kernel_rank = rank_k(g);
    return r;
}

UnimodularReport unimodular_report(const Graph &g, const BigInt &delta_power) {
    UnimodularReport r = unimodular_report_from(g, 0, delta_power);
    if (g.vertices.size() > 1) {
        UnimodularReport s = unimodular_report_from(g, static_cast<int>(g.vertices.size()) - 1, delta_power);
        if (s.vertex_orders != r.vertex_orders || s.edge_orders != r.edge_orders)
            throw Error(ErrorKind::CriterionMismatch, "unimodular orders depend on the base vertex");
    }
    return r;
}

nlohmann::json unimodular_to_json(const Graph &g, const UnimodularReport &r) {
    nlohmann::json weights = nlohmann::json::object(), orders = nlohmann::json::object();
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        weights[g.vertices[v]] = rational_string(r.weights[v]);
        orders[g.vertices[v]] = r.vertex_orders[v].str();
    }
    nlohmann::json edges = nlohmann::json::array();
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const Edge &e = g.edges[i];
        edges.push_back({{"id", e.id},
                         {"from", g.vertices[e.a]},
                         {"to", g.vertices[e.b]},
                         {"order", r.edge_orders[i].str()}});
    }
    return {{"delta_trivial", r.delta_trivial},
            {"delta_power", r.delta_power.str()},
            {"delta_length", rational_string(r.delta_length)},
            {"weights", weights},
            {"H_graph", {{"vertex_orders", orders}, {"edges", edges}}},
            {"aut_kernel_rank", r.aut_kernel_rank},
            {"out_kernel_rank", r.out_kernel_rank}};
}

} // namespace gbs

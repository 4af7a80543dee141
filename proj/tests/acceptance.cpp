#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "gbs/classify.hpp"
#include "gbs/deform.hpp"
#include "gbs/fixtures.hpp"
#include "gbs/invariants.hpp"
#include "gbs/isomorphism.hpp"
#include "gbs/moves.hpp"
#include "gbs/twist.hpp"
#include "gbs/unimodular.hpp"
#include "oracles.hpp"

using namespace gbs;
namespace fx = gbs::fixtures;

namespace {

constexpr double twist_tower_seconds = 1.0;
constexpr double rigidity_seconds = 30.0;
constexpr int random_corpus_size = 200;
constexpr int move_samples = 500;
constexpr int max_move_sequence = 6;
constexpr int min_iso_pairs = 100;
constexpr int sign_samples = 1000;

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 200 non-elementary connected graphs with at most 5 edges and labels at most 12.
std::vector<Graph> random_corpus() {
    testing::Rng rng(2024);
    std::vector<Graph> out;
    while (out.size() < static_cast<std::size_t>(random_corpus_size)) {
        Graph g = testing::random_graph(rng, 5, 12);
        if (!is_elementary(g)) out.push_back(g);
    }
    return out;
}

std::set<BigInt> prime_set(const AbelianGroup &a) {
    std::set<BigInt> ps;
    for (BigInt f : a.invariant_factors) {
        for (BigInt p = 2; p * p <= f; ++p)
            while (f % p == 0) {
                ps.insert(p);
                f /= p;
            }
        if (f > 1) ps.insert(f);
    }
    return ps;
}

std::string verdict_key(const Verdict &v) {
    std::ostringstream s;
    s << v.kind_name();
    if (v.kind == Verdict::Kind::Elementary) s << v.elementary_shape;
    if (v.kind == Verdict::Kind::SolvableBS) s << v.n;
    if (v.kind == Verdict::Kind::VirtuallyNilpotent)
        s << v.k << v.virtually_abelian << v.finitely_generated << v.finite << v.rigid;
    return s.str();
}

Outcome twist_tower() {
    Outcome o;
    auto t0 = Clock::now();
    for (int p = 1; p <= 6; ++p) {
        AbelianGroup t = twist_structure(fx::one_p(p));
        bool ok = t.rank == 0 && t.invariant_factors == std::vector<BigInt>{BigInt(1) << p};
        if (!ok) {
            o.pass = false;
            o.detail += " p=" + std::to_string(p) + " gave " + t.to_string();
        }
    }
    double s = seconds_since(t0);
    if (s >= twist_tower_seconds) o.pass = false;
    o.detail += " T(1p(p)) = Z/2^p for p=1..6 in " + std::to_string(s) + " s";
    return o;
}

Outcome k_values(const std::vector<Graph> &corpus) {
    Outcome o;
    std::vector<std::tuple<Label, Label, int>> anchors{{2, 3, 0}, {2, 4, 0}, {3, 6, 0}, {2, 2, 1}, {3, 3, 1}};
    for (auto [m, n, k] : anchors) {
        Graph g = fx::bs(m, n);
        if (rank_k(g) != k || twist_structure(g).rank != static_cast<std::size_t>(k)) {
            o.pass = false;
            o.detail += " BS(" + std::to_string(m) + "," + std::to_string(n) + ")";
        }
    }
    int bad = 0;
    for (const Graph &g : corpus)
        if (twist_structure(g).rank != static_cast<std::size_t>(rank_k(g))) ++bad;
    if (bad) o.pass = false;
    o.detail += " anchors checked, twist rank = k on " + std::to_string(corpus.size() - bad) + "/" +
                std::to_string(corpus.size()) + " random graphs";
    return o;
}

Outcome abelianization_rank(const std::vector<Graph> &corpus) {
    Outcome o;
    int bad = 0;
    std::vector<Graph> all = corpus;
    for (auto [m, n] : {std::pair<Label, Label>{2, 3}, {2, 4}, {3, 6}, {2, 2}, {3, 3}}) all.push_back(fx::bs(m, n));
    for (const Graph &g : all)
        if (abelianization(g).rank != static_cast<std::size_t>(rank_k(g) + 1)) ++bad;
    o.pass = bad == 0;
    o.detail = " rank G_ab = k+1 on " + std::to_string(all.size() - bad) + "/" + std::to_string(all.size());
    return o;
}

Outcome classification_anchors() {
    Outcome o;
    auto need = [&](bool ok, const std::string &what) {
        if (!ok) {
            o.pass = false;
            o.detail += " failed:" + what;
        }
    };
    need(classify(fx::fig3()).kind == Verdict::Kind::ContainsF2, "fig3");
    for (int p = 1; p <= 6; ++p)
        need(classify(fx::one_p(p)).kind == Verdict::Kind::ContainsF2, "1p(" + std::to_string(p) + ")");
    Verdict h = classify(fx::fig2());
    need(h.kind == Verdict::Kind::VirtuallyNilpotent && !h.virtually_abelian && h.finitely_generated, "fig2");
    Verdict f4 = classify(fx::fig4(3));
    need(f4.kind == Verdict::Kind::VirtuallyNilpotent && f4.virtually_abelian && !f4.finitely_generated, "fig4(3)");
    Verdict b = classify(fx::bs(2, 3));
    need(b.kind == Verdict::Kind::VirtuallyNilpotent && b.finite, "BS(2,3)");
    if (o.pass) o.detail = " fig3, 1p(1..6), fig2, fig4(3), BS(2,3) verdicts match";
    return o;
}

Outcome move_invariance() {
    Outcome o;
    testing::Rng rng(77);
    int samples = 0, collapses = 0, bad = 0;
    while (samples < move_samples) {
        Graph g = testing::random_graph(rng, 4, 8);
        bool elementary = is_elementary(g);
        int b = betti(g);
        auto mod = modulus_group(g).generators;
        std::string verdict = verdict_key(classify(g));
        int k = elementary ? -1 : rank_k(g);
        std::size_t trank = elementary ? 0 : twist_structure(g).rank;
        int len = 1 + static_cast<int>(rng() % max_move_sequence);
        Graph cur = g;
        for (int s = 0; s < len; ++s) {
            Graph before = cur;
            Move m;
            if (!testing::random_move(rng, cur, &m, 200)) break;
            if (auto *c = std::get_if<CollapseMove>(&m); c && !elementary) {
                const Edge &e = before.edges[before.require_edge(c->edge)];
                Label lambda = std::llabs(e.lb) == 1 ? e.la : e.lb;
                auto p1 = prime_set(twist_structure(before)), p2 = prime_set(twist_structure(cur));
                for (const auto *ps : {&p1, &p2})
                    for (const BigInt &p : *ps)
                        if ((p1.count(p) != p2.count(p)) && lambda % static_cast<Label>(p) != 0) ++bad;
                ++collapses;
            }
        }
        bool same = betti(cur) == b && same_modulus_group(modulus_group(cur).generators, mod) &&
                    verdict_key(classify(cur)) == verdict;
        if (!elementary) same = same && rank_k(cur) == k && twist_structure(cur).rank == trank;
        if (!same) ++bad;
        ++samples;
    }
    o.pass = bad == 0;
    o.detail = " " + std::to_string(samples) + " samples, " + std::to_string(collapses) +
               " collapses checked for twist torsion primes, " + std::to_string(bad) + " violations";
    return o;
}

Outcome twist_cross_check(const std::vector<Graph> &corpus) {
    Outcome o;
    std::vector<Graph> all = corpus;
    for (const auto &[name, g] : fx::corpus())
        if (!is_elementary(g)) all.push_back(g);
    int edges = 0, bad = 0;
    for (const Graph &g : all)
        for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
            for (bool rev : {false, true}) {
                Half h{i, rev};
                try {
                    if (twist_order(g, h).finite != twist_finite_by_moduli(g, h)) ++bad;
                } catch (const Error &) {
                    ++bad;
                }
                ++edges;
            }
    o.pass = bad == 0;
    o.detail = " SNF and modulus criterion agree on " + std::to_string(edges - bad) + "/" + std::to_string(edges) +
               " oriented edges";
    return o;
}

Outcome rigidity() {
    Outcome o;
    Graph pendant{{"u", "w", "x", "y"}, {{"e1", 0, 1, 5, 7}, {"e2", 0, 2, 3, 2}, {"e3", 1, 3, 2, 3}}};
    std::vector<std::pair<std::string, Graph>> seeds{{"BS(2,3)", fx::bs(2, 3)},
                                                     {"seg(2,3)", fx::seg(2, 3)},
                                                     {"seg(5,7)+pendants", pendant},
                                                     {"BS(2,4)", fx::bs(2, 4)},
                                                     {"fig2", fx::fig2()}};
    for (const auto &[name, g] : seeds) {
        auto t0 = Clock::now();
        ExploreBounds b{g.edges.size() + 2, 64, 20000};
        ExplorationReport rep = explore(g, b);
        double s = seconds_since(t0);
        bool syntactic = rigidity_condition(reduce(g));
        bool singleton = rep.exhausted && rep.reduced_found.size() == 1;
        bool ok = syntactic == singleton && s < rigidity_seconds;
        if (!ok) o.pass = false;
        o.detail += " " + name + (syntactic ? " rigid" : " not-rigid") + "/bfs " +
                    std::to_string(rep.reduced_found.size()) + (rep.exhausted ? " exhausted" : " capped") +
                    (ok ? "" : " MISMATCH") + ";";
    }
    return o;
}

Outcome isomorphism_agreement() {
    Outcome o;
    testing::Rng rng(99);
    int pairs = 0, bad = 0;
    auto run = [&](const Graph &a, const Graph &b, bool expect_iso, const BigInt &bound) {
        bool decided = isomorphic(a, b).kind == IsoVerdict::Kind::Iso;
        bool found = oracle_isomorphic(a, b, bound).iso;
        if (decided != found || decided != expect_iso) ++bad;
        ++pairs;
    };
    Graph f4 = fx::fig4(3);
    run(f4, fx::fig4(5), false, std::max(label_product(f4), label_product(fx::fig4(5))) * 10);
    run(f4, induction_move(f4, 0, 2, Direction::Multiply), true, 1000);

    std::vector<Graph> seeds{fx::fig4(3), fx::fig4(5), fx::fig2(), fx::bs(2, 3),
                             Graph{{"u", "w", "x", "y"}, {{"e1", 0, 1, 2, 2}, {"e2", 0, 2, 3, 5}, {"e3", 1, 3, 10, 7}}},
                             Graph{{"v", "w", "x"}, {{"e1", 0, 0, 1, 6}, {"e2", 0, 1, 5, 7}, {"e3", 0, 2, 28, 11}}}};
    while (seeds.size() < 40) {
        Graph g = testing::random_graph(rng, 4, 8);
        if (classify(g).kind == Verdict::Kind::VirtuallyNilpotent) seeds.push_back(reduce(g));
    }
    for (std::size_t i = 0; pairs < min_iso_pairs + 20; ++i) {
        const Graph &g = seeds[i % seeds.size()];
        if (i % 2 == 0) {
            Graph h = g;
            BigInt top = label_product(g);
            int steps = 1 + static_cast<int>(rng() % 4);
            for (int s = 0; s < steps; ++s) {
                auto ns = f2free_neighbours(h);
                if (ns.empty()) break;
                h = ns[rng() % ns.size()];
                top = std::max(top, label_product(h));
            }
            run(g, testing::random_sign_change(rng, h), true, top);
        } else {
            std::set<Label> used;
            for (const auto &e : g.edges)
                for (Label l : {e.la, e.lb})
                    for (auto [p, m] : factorize(std::llabs(l))) used.insert(p);
            Label prime = 0;
            for (Label p : {5, 7, 11, 13, 17})
                if (!used.count(p)) {
                    prime = p;
                    break;
                }
            Graph h = g;
            int e = static_cast<int>(rng() % h.edges.size());
            (rng() % 2 ? h.edges[e].la : h.edges[e].lb) *= prime;
            if (classify(h).kind != Verdict::Kind::VirtuallyNilpotent) continue;
            run(g, h, false, std::max(label_product(g), label_product(h)) * 4);
        }
    }
    o.pass = bad == 0 && pairs >= min_iso_pairs;
    o.detail = " " + std::to_string(pairs - bad) + "/" + std::to_string(pairs) +
               " pairs agree with the oracle and the expected verdict";
    return o;
}

Outcome unimodular_anchors() {
    Outcome o;
    UnimodularReport f = unimodular_report(fx::f2xz());
    bool free2 = f.vertex_orders == std::vector<BigInt>{1} && f.edge_orders == std::vector<BigInt>{1, 1} &&
                 f.aut_kernel_rank == 2 && f.out_kernel_rank == 2;
    UnimodularReport s = unimodular_report(fx::seg(3, 3));
    bool cubes = s.vertex_orders == std::vector<BigInt>{3, 3};
    UnimodularReport b = unimodular_report(fx::bs(2, -2));
    bool twisted = !b.delta_trivial && b.out_kernel_rank == 0 && b.out_kernel_rank == betti(fx::bs(2, -2)) - 1;
    o.pass = free2 && cubes && twisted;
    o.detail = std::string(" F2xZ ") + (free2 ? "ok" : "bad") + ", seg(3,3) " + (cubes ? "ok" : "bad") +
               ", BS(2,-2) " + (twisted ? "ok" : "bad");
    return o;
}

Outcome sign_round_trip() {
    Outcome o;
    testing::Rng rng(1000);
    int bad = 0;
    for (int i = 0; i < sign_samples; ++i) {
        Graph g = testing::random_graph(rng, 5, 12, false);
        Graph n = normalize_signs(g);
        bool ok = normalize_signs(n) == n && normalize_signs(testing::random_sign_change(rng, g)) == n;
        for (std::size_t e = 0; e < g.edges.size(); ++e)
            ok = ok && std::llabs(n.edges[e].la) == std::llabs(g.edges[e].la) &&
                 std::llabs(n.edges[e].lb) == std::llabs(g.edges[e].lb);
        if (g.vertices.size() + g.edges.size() <= 9) {
            auto orbit = oracle::sign_orbit(g);
            ok = ok && std::find(orbit.begin(), orbit.end(), n) != orbit.end();
        }
        ok = ok && parse_graph(serialize(g)) == g && parse_graph(serialize(n)) == n;
        if (!ok) ++bad;
    }
    o.pass = bad == 0;
    o.detail = " " + std::to_string(sign_samples - bad) + "/" + std::to_string(sign_samples) + " graphs";
    return o;
}

} // namespace

int main() {
    std::vector<Graph> corpus = random_corpus();
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"twist tower for BS(2,4)", twist_tower},
        {"k values", [&] { return k_values(corpus); }},
        {"abelianization rank", [&] { return abelianization_rank(corpus); }},
        {"classification anchors", classification_anchors},
        {"move invariance", move_invariance},
        {"twist order cross-check", [&] { return twist_cross_check(corpus); }},
        {"rigidity", rigidity},
        {"isomorphism agreement", isomorphism_agreement},
        {"unimodular anchors", unimodular_anchors},
        {"sign normal form and round trip", sign_round_trip},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail = std::string(" exception: ") + e.what();
        }
        std::printf("%s %zu %s:%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}

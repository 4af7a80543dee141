#include "gbs/isomorphism.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "gbs/invariants.hpp"
#include "gbs/moves.hpp"
#include "gbs/twist.hpp"

namespace gbs {

namespace {

Label coprime_part(Label s, Label q) {
    s = std::llabs(s);
    q = std::llabs(q);
    for (Label g = std::gcd(s, q); g > 1; g = std::gcd(s, q)) s /= g;
    return s;
}

std::vector<Label> primes_of(Label q) {
    std::vector<Label> ps;
    for (auto [p, e] : factorize(q)) ps.push_back(p);
    return ps;
}

std::vector<std::int64_t> exponents_over(Label n, const std::vector<Label> &primes) {
    std::vector<std::int64_t> v;
    n = std::llabs(n);
    for (Label p : primes) {
        std::int64_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        v.push_back(e);
    }
    return v;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

// w - m*step for the m that puts the first coordinate in [0, step[0]).
std::vector<std::int64_t> reduce_mod(std::vector<std::int64_t> w, const std::vector<std::int64_t> &step) {
    if (w.empty()) return w;
    std::int64_t m = floor_div(w[0], step[0]);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= m * step[i];
    return w;
}

// m with w == m*step, if any.
std::optional<std::int64_t> multiple_of(const std::vector<std::int64_t> &w, const std::vector<std::int64_t> &step) {
    if (w.empty()) return 0;
    if (w[0] % step[0] != 0) return std::nullopt;
    std::int64_t m = w[0] / step[0];
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] != m * step[i]) return std::nullopt;
    return m;
}

std::vector<std::int64_t> minus(const std::vector<std::int64_t> &a, const std::vector<std::int64_t> &b) {
    std::vector<std::int64_t> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

const CollapsedEnd &end_of(const CollapsedGraph &c, int edge, bool far) {
    return far ? c.edges[edge].b : c.edges[edge].a;
}

} // namespace

bool LocalNormalForm::operator==(const LocalNormalForm &o) const {
    if (type != o.type || q != o.q || labels != o.labels || even != o.even || coprime_parts != o.coprime_parts)
        return false;
    bool sides = (odd_first == o.odd_first && odd_second == o.odd_second) ||
                 (odd_first == o.odd_second && odd_second == o.odd_first);
    if (!sides || ends.size() != o.ends.size()) return false;
    if (type == VertexType::SolvableVertex)
        for (std::size_t i = 0; i < ends.size(); ++i)
            if (ends[i].coprime != o.ends[i].coprime || ends[i].q_class != o.ends[i].q_class) return false;
    return true;
}

std::vector<LocalNormalForm> canonical_local_data(const Graph &g, const CollapsedGraph &c) {
    (void)g;
    std::vector<LocalNormalForm> forms(c.vertices.size());
    for (std::size_t v = 0; v < c.vertices.size(); ++v) {
        forms[v].type = c.vertices[v].type;
        forms[v].q = c.vertices[v].q;
    }
    for (int e = 0; e < static_cast<int>(c.edges.size()); ++e)
        for (bool far : {false, true}) {
            const CollapsedEnd &ce = end_of(c, e, far);
            LocalEnd le;
            le.edge = e;
            le.far = far;
            le.label = ce.label;
            le.side = ce.side;
            forms[ce.vertex].ends.push_back(le);
        }
    for (auto &f : forms) {
        for (auto &le : f.ends) f.labels.push_back(std::llabs(le.label));
        std::sort(f.labels.begin(), f.labels.end());
        if (f.type == VertexType::KleinFromSeg22) {
            for (const auto &le : f.ends) {
                Label a = std::llabs(le.label);
                if (a % 2 == 0) f.even.push_back(a);
                else (le.side == 0 ? f.odd_first : f.odd_second).push_back(a);
            }
            std::sort(f.even.begin(), f.even.end());
            std::sort(f.odd_first.begin(), f.odd_first.end());
            std::sort(f.odd_second.begin(), f.odd_second.end());
            if (f.odd_second < f.odd_first) std::swap(f.odd_first, f.odd_second);
            f.labels.clear();
        } else if (f.type == VertexType::SolvableVertex) {
            auto primes = primes_of(f.q);
            auto step = exponents_over(f.q, primes);
            std::vector<std::int64_t> base;
            for (std::size_t i = 0; i < f.ends.size(); ++i) {
                auto &le = f.ends[i];
                le.coprime = coprime_part(le.label, f.q);
                auto t = exponents_over(le.label, primes);
                if (i == 0) base = t;
                le.q_class = reduce_mod(minus(t, base), step);
                f.coprime_parts.push_back(le.coprime);
            }
            std::sort(f.coprime_parts.begin(), f.coprime_parts.end());
            f.labels.clear();
        }
    }
    return forms;
}

std::string IsoVerdict::kind_name() const {
    switch (kind) {
    case Kind::Iso: return "Iso";
    case Kind::NotIso: return "NotIso";
    case Kind::OutOfScope: return "OutOfScope";
    }
    return "";
}

namespace {

struct CollapsedMatcher {
    const Graph &g1, &g2;
    const CollapsedGraph &c1, &c2;
    std::vector<LocalNormalForm> f1, f2;
    std::vector<int> vmap, swap;
    std::vector<bool> vused;
    std::vector<std::pair<int, bool>> emap;  // c1 edge -> (c2 edge, reversed)
    std::vector<bool> eused;

    bool vertices_compatible(int v, int w) const {
        const auto &a = f1[v], &b = f2[w];
        return a.type == b.type && a.q == b.q && a.labels == b.labels && a.even == b.even &&
               a.odd_first == b.odd_first && a.odd_second == b.odd_second && a.coprime_parts == b.coprime_parts &&
               a.ends.size() == b.ends.size();
    }

    std::vector<int> swap_options(int v, int w) const {
        if (c1.vertices[v].type != VertexType::KleinFromSeg22) return {0};
        auto sides = [](const CollapsedGraph &c, const Graph &, int x, int s) {
            std::vector<Label> odd;
            for (const auto &e : c.edges)
                for (const CollapsedEnd *ce : {&e.a, &e.b})
                    if (ce->vertex == x && ce->side == s && ce->label % 2 != 0) odd.push_back(std::llabs(ce->label));
            std::sort(odd.begin(), odd.end());
            return odd;
        };
        std::vector<int> opts;
        auto a0 = sides(c1, g1, v, 0), a1 = sides(c1, g1, v, 1);
        auto b0 = sides(c2, g2, w, 0), b1 = sides(c2, g2, w, 1);
        if (a0 == b0 && a1 == b1) opts.push_back(0);
        if (a0 == b1 && a1 == b0) opts.push_back(1);
        return opts;
    }

    bool ends_compatible(const CollapsedEnd &x, const CollapsedEnd &y) const {
        if (vmap[x.vertex] != y.vertex) return false;
        const auto &cv = c1.vertices[x.vertex];
        switch (cv.type) {
        case VertexType::SolvableVertex: return coprime_part(x.label, cv.q) == coprime_part(y.label, cv.q);
        case VertexType::KleinFromSeg22:
            if (std::llabs(x.label) != std::llabs(y.label)) return false;
            return x.label % 2 == 0 || (x.side ^ swap[x.vertex]) == y.side;
        default: return std::llabs(x.label) == std::llabs(y.label);
        }
    }

    const CollapsedEnd &matched_end(int e1, bool far) const {
        auto [e2, rev] = emap[e1];
        return end_of(c2, e2, far != rev);
    }

    // Exponent offsets of slides around each solvable vertex, per c1 end;
    // empty optional when the q-parts are not in one orbit.
    bool solvable_offsets(std::map<std::pair<int, bool>, std::int64_t> &offset) const {
        for (std::size_t v = 0; v < c1.vertices.size(); ++v) {
            if (c1.vertices[v].type != VertexType::SolvableVertex) continue;
            Label q = c1.vertices[v].q;
            auto primes = primes_of(q);
            auto step = exponents_over(q, primes);
            std::vector<std::int64_t> d0;
            bool first = true;
            for (const auto &le : f1[v].ends) {
                const CollapsedEnd &x = end_of(c1, le.edge, le.far);
                const CollapsedEnd &y = matched_end(le.edge, le.far);
                auto d = minus(exponents_over(y.label, primes), exponents_over(x.label, primes));
                if (first) {
                    d0 = d;
                    first = false;
                }
                auto m = multiple_of(minus(d, d0), step);
                if (!m) return false;
                offset[{le.edge, le.far}] = *m;
            }
        }
        return true;
    }

    bool signs_consistent(const std::map<std::pair<int, bool>, std::int64_t> &offset) const {
        std::size_t nv = g1.vertices.size();
        std::vector<std::vector<std::pair<int, int>>> adj(nv);
        auto constrain = [&](int u, int w, int parity) {
            adj[u].push_back({w, parity});
            adj[w].push_back({u, parity});
        };
        for (int e = 0; e < static_cast<int>(c1.edges.size()); ++e) {
            int vert[2], bit[2];
            bool free_end = false;
            for (bool far : {false, true}) {
                const CollapsedEnd &x = end_of(c1, e, far);
                const CollapsedEnd &y = matched_end(e, far);
                const auto &cv = c1.vertices[x.vertex];
                Label sign = x.label < 0 ? -1 : 1;
                int at = x.origin;
                if (cv.type == VertexType::KleinFromLoop) free_end = true;
                if (cv.type == VertexType::KleinFromSeg22) {
                    int target_side = y.side ^ swap[x.vertex];
                    if (target_side != x.side) {
                        const Edge &seg = g1.edges[cv.collapsed_edge];
                        if ((seg.la < 0) != (seg.lb < 0)) sign = -sign;
                        at = cv.members[target_side];
                    }
                }
                if (cv.type == VertexType::SolvableVertex && cv.q < 0 && (offset.at({e, far}) % 2 != 0)) sign = -sign;
                vert[far] = at;
                bit[far] = (sign < 0) != (y.label < 0);
            }
            if (!free_end) constrain(vert[0], vert[1], bit[0] ^ bit[1]);
        }
        for (std::size_t v = 0; v < c1.vertices.size(); ++v) {
            const auto &cv = c1.vertices[v];
            if (cv.type != VertexType::KleinFromSeg22) continue;
            const auto &cw = c2.vertices[vmap[v]];
            const Edge &s1 = g1.edges[cv.collapsed_edge];
            const Edge &s2 = g2.edges[cw.collapsed_edge];
            auto label_at = [](const Edge &s, int vertex) { return s.a == vertex ? s.la : s.lb; };
            int bits[2];
            for (int j = 0; j < 2; ++j) {
                Label l1 = label_at(s1, cv.members[j]);
                Label l2 = label_at(s2, cw.members[j ^ swap[v]]);
                bits[j] = (l1 < 0) != (l2 < 0);
            }
            constrain(cv.members[0], cv.members[1], bits[0] ^ bits[1]);
        }
        std::vector<int> colour(nv, -1);
        for (std::size_t s = 0; s < nv; ++s) {
            if (colour[s] >= 0) continue;
            colour[s] = 0;
            std::vector<int> stack{static_cast<int>(s)};
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (auto [w, parity] : adj[v]) {
                    int want = colour[v] ^ parity;
                    if (colour[w] < 0) {
                        colour[w] = want;
                        stack.push_back(w);
                    } else if (colour[w] != want) {
                        return false;
                    }
                }
            }
        }
        return true;
    }

    bool leaf() const {
        std::map<std::pair<int, bool>, std::int64_t> offset;
        return solvable_offsets(offset) && signs_consistent(offset);
    }

    bool match_edges(std::size_t i) {
        if (i == c1.edges.size()) return leaf();
        const auto &e = c1.edges[i];
        for (std::size_t j = 0; j < c2.edges.size(); ++j) {
            if (eused[j]) continue;
            for (bool rev : {false, true}) {
                const auto &f = c2.edges[j];
                const CollapsedEnd &ya = rev ? f.b : f.a;
                const CollapsedEnd &yb = rev ? f.a : f.b;
                if (!ends_compatible(e.a, ya) || !ends_compatible(e.b, yb)) continue;
                eused[j] = true;
                emap[i] = {static_cast<int>(j), rev};
                if (match_edges(i + 1)) return true;
                eused[j] = false;
            }
        }
        return false;
    }

    bool assign(std::size_t v) {
        if (v == c1.vertices.size()) return match_edges(0);
        for (std::size_t w = 0; w < c2.vertices.size(); ++w) {
            if (vused[w] || !vertices_compatible(static_cast<int>(v), static_cast<int>(w))) continue;
            for (int s : swap_options(static_cast<int>(v), static_cast<int>(w))) {
                vmap[v] = static_cast<int>(w);
                swap[v] = s;
                vused[w] = true;
                if (assign(v + 1)) return true;
                vused[w] = false;
            }
        }
        return false;
    }
};

IsoVerdict not_iso(const std::string &why) {
    IsoVerdict v;
    v.kind = IsoVerdict::Kind::NotIso;
    v.witness = why;
    return v;
}

} // namespace

IsoVerdict isomorphic(const Graph &g1, const Graph &g2) {
    require_minimal(g1);
    require_minimal(g2);
    Graph r1 = reduce(g1), r2 = reduce(g2);
    if (r1.edges.size() > 16 || r2.edges.size() > 16)
        throw Error(ErrorKind::SizeLimitExceeded, "isomorphism decision edge bound exceeded");
    Verdict v1 = classify(r1), v2 = classify(r2);
    using VK = Verdict::Kind;
    if (v1.kind == VK::ContainsF2 && v2.kind == VK::ContainsF2) {
        IsoVerdict out;
        out.kind = IsoVerdict::Kind::OutOfScope;
        out.witness = "both automorphism groups contain a free group";
        return out;
    }
    if (v1.kind != v2.kind) return not_iso("classification differs: " + v1.kind_name() + " vs " + v2.kind_name());
    IsoVerdict yes;
    yes.kind = IsoVerdict::Kind::Iso;
    if (v1.kind == VK::Elementary) {
        if (v1.elementary_shape != v2.elementary_shape) return not_iso("elementary shapes differ");
        yes.witness = "same elementary graph";
        return yes;
    }
    if (v1.kind == VK::SolvableBS) {
        if (v1.n != v2.n) return not_iso("solvable Baumslag-Solitar parameters differ");
        yes.witness = "same solvable Baumslag-Solitar group";
        return yes;
    }
    if (!(v1 == v2)) return not_iso("classification flags differ");
    if (betti(r1) != betti(r2)) return not_iso("first Betti numbers differ");
    if (!same_modulus_group(modulus_group(r1).generators, modulus_group(r2).generators))
        return not_iso("modulus groups differ");
    if (!(abelianization(r1) == abelianization(r2))) return not_iso("abelianizations differ");
    if (twist_structure(r1).rank != twist_structure(r2).rank) return not_iso("twist ranks differ");

    CollapsedGraph c1 = collapse_slid(r1), c2 = collapse_slid(r2);
    if (c1.vertices.size() != c2.vertices.size() || c1.edges.size() != c2.edges.size())
        return not_iso("collapsed graphs have different sizes");
    CollapsedMatcher m{r1, r2, c1, c2, canonical_local_data(r1, c1), canonical_local_data(r2, c2), {}, {}, {}, {}, {}};
    m.vmap.assign(c1.vertices.size(), -1);
    m.swap.assign(c1.vertices.size(), 0);
    m.vused.assign(c2.vertices.size(), false);
    m.emap.assign(c1.edges.size(), {0, false});
    m.eused.assign(c2.edges.size(), false);
    if (!m.assign(0)) return not_iso("no isomorphism of collapsed graphs respects the local data");
    for (std::size_t v = 0; v < c1.vertices.size(); ++v)
        yes.vertex_map.push_back({c1.vertices[v].id, c2.vertices[m.vmap[v]].id});
    yes.witness = "collapsed graphs match";
    return yes;
}

BigInt label_product(const Graph &g) {
    BigInt p = 1;
    for (const auto &e : g.edges) p *= BigInt(std::llabs(e.la)) * std::llabs(e.lb);
    return p;
}

std::vector<Graph> f2free_neighbours(const Graph &g) {
    std::vector<Graph> out;
    auto attempt = [&](auto &&make) {
        try {
            out.push_back(make());
        } catch (const Error &) {
        }
    };
    for (int f = 0; f < static_cast<int>(g.edges.size()); ++f) {
        const Edge &e = g.edges[f];
        if (e.is_loop() || std::llabs(e.la) != 2 || std::llabs(e.lb) != 2) continue;
        for (Half across : {Half{f, false}, Half{f, true}})
            for (Half h : g.out(g.origin(across)))
                if (h.edge != f && g.label(h) % g.label(across) == 0) attempt([&] { return slide(g, h, across); });
    }
    for (int l = 0; l < static_cast<int>(g.edges.size()); ++l) {
        auto q = ascending_q(g, l);
        if (!q || *q == 1) continue;
        for (Half h : g.out(g.edges[l].a)) {
            if (h.edge == l) continue;
            attempt([&] { return slide_around_loop(g, h, l, Direction::Multiply); });
            if (std::llabs(*q) >= 2 && g.label(h) % *q == 0)
                attempt([&] { return slide_around_loop(g, h, l, Direction::Divide); });
        }
        for (Label p = 2; p <= std::llabs(*q); ++p) {
            if (*q % p != 0) continue;
            attempt([&] { return induction_move(g, l, p, Direction::Multiply); });
            attempt([&] { return induction_move(g, l, p, Direction::Divide); });
        }
    }
    return out;
}

OracleVerdict oracle_isomorphic(const Graph &g1, const Graph &g2, const BigInt &product_bound) {
    Graph r1 = reduce(g1), r2 = reduce(g2);
    if (label_product(r1) > product_bound || label_product(r2) > product_bound)
        throw Error(ErrorKind::BoundTooSmall, "start graphs exceed the label product bound");
    GraphSet sets[2];
    std::vector<std::size_t> depth[2];
    std::vector<int> frontier[2];
    sets[0].insert(r1);
    sets[1].insert(r2);
    depth[0].push_back(0);
    depth[1].push_back(0);
    frontier[0] = {0};
    frontier[1] = {0};
    OracleVerdict out;
    if (sets[1].find(r1) >= 0) {
        out.iso = true;
        out.states = 2;
        return out;
    }
    int side = 0;
    while (!frontier[0].empty() && !frontier[1].empty()) {
        std::vector<int> next;
        for (int idx : frontier[side]) {
            Graph cur = sets[side].at(idx);
            std::size_t d = depth[side][idx] + 1;
            for (const Graph &n : f2free_neighbours(cur)) {
                if (label_product(n) > product_bound) continue;
                auto [j, fresh] = sets[side].insert(n);
                if (!fresh) continue;
                depth[side].push_back(d);
                next.push_back(j);
                int other = sets[1 - side].find(n);
                if (other >= 0) {
                    out.iso = true;
                    out.depth = d + depth[1 - side][other];
                    out.states = sets[0].size() + sets[1].size();
                    return out;
                }
            }
        }
        frontier[side] = next;
        side = 1 - side;
    }
    out.states = sets[0].size() + sets[1].size();
    return out;
}

nlohmann::json iso_to_json(const IsoVerdict &v) {
    nlohmann::json j{{"verdict", v.kind_name()}, {"witness", v.witness}};
    if (v.kind == IsoVerdict::Kind::Iso) {
        j["vertex_map"] = nlohmann::json::object();
        for (const auto &[a, b] : v.vertex_map) j["vertex_map"][a] = b;
    }
    return j;
}

} // namespace gbs

#include "gbs/twist.hpp"

#include <map>

#include "gbs/invariants.hpp"

namespace gbs {

namespace {

void require_non_elementary(const Graph &g) {
    if (is_elementary(g)) throw Error(ErrorKind::ElementaryInput, "twist group needs a non-elementary graph");
}

int column_of(Half h) { return 2 * h.edge + (h.rev ? 1 : 0); }

// Connected pieces of g with one edge deleted.
std::vector<Graph> pieces_without(const Graph &g, int edge) {
    Graph cut = g;
    cut.edges.erase(cut.edges.begin() + edge);
    std::size_t nv = g.vertices.size();
    std::vector<int> comp(nv, -1);
    int ncomp = 0;
    for (std::size_t s = 0; s < nv; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{static_cast<int>(s)};
        comp[s] = ncomp;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (Half h : cut.out(v)) {
                int w = cut.terminus(h);
                if (comp[w] < 0) {
                    comp[w] = ncomp;
                    stack.push_back(w);
                }
            }
        }
        ++ncomp;
    }
    std::vector<Graph> out(ncomp);
    std::vector<int> local(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        local[v] = static_cast<int>(out[comp[v]].vertices.size());
        out[comp[v]].vertices.push_back(g.vertices[v]);
    }
    for (auto e : cut.edges) {
        int c = comp[e.a];
        e.a = local[e.a];
        e.b = local[e.b];
        out[c].edges.push_back(e);
    }
    return out;
}

} // namespace

TwistPresentation twist_presentation(const Graph &g) {
    require_non_elementary(g);
    TwistPresentation p;
    std::size_t cols = 2 * g.edges.size();
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
        p.generators.push_back({i, false});
        p.generators.push_back({i, true});
    }
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
        Row r(cols, 0);
        r[2 * i] = g.edges[i].la;
        r[2 * i + 1] = g.edges[i].lb;
        p.relations.push_back(r);
    }
    p.edge_rows = g.edges.size();
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
        Row r(cols, 0);
        for (Half h : g.out(v)) r[column_of(h)] += 1;
        p.relations.push_back(r);
    }
    return p;
}

AbelianGroup twist_structure(const Graph &g) {
    TwistPresentation p = twist_presentation(g);
    SmithForm s = smith_normal_form(p.relations, p.generators.size());
    verify_smith(p.relations, s);
    return cokernel(s);
}

bool twist_finite_by_moduli(const Graph &g, Half h) {
    auto pieces = pieces_without(g, h.edge);
    if (pieces.size() == 1) return !modulus_group(g).trivial && modulus_group(pieces[0]).trivial;
    bool infinite = !modulus_group(pieces[0]).trivial && !modulus_group(pieces[1]).trivial;
    return !infinite;
}

TwistOrder twist_order(const Graph &g, Half h) {
    TwistPresentation p = twist_presentation(g);
    std::size_t cols = p.generators.size();
    SmithForm s = smith_normal_form(p.relations, cols);
    verify_smith(p.relations, s);
    Row x(cols, 0);
    x[column_of(h)] = 1;
    TwistOrder t;
    if (auto o = coset_order(s, x)) {
        t.finite = true;
        t.order = *o;
    }
    if (t.finite != twist_finite_by_moduli(g, h))
        throw Error(ErrorKind::CriterionMismatch, "twist order disagrees with the modulus criterion at " + g.half_name(h));
    return t;
}

std::vector<Half> maximal_tree_twist_basis(const Graph &g) {
    require_non_elementary(g);
    std::vector<Half> hs;
    for (int e : spanning_tree(g).non_tree) hs.push_back({e, false});
    return hs;
}

bool generates_finite_index(const Graph &g, const std::vector<Half> &hs) {
    TwistPresentation p = twist_presentation(g);
    std::size_t cols = p.generators.size();
    SmithForm s = smith_normal_form(p.relations, cols);
    std::size_t free_rank = cols - s.rank;
    if (free_rank == 0) return true;
    Matrix images;
    for (Half h : hs) {
        Row r(free_rank, 0);
        for (std::size_t j = s.rank; j < cols; ++j) r[j - s.rank] = s.V[column_of(h)][j];
        images.push_back(r);
    }
    return matrix_rank(images, free_rank) == free_rank;
}

} // namespace gbs

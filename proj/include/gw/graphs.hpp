#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "gw/geometry.hpp"

namespace gw {

struct GEdge {
    int a, b;
    long d;
};

struct LocGraph {
    std::vector<int> labels;   // vertex -> fixed point index
    std::vector<GEdge> edges;
    std::vector<int> marks;    // marking -> vertex

    int V() const { return (int)labels.size(); }
};

struct GraphAut {
    long symmetry = 1;  // |Aut| of the decorated tree
    long order = 1;     // symmetry times product of edge degrees
};

inline Rational edge_degree(const WeightedProjSpace& X, int u, int v, long d) {
    return Rational(d) / Rational(X.w[u] * X.w[v]);
}

inline Rational graph_degree(const WeightedProjSpace& X, const LocGraph& g) {
    Rational s = 0;
    for (auto& e : g.edges) s += edge_degree(X, g.labels[e.a], g.labels[e.b], e.d);
    return s;
}

namespace detail {

using Code = std::vector<long>;

struct Adj {
    std::vector<std::vector<std::pair<int, long>>> nb;
    explicit Adj(const LocGraph& g) : nb(g.V()) {
        for (auto& e : g.edges) {
            nb[e.a].push_back({e.b, e.d});
            nb[e.b].push_back({e.a, e.d});
        }
    }
};

inline std::vector<int> tree_centers(const LocGraph& g, const Adj& A) {
    int n = g.V();
    if (n <= 2) {
        std::vector<int> c;
        for (int i = 0; i < n; ++i) c.push_back(i);
        return c;
    }
    std::vector<int> deg(n);
    std::vector<bool> alive(n, true);
    std::vector<int> leaves;
    for (int i = 0; i < n; ++i) {
        deg[i] = (int)A.nb[i].size();
        if (deg[i] <= 1) leaves.push_back(i);
    }
    int rem = n;
    while (rem > 2) {
        std::vector<int> next;
        for (int l : leaves) {
            alive[l] = false;
            --rem;
            for (auto [v, d] : A.nb[l])
                if (alive[v] && --deg[v] == 1) next.push_back(v);
        }
        leaves = next;
    }
    std::vector<int> c;
    for (int i = 0; i < n; ++i)
        if (alive[i]) c.push_back(i);
    return c;
}

// AHU-style code of the subtree at root; aut accumulates interchangeable siblings
inline Code rooted_code(const LocGraph& g, const Adj& A, const std::vector<std::vector<int>>& mk,
                        int root, int parent, long& aut) {
    std::vector<Code> kids;
    for (auto [v, d] : A.nb[root]) {
        if (v == parent) continue;
        Code c{d};
        Code sub = rooted_code(g, A, mk, v, root, aut);
        c.insert(c.end(), sub.begin(), sub.end());
        kids.push_back(std::move(c));
    }
    std::sort(kids.begin(), kids.end());
    for (size_t i = 0; i < kids.size();) {
        size_t j = i;
        while (j < kids.size() && kids[j] == kids[i]) ++j;
        for (size_t k = 2; k <= j - i; ++k) aut *= (long)k;
        i = j;
    }
    Code out{-1, g.labels[root], (long)mk[root].size()};
    out.insert(out.end(), mk[root].begin(), mk[root].end());
    for (auto& k : kids) out.insert(out.end(), k.begin(), k.end());
    out.push_back(-2);
    return out;
}

} // namespace detail

// canonical code of the decorated tree and its automorphism count
inline std::pair<std::vector<long>, long> canonical_form(const LocGraph& g) {
    detail::Adj A(g);
    std::vector<std::vector<int>> mk(g.V());
    for (int i = 0; i < (int)g.marks.size(); ++i) mk[g.marks[i]].push_back(i);
    auto cs = detail::tree_centers(g, A);
    long aut = 1;
    if (cs.size() == 1) {
        auto c = detail::rooted_code(g, A, mk, cs[0], -1, aut);
        c.insert(c.begin(), 0);
        return {c, aut};
    }
    int x = cs[0], y = cs[1];
    long d = 0;
    for (auto [v, dd] : A.nb[x])
        if (v == y) d = dd;
    auto cx = detail::rooted_code(g, A, mk, x, y, aut);
    auto cy = detail::rooted_code(g, A, mk, y, x, aut);
    if (cx == cy) aut *= 2;
    if (cy < cx) std::swap(cx, cy);
    std::vector<long> c{1, d};
    c.insert(c.end(), cx.begin(), cx.end());
    c.insert(c.end(), cy.begin(), cy.end());
    return {c, aut};
}

struct EnumeratedGraph {
    LocGraph graph;
    GraphAut aut;
    std::vector<long> key;
};

// trees kept in memory before enumeration gives up
inline long& graph_limit() {
    static long lim = 2000000;
    return lim;
}

inline std::vector<EnumeratedGraph> enumerate_graphs(const WeightedProjSpace& X, const Rational& beta, int n) {
    if (beta <= 0) throw MalformedInput("beta must be positive");
    if (n < 0) throw MalformedInput("negative number of markings");
    int N = X.N();
    std::map<std::vector<long>, LocGraph> all;
    std::vector<LocGraph> frontier;
    for (int u = 0; u < N; ++u)
        for (int v = u + 1; v < N; ++v)
            for (long d = 1; edge_degree(X, u, v, d) <= beta; ++d) {
                LocGraph g{{u, v}, {{0, 1, d}}, {}};
                auto key = canonical_form(g).first;
                if (all.emplace(key, g).second) frontier.push_back(g);
            }
    while (!frontier.empty()) {
        std::vector<LocGraph> next;
        for (auto& g : frontier) {
            Rational used = graph_degree(X, g);
            for (int x = 0; x < g.V(); ++x)
                for (int l = 0; l < N; ++l) {
                    if (l == g.labels[x]) continue;
                    for (long d = 1; used + edge_degree(X, g.labels[x], l, d) <= beta; ++d) {
                        LocGraph h = g;
                        h.labels.push_back(l);
                        h.edges.push_back({x, g.V(), d});
                        auto key = canonical_form(h).first;
                        if (all.emplace(key, h).second) next.push_back(std::move(h));
                        if ((long)all.size() > graph_limit())
                            throw Unsupported("more than " + std::to_string(graph_limit()) + " fixed-locus trees");
                    }
                }
        }
        frontier = std::move(next);
    }

    std::map<std::vector<long>, EnumeratedGraph> out;
    bool any = false;
    for (auto& [k, g] : all) {
        if (graph_degree(X, g) != beta) continue;
        any = true;
        long tree_sym = canonical_form(g).second;
        std::vector<int> marks(n, 0);
        // odometer over vertex assignments of the markings
        while (true) {
            LocGraph h = g;
            h.marks = marks;
            std::vector<long> key;
            long sym = 1;
            if (tree_sym == 1) {
                // every placement is its own class
                key = k;
                key.push_back(-9);
                key.insert(key.end(), marks.begin(), marks.end());
            } else {
                std::tie(key, sym) = canonical_form(h);
            }
            if (!out.count(key)) {
                GraphAut a;
                a.symmetry = sym;
                a.order = sym;
                for (auto& e : h.edges) a.order *= e.d;
                out.emplace(key, EnumeratedGraph{h, a, key});
            }
            int i = 0;
            while (i < n && ++marks[i] == g.V()) marks[i++] = 0;
            if (i == n) break;
        }
    }
    if (!any) throw DegreeNotRepresentable("beta=" + to_string(beta) + " is not a sum of edge degrees");
    std::vector<EnumeratedGraph> res;
    res.reserve(out.size());
    for (auto& kv : out) res.push_back(std::move(kv.second));
    return res;
}

inline long graph_count(const WeightedProjSpace& X, const Rational& beta, int n) {
    return (long)enumerate_graphs(X, beta, n).size();
}

} // namespace gw

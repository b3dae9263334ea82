#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "gw/engine.hpp"

namespace gw {

// Kontsevich's recursion for rational plane curves through 3d-1 points
inline std::map<int, Rational> wdvv_p2(int dmax) {
    if (dmax < 1) throw MalformedInput("dmax must be at least 1");
    auto binom = [](long n, long k) {
        Integer r;
        if (k < 0 || k > n) return Integer(0);
        mpz_bin_uiui(r.get_mpz_t(), n, k);
        return r;
    };
    std::map<int, Rational> N{{1, Rational(1)}};
    for (int d = 2; d <= dmax; ++d) {
        Rational s = 0;
        for (int d1 = 1; d1 < d; ++d1) {
            int d2 = d - d1;
            Integer br = d2 * binom(3 * d - 4, 3 * d1 - 2) - d1 * binom(3 * d - 4, 3 * d1 - 1);
            s += N[d1] * N[d2] * Rational(Integer(d1 * d1 * d2) * br);
        }
        N[d] = s;
    }
    return N;
}

struct ConvexResult {
    Rational value;
    std::vector<std::vector<Rational>> specializations;
    std::vector<Rational> values;
    long rejected = 0;
};

// draws distinct small integers until every graph is nondegenerate
inline ConvexResult convex_invariant(const Target& T, const Rational& beta, const std::vector<int>& ins,
                                     int runs = 3, unsigned long seed = 20240601, int bound = 40) {
    if (T.hypersurface && !gorenstein_check(T.X, T.d).gorenstein)
        throw NotConvex("target is not Gorenstein");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-bound, bound);
    ConvexResult out;
    ComputeOptions opt;
    opt.strict = true;
    int tries = 0;
    while ((int)out.values.size() < runs) {
        if (++tries > 200 * runs) throw SpecializationDegenerate("no nondegenerate specialization found");
        std::set<long> used;
        std::vector<Rational> p;
        while ((int)p.size() < T.X.N()) {
            long x = dist(rng);
            if (used.insert(x).second) p.push_back(Rational(x));
        }
        Engine E(T, p, {});
        InvariantResult R;
        try {
            R = compute_invariant(E, beta, ins, opt);
        } catch (const SpecializationDegenerate&) {
            ++out.rejected;
            continue;
        }
        if (!R.convex) throw NotConvex("a fixed locus has nonzero obstruction H^1");
        out.specializations.push_back(p);
        out.values.push_back(R.invariant);
    }
    for (auto& v : out.values)
        if (v != out.values[0]) throw Inconsistent("convex invariant depends on the specialization");
    out.value = out.values[0];
    return out;
}

// labeled decorated trees, canonicalized by minimizing over all vertex relabelings
struct BruteForceClasses {
    long labeled = 0;
    std::map<std::vector<long>, long> aut;  // canonical encoding -> automorphism count
    std::map<std::vector<long>, int> vertices;
};

inline std::vector<long> labeled_encoding(const LocGraph& g, const std::vector<int>& perm) {
    int V = g.V();
    std::vector<long> lab(V);
    for (int i = 0; i < V; ++i) lab[perm[i]] = g.labels[i];
    std::vector<std::tuple<int, int, long>> es;
    for (auto& e : g.edges) {
        int a = perm[e.a], b = perm[e.b];
        es.emplace_back(std::min(a, b), std::max(a, b), e.d);
    }
    std::sort(es.begin(), es.end());
    std::vector<long> enc(lab.begin(), lab.end());
    for (auto& [a, b, d] : es) {
        enc.push_back(a);
        enc.push_back(b);
        enc.push_back(d);
    }
    for (int m : g.marks) enc.push_back(perm[m]);
    return enc;
}

// canonical encoding, stabilizer order, and the whole orbit of encodings
inline std::pair<std::vector<long>, long> brute_canonical(const LocGraph& g,
                                                          std::set<std::vector<long>>* orbit = nullptr) {
    std::vector<int> perm(g.V());
    for (int i = 0; i < g.V(); ++i) perm[i] = i;
    auto self = labeled_encoding(g, perm);
    std::vector<long> best;
    long aut = 0;
    do {
        auto e = labeled_encoding(g, perm);
        if (e == self) ++aut;
        if (best.empty() || e < best) best = e;
        if (orbit) orbit->insert(std::move(e));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {best, aut};
}

inline BruteForceClasses brute_force_graphs(const WeightedProjSpace& X, const Rational& beta, int n, int max_vertices) {
    BruteForceClasses out;
    int N = X.N();
    Rational mindeg = -1;
    for (int u = 0; u < N; ++u)
        for (int v = u + 1; v < N; ++v) {
            Rational e = edge_degree(X, u, v, 1);
            if (mindeg < 0 || e < mindeg) mindeg = e;
        }
    for (int V = 2; V <= max_vertices; ++V) {
        if (mindeg * (V - 1) > beta) break;
        std::set<std::vector<long>> seen;
        std::vector<int> ident(V);
        for (int i = 0; i < V; ++i) ident[i] = i;
        // Pruefer sequences
        std::vector<int> seq(std::max(V - 2, 0), 0);
        while (true) {
            std::vector<GEdge> edges;
            {
                std::vector<int> degc(V, 1);
                for (int x : seq) ++degc[x];
                for (int x : seq) {
                    int leaf = 0;
                    while (degc[leaf] != 1) ++leaf;
                    edges.push_back({leaf, x, 1});
                    --degc[leaf];
                    --degc[x];
                }
                int a = -1, b = -1;
                for (int i = 0; i < V; ++i)
                    if (degc[i] == 1) (a < 0 ? a : b) = i;
                edges.push_back({a, b, 1});
            }
            std::vector<int> lab(V, 0);
            while (true) {
                bool ok = true;
                for (auto& e : edges) ok = ok && lab[e.a] != lab[e.b];
                if (ok) {
                    // edge degrees with exact total beta
                    std::vector<long> ds(edges.size(), 1);
                    std::function<void(size_t, Rational)> rec = [&](size_t k, Rational used) {
                        if (k == edges.size()) {
                            if (used != beta) return;
                            LocGraph g{lab, edges, {}};
                            for (size_t i = 0; i < edges.size(); ++i) g.edges[i].d = ds[i];
                            std::vector<int> mk(n, 0);
                            while (true) {
                                g.marks = mk;
                                ++out.labeled;
                                if (!seen.count(labeled_encoding(g, ident))) {
                                    auto [key, aut] = brute_canonical(g, &seen);
                                    out.aut[key] = aut;
                                    out.vertices[key] = V;
                                }
                                int i = 0;
                                while (i < n && ++mk[i] == V) mk[i++] = 0;
                                if (i == n) break;
                            }
                            return;
                        }
                        for (long d = 1;; ++d) {
                            Rational e = edge_degree(X, lab[edges[k].a], lab[edges[k].b], d);
                            if (used + e > beta) break;
                            ds[k] = d;
                            rec(k + 1, used + e);
                        }
                    };
                    rec(0, Rational(0));
                }
                int i = 0;
                while (i < V && ++lab[i] == N) lab[i++] = 0;
                if (i == V) break;
            }
            int i = 0;
            while (i < (int)seq.size() && ++seq[i] == V) seq[i++] = 0;
            if (i == (int)seq.size()) break;
        }
    }
    return out;
}

} // namespace gw

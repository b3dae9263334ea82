#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "gw/exact.hpp"

namespace gw {

struct WeightedProjSpace {
    std::vector<long> w;

    WeightedProjSpace() = default;
    explicit WeightedProjSpace(std::vector<long> ws) : w(std::move(ws)) {
        if (w.size() < 2) throw MalformedInput("need at least two weights");
        for (long x : w)
            if (x < 1) throw MalformedInput("weights must be positive");
    }
    int N() const { return (int)w.size(); }
    long weight_sum() const { return std::accumulate(w.begin(), w.end(), 0L); }

    // gcd of every N-1 subset is 1
    bool well_formed() const {
        for (int j = 0; j < N(); ++j) {
            long g = 0;
            for (int i = 0; i < N(); ++i)
                if (i != j) g = std::gcd(g, w[i]);
            if (g != 1) return false;
        }
        return true;
    }
};

// tangent weight at p_j in direction i, with its residual mu_{w_j} character
struct TangentWeight {
    int i;
    LinForm weight;
    long character;
};

inline std::vector<TangentWeight> tangent_weights(const WeightedProjSpace& X, int j) {
    if (j < 0 || j >= X.N()) throw MalformedInput("fixed point index out of range");
    std::vector<TangentWeight> out;
    for (int i = 0; i < X.N(); ++i) {
        if (i == j) continue;
        LinForm f = LinForm::var(i);
        f.add(j, -rat(X.w[i], X.w[j]));
        out.push_back({i, f, mod(X.w[i], X.w[j])});
    }
    return out;
}

// O(d)|_{p_j}
inline LinForm bundle_fiber_weight(const WeightedProjSpace& X, long d, int j) {
    return LinForm(j, -rat(d, X.w[j]));
}

// equivariant lift of the hyperplane class, H|_{p_j} = c_1(O(1))|_{p_j}
inline LinForm hyperplane_lift(const WeightedProjSpace& X, int j) {
    return bundle_fiber_weight(X, 1, j);
}

// order[k] is the variable sitting at chain position k
struct ChainStructure {
    WeightedProjSpace space;
    std::vector<long> a;
    long d = 0;
    std::vector<int> order;

    bool valid() const {
        int N = space.N();
        if ((int)a.size() != N || (int)order.size() != N) return false;
        for (int k = 0; k < N; ++k) {
            if (a[k] < 1) return false;
            long wk = space.w[order[k]];
            long next = k + 1 < N ? space.w[order[k + 1]] : 0;
            if (a[k] * wk + next != d) return false;
        }
        return true;
    }
};

struct LoopStructure {
    WeightedProjSpace space;
    std::vector<long> a;
    long d = 0;

    bool valid() const {
        int N = space.N();
        if ((int)a.size() != N) return false;
        for (int k = 0; k < N; ++k)
            if (a[k] < 1 || a[k] * space.w[k] + space.w[(k + 1) % N] != d) return false;
        return true;
    }
};

struct Specialization {
    std::vector<Rational> p;
    std::string description = "custom";
    Rational hodge_twist = 0;
};

inline Specialization chain_specialization(const ChainStructure& c) {
    if (!c.valid()) throw MalformedInput("invalid chain structure");
    int N = c.space.N();
    Specialization s;
    s.p.assign(N, Rational(0));
    Rational cur = 1;
    for (int k = 0; k < N; ++k) {
        s.p[c.order[k]] = cur;
        cur *= -c.a[k];
    }
    s.description = "chain";
    s.hodge_twist = Rational(c.a[N - 1]) * s.p[c.order[N - 1]];
    return s;
}

inline bool chain_in_order(const WeightedProjSpace& X, long d, const std::vector<int>& order,
                           std::vector<long>& a) {
    int N = X.N();
    a.assign(N, 0);
    for (int k = 0; k < N; ++k) {
        long wk = X.w[order[k]];
        long rest = d - (k + 1 < N ? X.w[order[k + 1]] : 0);
        if (rest <= 0 || rest % wk != 0) return false;
        a[k] = rest / wk;
    }
    return true;
}

inline std::vector<ChainStructure> find_chain_structures(const WeightedProjSpace& X, long d,
                                                         bool permute = false) {
    std::vector<ChainStructure> out;
    std::vector<int> order(X.N());
    std::iota(order.begin(), order.end(), 0);
    do {
        std::vector<long> a;
        if (chain_in_order(X, d, order, a)) out.push_back({X, a, d, order});
        if (!permute) break;
    } while (std::next_permutation(order.begin(), order.end()));
    return out;
}

struct GorensteinResult {
    bool gorenstein;
    std::vector<int> offending;
};

inline GorensteinResult gorenstein_check(const WeightedProjSpace& X, long d) {
    GorensteinResult r{true, {}};
    for (int j = 0; j < X.N(); ++j)
        if (d % X.w[j] != 0) {
            r.gorenstein = false;
            r.offending.push_back(j);
        }
    return r;
}

// sum_j H|_{p_j}^{N-1} / (w_j e(T_{p_j})) specialized at p
inline Rational calibration_integral(const WeightedProjSpace& X, const std::vector<Rational>& p) {
    Rational tot = 0;
    for (int j = 0; j < X.N(); ++j) {
        Rational h = specialize_linform(hyperplane_lift(X, j), p);
        Rational num = 1, den = X.w[j];
        for (int k = 0; k + 1 < X.N(); ++k) num *= h;
        for (auto& tw : tangent_weights(X, j)) den *= specialize_linform(tw.weight, p);
        if (den == 0) throw SpecializationDegenerate("tangent weight vanishes at p" + std::to_string(j + 1));
        tot += num / den;
    }
    return tot;
}

} // namespace gw

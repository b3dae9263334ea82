#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "gw/geometry.hpp"

namespace gw {

// H^0 - H^1 weights of a T-equivariant sheaf on a fixed locus
struct WeightClass {
    std::vector<LinForm> plus, minus;

    // drop common elements of plus and minus
    void cancel() {
        std::vector<LinForm> p2;
        std::vector<bool> used(minus.size(), false);
        for (auto& f : plus) {
            bool hit = false;
            for (size_t i = 0; i < minus.size(); ++i)
                if (!used[i] && minus[i] == f) {
                    used[i] = hit = true;
                    break;
                }
            if (!hit) p2.push_back(f);
        }
        std::vector<LinForm> m2;
        for (size_t i = 0; i < minus.size(); ++i)
            if (!used[i]) m2.push_back(minus[i]);
        plus = std::move(p2);
        minus = std::move(m2);
    }
};

// source of an edge cover: the football P(a,b) mapping z0^alpha -> x_u, z1^gamma -> x_v
struct EdgeCover {
    int u = 0, v = 0;
    long d = 0;
    long a = 1, b = 1;   // source isotropy at the u- and v-ends
    long c = 0;          // O(1) pulls back to O_{P(a,b)}(c)
    long alpha = 1, gamma = 1;
    long ku = 0, kv = 0;  // monodromy of the source points, in units of the target isotropy
    LinForm wbar;        // coarse tangent weight at the u-end
    LinForm omega_u, omega_v;

    // character of the node at the vertex side
    long flag_g_u(long wu) const { return mod(-ku, wu); }
    long flag_g_v(long wv) const { return mod(-kv, wv); }
};

inline long inverse_mod(long x, long m) {
    long t = 0, nt = 1, r = m, nr = mod(x, m);
    while (nr) {
        long q = r / nr;
        long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw Inconsistent("non-invertible residue");
    return mod(t, m);
}

inline EdgeCover edge_cover_data(const WeightedProjSpace& X, int u, int v, long d) {
    if (u == v || u < 0 || v < 0 || u >= X.N() || v >= X.N()) throw MalformedInput("bad edge endpoints");
    if (d < 1) throw NoSuchCover("edge degree must be positive");
    long wu = X.w[u], wv = X.w[v];
    if (std::gcd(wu, wv) != 1)
        throw Unsupported("edge between points with non-coprime isotropy " + std::to_string(wu) + "," +
                          std::to_string(wv));
    EdgeCover e;
    e.u = u;
    e.v = v;
    e.d = d;
    long gu = std::gcd(wu, d), gv = std::gcd(wv, d);
    e.a = wu / gu;
    e.b = wv / gv;
    e.c = d / (gu * gv);
    e.alpha = d / gv;
    e.gamma = d / gu;
    e.ku = e.a > 1 ? mod(e.c * inverse_mod(e.b, e.a), e.a) * gu : 0;
    e.kv = e.b > 1 ? mod(e.c * inverse_mod(e.a, e.b), e.b) * gv : 0;
    e.wbar = LinForm(v, rat(wu, d));
    e.wbar.add(u, -rat(wv, d));
    e.omega_u = rat(1, e.a) * e.wbar;
    e.omega_v = rat(-1, e.b) * e.wbar;
    return e;
}

// f^*O(m) twisted by chi on the edge source
struct FootballBundle {
    EdgeCover cover;
    long m = 0;
    LinForm chi;
};

inline long football_degree_units(const FootballBundle& B) { return B.cover.c * B.m; }

// h^0 - h^1 by orbifold Riemann-Roch on P(a,b)
inline Rational orbifold_rr(long a, long b, long n) {
    Rational chi = rat(n, a * b) + 1;
    if (a > 1) chi -= rat(mod(n * inverse_mod(b, a), a), a);
    if (b > 1) chi -= rat(mod(n * inverse_mod(a, b), b), b);
    return chi;
}

// invariant monomials z0^p z1^q with a p + b q = n: H^0 for p,q >= 0, H^1 (Cech) for p,q <= -1
inline WeightClass football_cohomology(const FootballBundle& B) {
    const EdgeCover& e = B.cover;
    long n = football_degree_units(B);
    WeightClass W;
    auto weight = [&](long p, long q) {
        LinForm f = B.chi;
        f.add(e.u, -rat(p, e.alpha));
        f.add(e.v, -rat(q, e.gamma));
        return f;
    };
    if (n >= 0) {
        for (long p = 0; e.a * p <= n; ++p) {
            long r = n - e.a * p;
            if (r % e.b == 0) W.plus.push_back(weight(p, r / e.b));
        }
    }
    if (n <= -e.a - e.b) {
        for (long p = -1; e.a * p >= n + e.b; --p) {
            long r = n - e.a * p;
            if (r % e.b == 0 && r / e.b <= -1) W.minus.push_back(weight(p, r / e.b));
        }
    }
    Rational chi = orbifold_rr(e.a, e.b, n);
    if (chi != Rational((long)W.plus.size() - (long)W.minus.size()))
        throw Inconsistent("football cohomology disagrees with Riemann-Roch");
    return W;
}

} // namespace gw

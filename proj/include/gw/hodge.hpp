#pragma once

#include <map>
#include <vector>

#include "gw/series.hpp"

namespace gw {

// Bernoulli numbers with B_1 = -1/2
inline const Rational& bernoulli(int n) {
    static std::vector<Rational> B{Rational(1)};
    while ((int)B.size() <= n) {
        int m = (int)B.size();
        Rational s = 0;
        Integer binom = 1;  // C(m+1, k)
        for (int k = 0; k < m; ++k) {
            s += Rational(binom) * B[k];
            binom = binom * (m + 1 - k) / (k + 1);
        }
        B.push_back(-s / Rational(m + 1));
    }
    return B[n];
}

inline Rational bernoulli_poly(int n, const Rational& x) {
    Rational s = 0;
    Integer binom = 1;
    std::vector<Rational> pw(n + 1);
    pw[0] = 1;
    for (int i = 1; i <= n; ++i) pw[i] = pw[i - 1] * x;
    for (int k = 0; k <= n; ++k) {
        s += Rational(binom) * bernoulli(k) * pw[n - k];
        binom = binom * (n - k) / (k + 1);
    }
    return s;
}

inline Rational factorial(int n) {
    Integer f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Rational(f);
}

// leg of a vertex: omega (tangent weight at the flag), isotropy r, monodromy g;
// markings have no omega
template <class S>
struct Leg {
    bool mark = false;
    S omega;
    long r = 1;
    long g = 0;
};

// twisting character: e_T(R pi_* L_c (x) u)^s
template <class S>
struct Character {
    long c;
    S u;
    int s;
};

inline Rational age(long c, long g, long r) { return rat(mod(c * g, r), r); }

template <class S>
S classical_vertex(const std::vector<Leg<S>>& legs) {
    int m = (int)legs.size();
    S sum(Rational(0)), prod(Rational(1));
    for (auto& l : legs) {
        if (l.mark) continue;
        sum = sum + checked_div(S(Rational(1)), S(Rational(l.r)) * l.omega, "zero flag weight");
        prod = prod * l.omega;
    }
    return checked_div(ipow(sum, m - 3), prod, "zero flag weight");
}

namespace detail {

template <class S>
std::vector<S> series_mul(const std::vector<S>& a, const std::vector<S>& b, int D) {
    std::vector<S> out(D + 1, S(Rational(0)));
    for (int i = 0; i <= D && i < (int)a.size(); ++i) {
        if (is_zero(a[i])) continue;
        for (int j = 0; i + j <= D && j < (int)b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
    }
    return out;
}

template <class S>
std::vector<S> series_exp(const std::vector<S>& a, int D) {
    std::vector<S> out(D + 1, S(Rational(0))), term(D + 1, S(Rational(0)));
    out[0] = S(Rational(1));
    term[0] = S(Rational(1));
    for (int j = 1; j <= D; ++j) {
        term = series_mul(term, a, D);
        for (auto& t : term) t = t * S(rat(1, j));
        for (int i = 0; i <= D; ++i) out[i] = out[i] + term[i];
    }
    return out;
}

} // namespace detail

// integral over the moduli of r-spin-like admissible covers of a genus-0 vertex of
// prod_legs 1/(omega - psi/r) times the twisted Euler classes, via Chiodo's formula
// and a tree recursion over boundary strata
template <class S>
S chiodo_vertex(long r, const std::vector<Leg<S>>& legs, const std::vector<Character<S>>& chars) {
    using detail::series_exp;
    using detail::series_mul;
    int m = (int)legs.size();
    int D = m - 3;
    const S zero(Rational(0));
    auto sck = [&](const Character<S>& ch, int k) {
        Rational c = Rational(ch.s) * factorial(k - 1) * (k % 2 == 1 ? 1 : -1);
        return checked_div(S(c), ipow(ch.u, k), "zero character weight");
    };

    std::vector<S> ck(D + 1, zero);
    for (auto& ch : chars)
        for (int k = 1; k <= D; ++k) ck[k] = ck[k] + sck(ch, k) * S(bernoulli_poly(k + 1, 0) / factorial(k + 1));
    std::vector<S> neg(D + 1, zero);
    for (int k = 0; k <= D; ++k) neg[k] = -ck[k];
    auto e = series_exp(neg, D);
    std::vector<S> Pz(D + 1, zero);
    for (int i = 1; i <= D; ++i) Pz[i] = -e[i] * S(1 / factorial(i + 1));
    std::vector<std::vector<S>> Ppow{std::vector<S>(D + 1, zero)};
    Ppow[0][0] = S(Rational(1));
    for (int k = 1; k <= D; ++k) Ppow.push_back(series_mul(Ppow.back(), Pz, D));
    auto Phi = [&](int n, int B) {
        int deg = n - 3 - B;
        S tot = zero;
        if (deg < 0) return tot;
        for (int k = 0; k <= deg; ++k)
            if (!is_zero(Ppow[k][deg])) tot = tot + S(factorial(n + k - 3) / factorial(k)) * Ppow[k][deg];
        return tot;
    };

    std::vector<std::vector<S>> legser;
    for (auto& l : legs) {
        std::vector<S> lg(D + 1, zero);
        for (int k = 1; k <= D; ++k)
            for (auto& ch : chars)
                lg[k] = lg[k] - sck(ch, k) * S(bernoulli_poly(k + 1, age(ch.c, l.g, r)) / factorial(k + 1));
        auto ser = series_exp(lg, D);
        if (!l.mark) {
            std::vector<S> gs;
            S pw = checked_div(S(Rational(1)), l.omega, "zero flag weight");
            for (int b = 0; b <= D; ++b) {
                gs.push_back(pw);
                pw = checked_div(pw, S(Rational(l.r)) * l.omega, "zero flag weight");
            }
            ser = series_mul(ser, gs, D);
        }
        legser.push_back(ser);
    }

    using Key = std::pair<int, int>;
    auto edge_coeffs = [&](long wgt) {
        std::map<Key, S> A, Q;
        for (int k = 1; k <= D + 1; ++k) {
            S sig = zero;
            for (auto& ch : chars)
                sig = sig + sck(ch, k) * S(bernoulli_poly(k + 1, age(ch.c, wgt, r)) / factorial(k + 1));
            if (is_zero(sig)) continue;
            A[{k, 0}] = sig;
            A[{0, k}] = (k % 2 == 0) ? -sig : sig;
            for (int i = 0; i < k; ++i) {
                int j = k - 1 - i;
                Key key{i, j};
                S term = (j % 2 == 0) ? sig : -sig;
                auto it = Q.find(key);
                if (it == Q.end())
                    Q.emplace(key, term);
                else
                    it->second = it->second + term;
            }
        }
        auto mul = [&](const std::map<Key, S>& X, const std::map<Key, S>& Y) {
            std::map<Key, S> Z;
            for (auto& [kx, x] : X)
                for (auto& [ky, y] : Y) {
                    if (kx.first + kx.second + ky.first + ky.second > D) continue;
                    Key key{kx.first + ky.first, kx.second + ky.second};
                    auto it = Z.find(key);
                    if (it == Z.end())
                        Z.emplace(key, x * y);
                    else
                        it->second = it->second + x * y;
                }
            return Z;
        };
        std::map<Key, S> tot{{{0, 0}, S(Rational(1))}}, Aj{{{0, 0}, S(Rational(1))}};
        for (int j = 1; j <= D; ++j) {
            Aj = mul(Aj, A);
            Rational f = Rational(j % 2 == 0 ? 1 : -1) / factorial(j + 1);
            for (auto& [k, v] : Aj) {
                auto it = tot.find(k);
                if (it == tot.end())
                    tot.emplace(k, v * S(f));
                else
                    it->second = it->second + v * S(f);
            }
        }
        return mul(Q, tot);
    };

    int n_o = m - 1;
    unsigned full = (1u << n_o) - 1;
    std::vector<std::vector<S>> Ehat(full + 1);
    std::vector<std::map<Key, S>> H(full + 1);
    std::vector<bool> has_e(full + 1, false);
    for (int i = 0; i < n_o; ++i) {
        std::vector<S> s;
        for (int b = 0; b <= D; ++b) s.push_back(legser[i + 1][b] * S(1 / factorial(b)));
        Ehat[1u << i] = s;
        has_e[1u << i] = true;
    }
    H[0][{0, 0}] = S(Rational(1));
    std::vector<unsigned> order;
    for (unsigned s = 1; s <= full; ++s) order.push_back(s);
    std::stable_sort(order.begin(), order.end(),
                     [](unsigned a, unsigned b) { return __builtin_popcount(a) < __builtin_popcount(b); });
    std::map<long, std::map<Key, S>> ecache;
    for (unsigned Sm : order) {
        unsigned low = Sm & (~Sm + 1);
        std::map<Key, S> acc;
        for (unsigned T = Sm; T; T = (T - 1) & Sm) {
            if (!(T & low) || !has_e[T]) continue;
            unsigned rest = Sm & ~T;
            for (auto& [kb, v] : H[rest]) {
                for (int b = 0; b <= D; ++b) {
                    auto& x = Ehat[T][b];
                    if (is_zero(x) || kb.second + b > D) continue;
                    Key key{kb.first + 1, kb.second + b};
                    auto it = acc.find(key);
                    if (it == acc.end())
                        acc.emplace(key, v * x);
                    else
                        it->second = it->second + v * x;
                }
            }
        }
        H[Sm] = acc;
        if (__builtin_popcount(Sm) >= 2 && Sm != full) {
            std::vector<S> sub;
            for (int q = 0; q <= D; ++q) {
                S sq = zero;
                for (auto& [kb, v] : acc)
                    if (kb.first >= 2) sq = sq + Phi(kb.first + 1, q + kb.second) * v;
                sub.push_back(sq * S(1 / factorial(q)));
            }
            long g = 0;
            for (int i = 0; i < n_o; ++i)
                if (Sm >> i & 1) g += legs[i + 1].g;
            g = mod(g, r);
            auto it = ecache.find(g);
            if (it == ecache.end()) it = ecache.emplace(g, edge_coeffs(g)).first;
            std::vector<S> br(D + 1, zero);
            for (auto& [kq, e] : it->second)
                if (kq.first <= D) br[kq.first] = br[kq.first] + e * sub[kq.second];
            std::vector<S> eh;
            for (int b = 0; b <= D; ++b) eh.push_back(br[b] * S(1 / factorial(b)));
            Ehat[Sm] = eh;
            has_e[Sm] = true;
            for (int b = 0; b <= D; ++b) {
                if (is_zero(eh[b])) continue;
                Key key{1, b};
                auto jt = H[Sm].find(key);
                if (jt == H[Sm].end())
                    H[Sm].emplace(key, eh[b]);
                else
                    jt->second = jt->second + eh[b];
            }
        }
    }
    S tot = zero;
    for (int b0 = 0; b0 <= D; ++b0)
        for (auto& [kb, v] : H[full])
            if (kb.first >= 2) tot = tot + legser[0][b0] * S(1 / factorial(b0)) * Phi(kb.first + 1, b0 + kb.second) * v;
    return tot;
}

// full vertex factor at a point of isotropy r with m >= 3 special points
template <class S>
S vertex_integral(long r, const std::vector<Leg<S>>& legs, const std::vector<Character<S>>& chars,
                  int& degree) {
    int m = (int)legs.size();
    S pref = S(rat(1, r));
    std::vector<Character<S>> twisted;
    degree = -(m - 3);
    for (auto& l : legs)
        if (!l.mark) --degree;
    for (auto& ch : chars) {
        Rational tot = 0;
        for (auto& l : legs) tot += age(ch.c, l.g, r);
        if (tot.get_den() != 1) throw Inconsistent("fractional total age at a vertex");
        long rho = 1 - tot.get_num().get_si();
        pref = pref * ipow(ch.u, ch.s * rho);
        degree += ch.s * rho;
        if (rho <= -1) twisted.push_back(ch);
    }
    if (twisted.empty() || m == 3) return pref * classical_vertex(legs);
    return pref * chiodo_vertex(r, legs, twisted);
}

} // namespace gw

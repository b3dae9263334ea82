#pragma once

#include <algorithm>
#include <vector>

#include "gw/exact.hpp"

namespace gw {

// truncated Laurent series eps^v (c0 + c1 eps + ...), c0 != 0 unless empty;
// c.size() is the relative precision
class Laurent {
public:
    static int& precision() {
        static thread_local int p = 6;
        return p;
    }

    Laurent() : v_(precision()) {}
    Laurent(const Rational& x) {
        if (x == 0) {
            v_ = precision();
        } else {
            v_ = 0;
            c_.assign(precision(), Rational(0));
            c_[0] = x;
        }
    }
    Laurent(long x) : Laurent(Rational(x)) {}

    // a + b eps, exact
    static Laurent lin(const Rational& a, const Rational& b) {
        Laurent r;
        int P = precision();
        if (a != 0) {
            r.v_ = 0;
            r.c_.assign(P, Rational(0));
            r.c_[0] = a;
            if (P > 1) r.c_[1] = b;
        } else if (b != 0) {
            r.v_ = 1;
            r.c_.assign(P, Rational(0));
            r.c_[0] = b;
        } else {
            r.v_ = P;
        }
        return r;
    }

    int valuation() const { return v_; }
    int abs_precision() const { return v_ + (int)c_.size(); }
    bool is_zero() const { return c_.empty(); }

    Rational coeff(int k) const {
        if (k >= abs_precision()) throw SpecializationDegenerate("series precision exhausted");
        if (k < v_) return 0;
        return c_[k - v_];
    }

    friend Laurent operator+(const Laurent& x, const Laurent& y) {
        int ap = std::min(x.abs_precision(), y.abs_precision());
        int v = std::min(x.v_, y.v_);
        Laurent r;
        r.v_ = v;
        r.c_.assign(std::max(ap - v, 0), Rational(0));
        for (size_t i = 0; i < x.c_.size() && x.v_ + (int)i < ap; ++i) r.c_[x.v_ + i - v] += x.c_[i];
        for (size_t i = 0; i < y.c_.size() && y.v_ + (int)i < ap; ++i) r.c_[y.v_ + i - v] += y.c_[i];
        r.norm();
        return r;
    }
    friend Laurent operator-(const Laurent& x) {
        Laurent r = x;
        for (auto& a : r.c_) a = -a;
        return r;
    }
    friend Laurent operator-(const Laurent& x, const Laurent& y) { return x + (-y); }
    friend Laurent operator*(const Laurent& x, const Laurent& y) {
        size_t n = std::min(x.c_.size(), y.c_.size());
        Laurent r;
        r.v_ = x.v_ + y.v_;
        r.c_.assign(n, Rational(0));
        for (size_t i = 0; i < n; ++i) {
            if (x.c_[i] == 0) continue;
            for (size_t j = 0; i + j < n; ++j) r.c_[i + j] += x.c_[i] * y.c_[j];
        }
        r.norm();
        return r;
    }
    Laurent inv() const {
        if (c_.empty()) throw SpecializationDegenerate("division by a series with no known nonzero term");
        size_t n = c_.size();
        Laurent r;
        r.v_ = -v_;
        r.c_.assign(n, Rational(0));
        r.c_[0] = 1 / c_[0];
        for (size_t k = 1; k < n; ++k) {
            Rational s = 0;
            for (size_t i = 1; i <= k; ++i) s += c_[i] * r.c_[k - i];
            r.c_[k] = -s / c_[0];
        }
        return r;
    }
    friend Laurent operator/(const Laurent& x, const Laurent& y) { return x * y.inv(); }
    Laurent& operator+=(const Laurent& y) { return *this = *this + y; }
    Laurent& operator-=(const Laurent& y) { return *this = *this - y; }
    Laurent& operator*=(const Laurent& y) { return *this = *this * y; }
    Laurent& operator/=(const Laurent& y) { return *this = *this / y; }

private:
    void norm() {
        size_t i = 0;
        while (i < c_.size() && c_[i] == 0) ++i;
        if (i) {
            c_.erase(c_.begin(), c_.begin() + i);
            v_ += (int)i;
        }
    }
    int v_;
    std::vector<Rational> c_;
};

inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const Laurent& x) { return x.is_zero(); }

// division that reports a vanishing denominator instead of faulting
template <class S, class B>
S checked_div(const S& a, const B& b0, const char* what) {
    S b(b0);
    if (is_zero(b)) throw SpecializationDegenerate(what);
    return a / b;
}

template <class S>
S ipow(const S& x, long k) {
    if (k < 0) return checked_div(S(Rational(1)), ipow(x, -k), "negative power of zero");
    S r(Rational(1));
    for (long i = 0; i < k; ++i) r = r * x;
    return r;
}

} // namespace gw

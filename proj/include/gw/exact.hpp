#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "gw/errors.hpp"

namespace gw {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long n, long d = 1) {
    if (d == 0) throw DivisionByZero("zero denominator");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

// "num/den", den omitted when 1
inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_rational(const std::string& s) {
    Rational q;
    auto slash = s.find('/');
    std::string a = s.substr(0, slash);
    std::string b = slash == std::string::npos ? "1" : s.substr(slash + 1);
    auto ok = [](const std::string& x, bool sign) {
        if (x.empty()) return false;
        size_t i = 0;
        if (sign && (x[0] == '-' || x[0] == '+')) i = 1;
        if (i == x.size()) return false;
        for (; i < x.size(); ++i)
            if (x[i] < '0' || x[i] > '9') return false;
        return true;
    };
    if (!ok(a, true) || !ok(b, false)) throw MalformedInput("bad rational '" + s + "'");
    Integer num(a[0] == '+' ? a.substr(1) : a), den(b);
    if (den == 0) throw DivisionByZero("zero denominator in '" + s + "'");
    q = Rational(num, den);
    q.canonicalize();
    return q;
}

// floor(a/b) for b > 0
inline long floordiv(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

// sparse linear form in t_0..t_{N-1} (0-based internally)
class LinForm {
public:
    LinForm() = default;
    LinForm(int i, const Rational& c) { add(i, c); }

    static LinForm var(int i) { return LinForm(i, 1); }

    void add(int i, const Rational& c) {
        if (c == 0) return;
        auto it = c_.find(i);
        if (it == c_.end()) {
            c_.emplace(i, c);
        } else {
            it->second += c;
            if (it->second == 0) c_.erase(it);
        }
    }

    Rational coeff(int i) const {
        auto it = c_.find(i);
        return it == c_.end() ? Rational(0) : it->second;
    }

    bool is_zero() const { return c_.empty(); }
    const std::map<int, Rational>& terms() const { return c_; }

    LinForm& operator+=(const LinForm& o) {
        for (auto& [i, c] : o.c_) add(i, c);
        return *this;
    }
    LinForm& operator-=(const LinForm& o) {
        for (auto& [i, c] : o.c_) add(i, -c);
        return *this;
    }
    LinForm& operator*=(const Rational& s) {
        if (s == 0) {
            c_.clear();
            return *this;
        }
        for (auto& kv : c_) kv.second *= s;
        return *this;
    }
    friend LinForm operator+(LinForm a, const LinForm& b) { return a += b; }
    friend LinForm operator-(LinForm a, const LinForm& b) { return a -= b; }
    friend LinForm operator-(LinForm a) { return a *= -1; }
    friend LinForm operator*(const Rational& s, LinForm a) { return a *= s; }
    friend bool operator==(const LinForm& a, const LinForm& b) { return a.c_ == b.c_; }
    friend bool operator<(const LinForm& a, const LinForm& b) {
        auto x = a.c_.begin(), y = b.c_.begin();
        for (; x != a.c_.end() && y != b.c_.end(); ++x, ++y) {
            if (x->first != y->first) return x->first < y->first;
            if (x->second != y->second) return x->second < y->second;
        }
        return x == a.c_.end() && y != b.c_.end();
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto& [i, c] : c_) {
            Rational a = abs(c);
            std::string sign = c < 0 ? "-" : (first ? "" : "+");
            s += sign;
            if (a != 1) s += to_string(a) + "*";
            s += "t" + std::to_string(i + 1);
            first = false;
        }
        return s;
    }

private:
    std::map<int, Rational> c_;
};

// f(p t) = c t
inline Rational specialize_linform(const LinForm& f, const std::vector<Rational>& p) {
    Rational c = 0;
    for (auto& [i, a] : f.terms()) {
        if (i < 0 || i >= (int)p.size()) throw MalformedInput("specialization vector too short");
        c += a * p[i];
    }
    return c;
}

// univariate polynomial in t, dense, no trailing zeros
class Poly {
public:
    Poly() = default;
    Poly(const Rational& c) {
        if (c != 0) a_.push_back(c);
    }
    explicit Poly(std::vector<Rational> a) : a_(std::move(a)) { trim(); }

    static Poly monomial(const Rational& c, int k) {
        if (c == 0) return Poly();
        std::vector<Rational> a(k + 1, Rational(0));
        a[k] = c;
        return Poly(std::move(a));
    }

    int degree() const { return (int)a_.size() - 1; }
    bool is_zero() const { return a_.empty(); }
    const std::vector<Rational>& coeffs() const { return a_; }
    Rational coeff(int k) const { return k >= 0 && k < (int)a_.size() ? a_[k] : Rational(0); }
    Rational lead() const { return a_.empty() ? Rational(0) : a_.back(); }

    friend Poly operator+(const Poly& x, const Poly& y) {
        std::vector<Rational> r(std::max(x.a_.size(), y.a_.size()), Rational(0));
        for (size_t i = 0; i < x.a_.size(); ++i) r[i] += x.a_[i];
        for (size_t i = 0; i < y.a_.size(); ++i) r[i] += y.a_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& x) {
        Poly r = x;
        for (auto& c : r.a_) c = -c;
        return r;
    }
    friend Poly operator-(const Poly& x, const Poly& y) { return x + (-y); }
    friend Poly operator*(const Poly& x, const Poly& y) {
        if (x.is_zero() || y.is_zero()) return Poly();
        std::vector<Rational> r(x.a_.size() + y.a_.size() - 1, Rational(0));
        for (size_t i = 0; i < x.a_.size(); ++i)
            for (size_t j = 0; j < y.a_.size(); ++j) r[i + j] += x.a_[i] * y.a_[j];
        return Poly(std::move(r));
    }
    friend bool operator==(const Poly& x, const Poly& y) { return x.a_ == y.a_; }

    // x = q*y + r
    static void divmod(const Poly& x, const Poly& y, Poly& q, Poly& r) {
        if (y.is_zero()) throw DivisionByZero("polynomial division by zero");
        std::vector<Rational> rem = x.a_;
        int dy = y.degree();
        std::vector<Rational> quo(std::max(0, x.degree() - dy + 1), Rational(0));
        for (int k = x.degree(); k >= dy; --k) {
            if (rem[k] == 0) continue;
            Rational c = rem[k] / y.a_[dy];
            quo[k - dy] = c;
            for (int i = 0; i <= dy; ++i) rem[k - dy + i] -= c * y.a_[i];
        }
        q = Poly(std::move(quo));
        r = Poly(std::move(rem));
    }

    Poly monic() const {
        if (is_zero()) return *this;
        Poly r = *this;
        Rational l = lead();
        for (auto& c : r.a_) c /= l;
        return r;
    }

    static Poly gcd(Poly x, Poly y) {
        while (!y.is_zero()) {
            Poly q, r;
            divmod(x, y, q, r);
            x = std::move(y);
            y = std::move(r);
        }
        return x.monic();
    }

    std::vector<std::string> str_coeffs() const {
        std::vector<std::string> s;
        for (auto& c : a_) s.push_back(to_string(c));
        return s;
    }

private:
    void trim() {
        while (!a_.empty() && a_.back() == 0) a_.pop_back();
    }
    std::vector<Rational> a_;
};

// reduced, monic denominator
class RatFunc {
public:
    RatFunc() : num_(), den_(Rational(1)) {}
    RatFunc(const Rational& c) : num_(c), den_(Rational(1)) {}
    RatFunc(const Poly& p) : num_(p), den_(Rational(1)) {}
    RatFunc(const Poly& n, const Poly& d) : num_(n), den_(d) { normalize(); }

    // c t^k, k of any sign
    static RatFunc monomial(const Rational& c, int k) {
        if (k >= 0) return RatFunc(Poly::monomial(c, k));
        return RatFunc(Poly(c), Poly::monomial(1, -k));
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.degree() == 0; }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a) {
        RatFunc r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw DivisionByZero("division by the zero rational function");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    void normalize() {
        if (den_.is_zero()) throw DivisionByZero("zero denominator");
        if (num_.is_zero()) {
            den_ = Poly(Rational(1));
            return;
        }
        Poly g = Poly::gcd(num_, den_);
        Poly q, r;
        if (g.degree() > 0) {
            Poly::divmod(num_, g, q, r);
            num_ = q;
            Poly::divmod(den_, g, q, r);
            den_ = q;
        }
        Rational l = den_.lead();
        if (l != 1) {
            num_ = num_ * Poly(1 / l);
            den_ = den_ * Poly(1 / l);
        }
    }
    Poly num_, den_;
};

inline Rational constant_coefficient(const RatFunc& r) {
    if (!r.is_poly()) throw NotPolynomial("graph sum has a nontrivial denominator");
    return r.num().coeff(0);
}

} // namespace gw

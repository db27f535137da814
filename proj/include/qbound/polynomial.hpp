#pragma once

/**
 * @file polynomial.hpp
 * @brief Dense univariate polynomials over Q.
 *
 * Coefficients are stored lowest degree first and kept canonical: trailing
 * zeros are stripped, so the zero polynomial has no coefficients and
 * degree() == -1.
 */

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

#include "qbound/numeric.hpp"

namespace qbound {

class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<Rational> cs) : c_(cs) { strip(); }
    explicit Poly(std::vector<Rational> cs) : c_(std::move(cs)) { strip(); }

    static Poly constant(const Rational& v) { return Poly(std::vector<Rational>{v}); }
    static Poly x() { return Poly{Rational(0), Rational(1)}; }
    /// a*x + b
    static Poly linear(const Rational& a, const Rational& b) { return Poly{b, a}; }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<Rational>& coeffs() const { return c_; }

    Rational operator[](int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(i)] : Rational(0);
    }
    Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }

    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        strip();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        strip();
        return *this;
    }
    Poly& operator*=(const Rational& s) {
        if (s == 0) {
            c_.clear();
            return *this;
        }
        for (auto& v : c_) v *= s;
        return *this;
    }
    Poly& operator/=(const Rational& s) {
        if (s == 0) throw AlgebraError("polynomial divided by zero scalar");
        for (auto& v : c_) v /= s;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) {
        for (auto& v : a.c_) v = -v;
        return a;
    }
    friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
    friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
    friend Poly operator/(Poly a, const Rational& s) { return a /= s; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    Poly derivative() const {
        std::vector<Rational> r;
        for (size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * static_cast<long>(i));
        return Poly(std::move(r));
    }

    /// this(inner(x)) by Horner in the polynomial ring.
    Poly compose(const Poly& inner) const {
        Poly acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc = acc * inner;
            acc += constant(*it);
        }
        return acc;
    }

    Poly monic() const {
        if (is_zero()) throw AlgebraError("monic of zero polynomial");
        return *this / lead();
    }

    /// Quotient and remainder; divisor must be nonzero.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw AlgebraError("polynomial division by zero");
        if (a.degree() < b.degree()) return {Poly{}, a};
        std::vector<Rational> rem = a.c_;
        std::vector<Rational> quo(static_cast<size_t>(a.degree() - b.degree() + 1));
        const Rational lb = b.lead();
        const size_t db = b.c_.size() - 1;
        for (size_t k = quo.size(); k-- > 0;) {
            Rational f = rem[k + db] / lb;
            quo[k] = f;
            if (f == 0) continue;
            for (size_t j = 0; j <= db; ++j) rem[k + j] -= f * b.c_[j];
        }
        rem.resize(db);
        return {Poly(std::move(quo)), Poly(std::move(rem))};
    }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    /// Monic gcd (zero if both inputs are zero).
    friend Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.is_zero() ? a : a.monic();
    }

    /// Positive scalar multiple with coprime integer coefficients.
    std::vector<Integer> primitive_integer() const {
        if (is_zero()) return {};
        Integer l = 1;
        for (const auto& v : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
        std::vector<Integer> r;
        r.reserve(c_.size());
        Integer g = 0;
        for (const auto& v : c_) {
            Integer z = v.get_num() * (l / v.get_den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
            r.push_back(std::move(z));
        }
        for (auto& z : r) z /= g;
        return r;
    }

    friend std::ostream& operator<<(std::ostream& os, const Poly& p) {
        if (p.is_zero()) return os << "0";
        bool first = true;
        for (int i = p.degree(); i >= 0; --i) {
            const Rational& v = p.c_[static_cast<size_t>(i)];
            if (v == 0) continue;
            if (!first) os << (v > 0 ? " + " : " - ");
            else if (v < 0) os << "-";
            first = false;
            Rational a = abs(v);
            if (i == 0 || a != 1) os << a;
            if (i > 0) os << (i == 0 || a != 1 ? "*" : "") << "x" << (i > 1 ? "^" + std::to_string(i) : "");
        }
        return os;
    }

private:
    void strip() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

/// x(x-1)...(x-j+1)/j!, i.e. C(x, j) as a polynomial in x.
inline Poly binom_poly(long j) {
    if (j < 0) throw DomainError("binom_poly: negative degree");
    Poly r = Poly::constant(1);
    for (long i = 0; i < j; ++i) r *= Poly::linear(Rational(1) / (i + 1), Rational(-i) / (i + 1));
    return r;
}

/// Extended Euclid: returns the inverse of a modulo m, or throws if gcd(a, m) != 1.
inline Poly inverse_mod(const Poly& a, const Poly& m) {
    Poly r0 = m, r1 = a % m;
    Poly s0, s1 = Poly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        Poly s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.degree() != 0) throw AlgebraError("pole at root");
    return (s0 / r0.lead()) % m;
}

}  // namespace qbound

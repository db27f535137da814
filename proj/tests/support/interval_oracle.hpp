#pragma once

// Certified interval arithmetic with rational endpoints. Test-only oracle for
// root_sum / correction_sum: roots are bracketed by a sign-change grid scan and
// plain bisection (no Sturm chains, no quotient rings), then N/D is enclosed by
// interval Horner evaluation.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "qbound/polynomial.hpp"

namespace oracle {

using qbound::Poly;
using qbound::Rational;

struct Interval {
    Rational lo, hi;

    static Interval point(const Rational& v) { return {v, v}; }
    Rational width() const { return hi - lo; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return lo <= 0 && hi >= 0; }

    friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
    friend Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
    friend Interval operator*(const Interval& a, const Interval& b) {
        Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
        return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
    }
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero()) throw std::domain_error("interval division by an interval containing 0");
        Interval inv{1 / b.hi, 1 / b.lo};
        return a * inv;
    }
};

inline Interval eval(const Poly& p, const Interval& x) {
    Interval acc = Interval::point(0);
    for (int i = p.degree(); i >= 0; --i) acc = acc * x + Interval::point(p[i]);
    return acc;
}

inline int sign(const Poly& p, const Rational& x) { return sgn(p(x)); }

/// Brackets every root of p in [lo, hi] by scanning a grid of the given step.
/// Only valid when consecutive roots are further apart than `step`; the caller
/// checks the count against the expected number.
inline std::vector<Interval> bracket_roots(const Poly& p, const Rational& lo, const Rational& hi, const Rational& step) {
    std::vector<Interval> out;
    Rational a = lo;
    int sa = sign(p, a);
    if (sa == 0) out.push_back(Interval::point(a));
    while (a < hi) {
        Rational b = std::min<Rational>(a + step, hi);
        int sb = sign(p, b);
        if (sb == 0) out.push_back(Interval::point(b));
        else if (sa != 0 && sa != sb) out.push_back({a, b});
        a = b;
        sa = sb;
    }
    return out;
}

inline Interval refine(const Poly& p, Interval r, const Rational& width) {
    if (r.lo == r.hi) return r;
    const int sl = sign(p, r.lo);
    while (r.width() > width) {
        Rational m = (r.lo + r.hi) / 2;
        int sm = sign(p, m);
        if (sm == 0) return Interval::point(m);
        if (sm == sl) r.lo = m;
        else r.hi = m;
    }
    return r;
}

/// Enclosure of sum_r N(r)/D(r) over the bracketed roots, refining until the
/// enclosure is narrower than `target`.
inline Interval enclose_root_sum(const Poly& num, const Poly& den, const Poly& m, std::vector<Interval> roots,
                                 const Rational& target) {
    Rational w = Rational(1, 1) / 1024;
    for (int iter = 0; iter < 40; ++iter) {
        Interval total = Interval::point(0);
        bool ok = true;
        for (auto& r : roots) {
            r = refine(m, r, w);
            Interval d = eval(den, r);
            if (d.contains_zero()) {
                ok = false;
                break;
            }
            total = total + eval(num, r) / d;
        }
        if (ok && total.width() < target) return total;
        w /= 1 << 20;
    }
    throw std::runtime_error("interval oracle failed to converge");
}

}  // namespace oracle

#pragma once

/**
 * @file roots.hpp
 * @brief Real root isolation with exact integer parts, exact sums of rational
 * functions over the roots of a polynomial, and exact ceil-log.
 *
 * Roots are never approximated in floating point. Isolation uses a Sturm
 * chain; integer parts come from bisection on integer points with exact sign
 * evaluation; rational roots are detected through the rational root theorem.
 */

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "qbound/polynomial.hpp"

namespace qbound {

struct IsolatedRoot {
    Rational lo;
    Rational hi;
    Integer floor;
    bool is_integer = false;
    std::optional<Rational> exact_value;
};

namespace detail {

/// Sign of sum a_i x^i at x = u/v using integer arithmetic only.
inline int sign_at(const std::vector<Integer>& a, const Rational& x) {
    if (a.empty()) return 0;
    const Integer& u = x.get_num();
    const Integer& v = x.get_den();
    Integer acc = a.back();
    Integer vp = 1;
    for (size_t i = a.size() - 1; i-- > 0;) {
        vp *= v;
        acc = acc * u + a[i] * vp;
    }
    return ::sgn(acc);
}

class SturmChain {
public:
    explicit SturmChain(const Poly& p) {
        Poly a = p, b = p.derivative();
        chain_.push_back(a.primitive_integer());
        while (!b.is_zero()) {
            chain_.push_back(b.primitive_integer());
            Poly r = -(a % b);
            a = std::move(b);
            b = std::move(r);
        }
    }

    int variations(const Rational& x) const {
        int count = 0, last = 0;
        for (const auto& q : chain_) {
            int s = sign_at(q, x);
            if (s == 0) continue;
            if (last != 0 && s != last) ++count;
            last = s;
        }
        return count;
    }

    /// Number of distinct real roots in (a, b].
    int count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

private:
    std::vector<std::vector<Integer>> chain_;
};

}  // namespace detail

inline bool is_square_free(const Poly& p) { return gcd(p, p.derivative()).degree() <= 0; }

/// Cauchy bound: every real root r satisfies |r| < bound.
inline Rational root_bound(const Poly& p) {
    Rational m = 0;
    for (int i = 0; i < p.degree(); ++i) {
        Rational v = abs(p[i] / p.lead());
        if (v > m) m = v;
    }
    return m + 1;
}

/// Isolates every real root of a square-free polynomial in the open interval (lo, hi).
/// Intervals come back sorted, pairwise disjoint, each holding exactly one root
/// with its exact integer part.
inline std::vector<IsolatedRoot> sturm_isolate(const Poly& p, const Rational& lo, const Rational& hi) {
    if (p.is_zero()) throw AlgebraError("sturm_isolate: zero polynomial");
    if (!(lo < hi)) throw AlgebraError("sturm_isolate: empty interval");
    if (p.degree() == 0) return {};
    if (!is_square_free(p)) throw AlgebraError("sturm_isolate: polynomial is not square-free");
    const auto ip = p.primitive_integer();
    if (detail::sign_at(ip, lo) == 0 || detail::sign_at(ip, hi) == 0)
        throw AlgebraError("sturm_isolate: interval endpoint is a root");

    const detail::SturmChain chain(p);
    std::vector<std::pair<Rational, Rational>> isolated;
    std::vector<std::pair<Rational, Rational>> work{{lo, hi}};
    while (!work.empty()) {
        auto [a, b] = work.back();
        work.pop_back();
        int c = chain.count(a, b);
        if (c == 0) continue;
        if (c == 1) {
            isolated.emplace_back(a, b);
            continue;
        }
        // split at a non-root point
        Rational m = (a + b) / 2;
        for (int k = 3; detail::sign_at(ip, m) == 0; ++k) m = a + (b - a) / k;
        work.emplace_back(m, b);
        work.emplace_back(a, m);
    }
    std::sort(isolated.begin(), isolated.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

    Integer lead = abs(ip.back());
    std::vector<IsolatedRoot> out;
    out.reserve(isolated.size());
    for (auto& [a, b] : isolated) {
        IsolatedRoot r;
        const int sa = detail::sign_at(ip, a);
        auto step = [&](const Rational& m) {
            if (detail::sign_at(ip, m) == sa) a = m;
            else b = m;
        };

        // integer part: bisection over the integers strictly inside (a, b)
        bool exact_int = false;
        for (;;) {
            Integer first = floor_of(a) + 1, last = ceil_of(b) - 1;
            if (first > last) break;
            Rational m(Integer((first + last) / 2));
            if (detail::sign_at(ip, m) == 0) {
                r.lo = r.hi = m;
                r.floor = m.get_num();
                r.is_integer = true;
                r.exact_value = m;
                exact_int = true;
                break;
            }
            step(m);
        }
        if (exact_int) {
            out.push_back(std::move(r));
            continue;
        }
        std::optional<Rational> exact;
        auto bisect = [&] {
            Rational m = (a + b) / 2;
            int s = detail::sign_at(ip, m);
            if (s == 0) {
                exact = m;
                a = (a + m) / 2;
                b = (m + b) / 2;
            } else if (s == sa) {
                a = std::move(m);
            } else {
                b = std::move(m);
            }
        };
        while (!exact && is_integral(b)) bisect();

        // rational root screening: a root u/v in lowest terms has v | lead
        while (!exact && lead != 1) {
            Integer first = floor_of(a * lead) + 1, last = ceil_of(b * lead) - 1;
            if (first > last) break;
            if (first == last) {
                Rational cand = make_rational(first, lead);
                if (detail::sign_at(ip, cand) == 0) exact = cand;
                break;
            }
            bisect();
        }
        r.lo = a;
        r.hi = b;
        r.floor = floor_of(a);
        r.exact_value = std::move(exact);
        out.push_back(std::move(r));
    }
    return out;
}

/// Sum over the roots r of M of N(r)/D(r), computed as the trace of
/// multiplication by N * D^{-1} in Q[x]/(M). M must be monic and square-free.
inline Rational root_sum(const Poly& num, const Poly& den, const Poly& m) {
    if (m.degree() < 1 || m.lead() != 1) throw AlgebraError("root_sum: modulus must be monic of degree >= 1");
    if (!is_square_free(m)) throw AlgebraError("root_sum: modulus is not square-free");
    const Poly r = ((num % m) * inverse_mod(den, m)) % m;

    // Newton power sums s_k = sum of r^k over the roots, k < deg M
    const int deg = m.degree();
    std::vector<Rational> s(static_cast<size_t>(deg));
    s[0] = deg;
    for (int k = 1; k < deg; ++k) {
        Rational acc = m[deg - k] * k;
        for (int i = 1; i < k; ++i) acc += m[deg - i] * s[static_cast<size_t>(k - i)];
        s[static_cast<size_t>(k)] = -acc;
    }
    Rational total = 0;
    for (int i = 0; i <= r.degree(); ++i) total += r[i] * s[static_cast<size_t>(i)];
    return total;
}

/// Least integer m with p^m >= q, by exact comparison.
inline long ceil_log(long p, const Rational& q) {
    if (p < 2) throw DomainError("ceil_log: base must be >= 2");
    if (q <= 0) throw DomainError("ceil_log: argument must be positive");
    long m = 0;
    if (q > 1) {
        Integer pw = 1;
        while (pw < q) {
            pw *= p;
            ++m;
        }
        return m;
    }
    Rational scaled = q * p;
    while (scaled <= 1) {
        scaled *= p;
        --m;
    }
    return m;
}

}  // namespace qbound

#pragma once

/**
 * @file krawtchouk.hpp
 * @brief Krawtchouk polynomials over an alphabet of size p^2, the binomial
 * (rho) average, and executable checks of the classical identities.
 *
 *   K_t^n(x) = sum_{j=0}^{t} (p^2-1)^{t-j} (-1)^j C(x, j) C(n-x, t-j)
 *   <g>_rho  = p^{-2n} sum_{s=0}^{n} g(s) (p^2-1)^s C(n, s)
 *
 * Polynomials are memoized per (t, n, q); the cache is guarded by a mutex so
 * concurrent callers see the same results as a cold cache.
 */

#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "qbound/polynomial.hpp"

namespace qbound {

struct KrawtchoukSpec {
    long t = 0;
    long n = 0;
    long p = 2;
};

namespace detail {

/// Krawtchouk polynomial for a generic alphabet size q (the public API always uses q = p^2).
inline Poly kraw_poly_q(long t, long n, long q) {
    if (t < 0) throw DomainError("Krawtchouk degree must be nonnegative");
    if (t > n) throw DomainError("Krawtchouk degree t = " + std::to_string(t) + " exceeds n = " + std::to_string(n));
    static std::mutex mu;
    static std::map<std::tuple<long, long, long>, Poly> cache;
    const auto key = std::make_tuple(t, n, q);
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    const Poly n_minus_x = Poly::linear(-1, n);
    Poly r;
    Integer w = ipow(q - 1, static_cast<unsigned long>(t));
    for (long j = 0; j <= t; ++j) {
        Poly term = binom_poly(j) * binom_poly(t - j).compose(n_minus_x);
        r += term * Rational((j % 2 == 0) ? w : Integer(-w));
        w /= (q - 1);
    }
    std::lock_guard lock(mu);
    return cache.emplace(key, std::move(r)).first->second;
}

}  // namespace detail

inline void validate(const KrawtchoukSpec& s) {
    if (s.p < 2) throw DomainError("p must be >= 2");
    if (s.n < 0) throw DomainError("n must be >= 0");
}

inline Poly kraw_poly(const KrawtchoukSpec& s) {
    validate(s);
    return detail::kraw_poly_q(s.t, s.n, s.p * s.p);
}

inline Poly kraw_poly(long t, long n, long p) { return kraw_poly({t, n, p}); }

/// rho_s^n = (p^2-1)^s C(n, s), the Krawtchouk norm weight.
inline Integer rho_weight(long s, long n, long p) {
    return ipow(p * p - 1, static_cast<unsigned long>(s)) * binom_int(n, s);
}

inline Rational rho_average(const Poly& g, long n, long p) {
    if (n < 0 || p < 2) throw DomainError("rho_average: need n >= 0 and p >= 2");
    Rational acc = 0;
    for (long s = 0; s <= n; ++s) acc += g(Rational(s)) * Rational(rho_weight(s, n, p));
    return acc / Rational(ipow(p, static_cast<unsigned long>(2 * n)));
}

struct IdentityCheck {
    std::string name;
    bool passed = true;
    long cases = 0;
    std::string counterexample;  // empty when passed
};

struct IdentityReport {
    long n = 0, p = 0, t_max = 0;
    std::vector<IdentityCheck> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

namespace detail {

inline void record(IdentityCheck& c, bool ok, const std::string& where) {
    ++c.cases;
    if (!ok && c.passed) {
        c.passed = false;
        c.counterexample = where;
    }
}

}  // namespace detail

/// Exactly re-evaluates both sides of each identity at every integer x, y in [0, n]:
///  christoffel_darboux: K_t(y)K_{t-1}(x) - K_t(x)K_{t-1}(y)
///                       = q(q-1)^{t-1}C(n,t-1)/t (x-y) sum_{s<t} K_s(x)K_s(y)/rho_s^n
///  recurrence_shift:    q x/((q-1)n) K_t^{n-1}(x-1)/rho_t^{n-1} = K_t^n(x)/rho_t^n - K_{t+1}^n(x)/rho_{t+1}^n
///  recurrence_binomial: q^r C(n-x,r) K_s^{n-r}(x) = sum_i C(s+i,i)C(n-s-i,r-i) K_{s+i}^n(x)
///  sum_identity:        K_t^{n-1}(x-1) = sum_{s<=t} K_s^n(x)
///  orthogonality:       <K_i K_j>_rho = 0 for i != j
inline IdentityReport check_identities(long n, long p, long t_max) {
    if (p < 2 || n < 1) throw DomainError("check_identities: need p >= 2 and n >= 1");
    if (t_max < 0 || t_max > n) throw DomainError("check_identities: need 0 <= t_max <= n");
    const long q = p * p;
    IdentityReport rep{n, p, t_max, {}};
    auto named = [](const char* name) {
        IdentityCheck c;
        c.name = name;
        return c;
    };
    IdentityCheck cd = named("christoffel_darboux"), rc1 = named("recurrence_shift"),
                  rc2 = named("recurrence_binomial"), sum = named("sum_identity"), orth = named("orthogonality");

    auto at = [](const Poly& f, long x) { return f(Rational(x)); };
    auto tag = [](std::initializer_list<std::pair<const char*, long>> kv) {
        std::ostringstream os;
        for (const auto& [k, v] : kv) os << k << "=" << v << " ";
        return os.str();
    };

    for (long t = 1; t <= t_max; ++t) {
        const Poly kt = kraw_poly(t, n, p), kt1 = kraw_poly(t - 1, n, p);
        const Rational c = Rational(q * ipow(q - 1, static_cast<unsigned long>(t - 1)) * binom_int(n, t - 1)) / t;
        for (long x = 0; x <= n; ++x)
            for (long y = 0; y <= n; ++y) {
                Rational lhs = at(kt, y) * at(kt1, x) - at(kt, x) * at(kt1, y);
                Rational s = 0;
                for (long k = 0; k < t; ++k) {
                    const Poly kk = kraw_poly(k, n, p);
                    s += at(kk, x) * at(kk, y) / Rational(rho_weight(k, n, p));
                }
                detail::record(cd, lhs == c * (x - y) * s, tag({{"t", t}, {"x", x}, {"y", y}}));
            }
    }

    const Poly xm1 = Poly::linear(1, -1);
    for (long t = 0; t <= std::min(t_max, n - 1); ++t) {
        const Poly shifted = kraw_poly(t, n - 1, p).compose(xm1);
        const Poly kt = kraw_poly(t, n, p);
        for (long x = 0; x <= n; ++x) {
            Rational lhs = Rational(q * x) / Rational((q - 1) * n) * at(shifted, x) / Rational(rho_weight(t, n - 1, p));
            Rational rhs = at(kt, x) / Rational(rho_weight(t, n, p)) -
                           at(kraw_poly(t + 1, n, p), x) / Rational(rho_weight(t + 1, n, p));
            detail::record(rc1, lhs == rhs, tag({{"t", t}, {"x", x}}));

            Rational total = 0;
            for (long s = 0; s <= t; ++s) total += at(kraw_poly(s, n, p), x);
            detail::record(sum, at(shifted, x) == total, tag({{"t", t}, {"x", x}}));
        }
    }

    for (long r = 0; r <= t_max; ++r)
        for (long s = 0; s <= t_max && s + r <= n; ++s) {
            const Poly ks = kraw_poly(s, n - r, p);
            for (long x = 0; x <= n; ++x) {
                Rational lhs = Rational(ipow(q, static_cast<unsigned long>(r))) *
                               at(binom_poly(r).compose(Poly::linear(-1, n)), x) * at(ks, x);
                Rational rhs = 0;
                for (long i = 0; i <= r; ++i)
                    rhs += Rational(binom_int(s + i, i) * binom_int(n - s - i, r - i)) * at(kraw_poly(s + i, n, p), x);
                detail::record(rc2, lhs == rhs, tag({{"r", r}, {"s", s}, {"x", x}}));
            }
        }

    for (long i = 0; i <= t_max; ++i)
        for (long j = i + 1; j <= t_max; ++j)
            detail::record(orth, rho_average(kraw_poly(i, n, p) * kraw_poly(j, n, p), n, p) == 0,
                           tag({{"i", i}, {"j", j}}));

    rep.checks = {cd, rc1, rc2, sum, orth};
    return rep;
}

}  // namespace qbound

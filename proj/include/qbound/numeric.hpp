#pragma once

// Exact scalars. Everything in qbound is computed over Z and Q; nothing is rounded.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "qbound/errors.hpp"

namespace qbound {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer ipow(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline Integer ipow(long base, unsigned long exp) { return ipow(Integer(base), exp); }

/// base^exp for a possibly negative exponent.
inline Rational rpow(long base, long exp) {
    if (exp >= 0) return Rational(ipow(base, static_cast<unsigned long>(exp)));
    Rational r(Integer(1), ipow(base, static_cast<unsigned long>(-exp)));
    r.canonicalize();
    return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw AlgebraError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Integer floor_of(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Integer ceil_of(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

/// C(n, k) with the convention C(n, k) = 0 for k < 0 or k > n.
inline Integer binom_int(long n, long k) {
    if (n < 0) throw DomainError("binom_int: negative n");
    if (k < 0 || k > n) return Integer(0);
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

/// Largest r with r*r <= v (v >= 0).
inline Integer isqrt(const Integer& v) {
    if (v < 0) throw DomainError("isqrt of negative");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

/// "num/den" or "num" for integral values.
inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Rational parse_rational(std::string_view s) {
    Rational r;
    if (r.set_str(std::string(s), 10) != 0 || r.get_den() == 0)
        throw DomainError("not a rational: " + std::string(s));
    r.canonicalize();
    return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace qbound

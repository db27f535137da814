#pragma once

/**
 * @file lloyd.hpp
 * @brief Lloyd polynomials, their zeros with exact integer parts, and the
 * exact correction sum of the strengthened Hamming bound.
 *
 * For 0 <= e < t the relevant polynomial is
 *   L(x) = K_{t-e}^{m}(x - 1),  m = n - 2e - sigma - 1,
 * whose t-e zeros x_j are real, distinct, lie in (0, n-2e) and have pairwise
 * distinct integer parts. From the floors f_j we build
 *   Delta(x) = prod_j (1 - x/f_j)(1 - x/(f_j+1)),
 *   T(x)     = sum_{s=1}^{t-e} K_{s-1}^{m}(x-1)^2 / rho_{s-1}^{m},
 * and the correction sum_j |Delta(x_j)| / (x_j T(x_j)), which is a symmetric
 * function of the zeros and therefore rational.
 */

#include <set>
#include <string>
#include <vector>

#include "qbound/krawtchouk.hpp"
#include "qbound/roots.hpp"

namespace qbound {

struct LloydParams {
    long n = 0;
    long t = 0;
    long sigma = 0;
    long p = 2;
    long e = 0;

    long degree() const { return t - e; }
    /// Length parameter of the underlying Krawtchouk polynomial.
    long kraw_length() const { return n - 2 * e - sigma - 1; }
    /// Upper end of the root window, n - 2e.
    long window() const { return n - 2 * e; }
};

struct LloydInstance {
    LloydParams params;
    Poly poly;
    std::vector<IsolatedRoot> roots;

    bool all_roots_integral() const {
        for (const auto& r : roots)
            if (!r.is_integer) return false;
        return true;
    }
};

struct DeltaData {
    Poly delta;
    std::vector<Integer> floors;
};

inline void validate(const LloydParams& a) {
    if (a.p < 2) throw DomainError("p must be >= 2");
    if (a.sigma != 0 && a.sigma != 1) throw DomainError("sigma must be 0 or 1");
    if (a.e < 0 || a.e >= a.t) throw DomainError("need 0 <= e < t");
    if (a.kraw_length() < a.degree())
        throw DomainError("n too small: n - 2e - sigma - 1 < t - e (n=" + std::to_string(a.n) + ")");
}

inline Poly lloyd_poly(const LloydParams& a) {
    validate(a);
    return kraw_poly(a.degree(), a.kraw_length(), a.p).compose(Poly::linear(1, -1));
}

inline Poly lloyd_poly(long n, long t, long sigma, long p, long e) { return lloyd_poly({n, t, sigma, p, e}); }

/// Isolates the zeros and checks the classical root properties; any failure
/// throws PropertyViolation rather than producing a silently wrong bound.
inline LloydInstance lloyd_roots(const LloydParams& a) {
    LloydInstance inst{a, lloyd_poly(a), {}};
    auto fail = [&](const std::string& what) {
        throw PropertyViolation("Lloyd root property violated (n=" + std::to_string(a.n) + ", t=" + std::to_string(a.t) +
                                ", sigma=" + std::to_string(a.sigma) + ", p=" + std::to_string(a.p) +
                                ", e=" + std::to_string(a.e) + "): " + what);
    };
    const Poly m = inst.poly.monic();
    if (!is_square_free(m)) fail("repeated root");
    const Rational bound = root_bound(m);
    inst.roots = sturm_isolate(m, -bound, bound);
    if (static_cast<long>(inst.roots.size()) != a.degree())
        fail("found " + std::to_string(inst.roots.size()) + " real roots, expected " + std::to_string(a.degree()));
    std::set<Integer> floors;
    for (const auto& r : inst.roots) {
        if (r.floor < 0 || (r.is_integer && r.floor == 0)) fail("root not positive");
        if (r.floor >= a.window()) fail("root not below n - 2e");
        if (r.floor == 0) fail("degenerate floor: a root lies in (0, 1)");
        if (!floors.insert(r.floor).second) fail("two roots share the integer part " + to_string(r.floor));
    }
    return inst;
}

inline LloydInstance lloyd_roots(long n, long t, long sigma, long p, long e) { return lloyd_roots({n, t, sigma, p, e}); }

namespace detail {

/// Sign of (root - k) for an isolated root and an integer k.
inline int sign_minus(const IsolatedRoot& r, const Integer& k) {
    if (r.exact_value) return ::sgn(*r.exact_value - k);
    return k <= r.floor ? 1 : -1;
}

}  // namespace detail

/// Builds Delta from the floors of the zeros and checks its sign pattern:
/// Delta(k) >= 0 at every integer 0..n and Delta(x_j) <= 0 at every zero.
inline DeltaData delta_poly(const LloydInstance& inst) {
    DeltaData out;
    out.delta = Poly::constant(1);
    for (const auto& r : inst.roots) {
        if (r.floor <= 0) throw PropertyViolation("degenerate floor");
        out.floors.push_back(r.floor);
        out.delta *= Poly::linear(Rational(-1) / Rational(r.floor), 1);
        out.delta *= Poly::linear(Rational(-1) / Rational(r.floor + 1), 1);
    }
    for (long k = 0; k <= inst.params.n; ++k)
        if (out.delta(Rational(k)) < 0) throw PropertyViolation("Delta negative at integer " + std::to_string(k));
    // sign at a zero from the product form: factor (1 - x/f) has the sign of (f - x)
    for (const auto& r : inst.roots) {
        int s = 1;
        for (const auto& f : out.floors) {
            s *= -detail::sign_minus(r, f);
            s *= -detail::sign_minus(r, Integer(f + 1));
        }
        if (s > 0) throw PropertyViolation("Delta positive at a Lloyd zero");
    }
    return out;
}

inline Poly t_poly(const LloydParams& a) {
    validate(a);
    const long m = a.kraw_length();
    const Poly xm1 = Poly::linear(1, -1);
    Poly acc;
    for (long s = 1; s <= a.degree(); ++s) {
        Poly k = kraw_poly(s - 1, m, a.p).compose(xm1);
        acc += (k * k) / Rational(rho_weight(s - 1, m, a.p));
    }
    return acc;
}

inline Poly t_poly(long n, long t, long sigma, long p, long e) { return t_poly({n, t, sigma, p, e}); }

/// sum_j |Delta(x_j)| / (x_j T(x_j)), exactly, as the trace of -Delta/(x T)
/// modulo the monic Lloyd polynomial.
inline Rational correction_sum(const LloydInstance& inst) {
    const DeltaData dd = delta_poly(inst);
    const Poly den = Poly::x() * t_poly(inst.params);
    Rational v;
    try {
        v = root_sum(-dd.delta, den, inst.poly.monic());
    } catch (const AlgebraError& ex) {
        throw PropertyViolation(std::string("correction sum: ") + ex.what());
    }
    if (v < 0) throw PropertyViolation("negative correction sum");
    if ((v == 0) != inst.all_roots_integral())
        throw PropertyViolation("correction sum vanishes iff all zeros are integers, violated");
    return v;
}

/// Both sides of the master rho-average identity
///   <C(n-x, r) Delta(x)>_rho = C(n,r) / (p^{2r} H_{t-e,0}^{n-r})
///        + (p^2-1)(n-r) C(n,r) / p^{2(r+1)} * sum_j Delta(x_j) / (x_j T(x_j)),   r = 2e + sigma.
struct MasterIdentity {
    Rational lhs;
    Rational rhs;
    bool holds() const { return lhs == rhs; }
};

inline MasterIdentity master_identity(const LloydInstance& inst) {
    const auto& a = inst.params;
    const long r = 2 * a.e + a.sigma;
    const long q = a.p * a.p;
    const DeltaData dd = delta_poly(inst);
    const Poly weight = binom_poly(r).compose(Poly::linear(-1, a.n));
    MasterIdentity out;
    out.lhs = rho_average(weight * dd.delta, a.n, a.p);

    Integer h = 0;
    for (long s = 0; s <= a.degree(); ++s) h += rho_weight(s, a.n - r, a.p);
    const Rational cnr(binom_int(a.n, r));
    const Rational signed_sum = root_sum(dd.delta, Poly::x() * t_poly(a), inst.poly.monic());
    out.rhs = cnr / (Rational(ipow(q, static_cast<unsigned long>(r))) * Rational(h)) +
              Rational((q - 1) * (a.n - r)) * cnr / Rational(ipow(q, static_cast<unsigned long>(r + 1))) * signed_sum;
    return out;
}

}  // namespace qbound

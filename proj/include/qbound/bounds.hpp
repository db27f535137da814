#pragma once

/**
 * @file bounds.hpp
 * @brief Upper bounds on the dimension K of an ((n, K, d))_p quantum code.
 *
 * Every bound has the shape K * F <= p^n for a bound factor F:
 *
 *   Hamming            F = H_{t,sigma}^n = p^{2 sigma} sum_{s<=t} (p^2-1)^s C(n-sigma, s)
 *   Singleton          F = p^{2(d-1)}
 *   Hamming-Singleton  F = H_{t,sigma}^{n,e} = p^{4e} H_{t-e,sigma}^{n-2e},  0 <= e <= t
 *   strengthened       1/F = 1/H^{n,e} - (p^2-1)(n-2e-sigma)/p^{2(2e+1+sigma)} * correction,  0 <= e < t
 *
 * with d = 2t + 1 + sigma. The correction term comes from the Lloyd zeros (see lloyd.hpp).
 * All factors are exact rationals; integer projections use exact ceil-log.
 */

#include <optional>
#include <string>
#include <vector>

#include "qbound/lloyd.hpp"

namespace qbound {

enum class Purity { pure, impure };
enum class BoundKind { qhb, qsb, qhsb, strengthened };

inline std::string to_string(Purity p) { return p == Purity::pure ? "pure" : "impure"; }

inline std::string to_string(BoundKind k) {
    switch (k) {
        case BoundKind::qhb: return "qhb";
        case BoundKind::qsb: return "qsb";
        case BoundKind::qhsb: return "qhsb";
        case BoundKind::strengthened: return "strengthened";
    }
    return "?";
}

struct CodeQuery {
    long p = 2;
    long n = 1;
    long d = 1;
    Purity purity = Purity::pure;
    /// Permit the strengthened bound for impure codes with d >= 5 (unproven in general).
    bool assume_conjecture = false;

    long t() const { return (d - 1) / 2; }
    long sigma() const { return d - 1 - 2 * t(); }
};

inline void validate(const CodeQuery& q) {
    if (q.p < 2) throw DomainError("p must be >= 2");
    if (q.n < 1) throw DomainError("n must be >= 1");
    if (q.d < 1) throw DomainError("d must be >= 1");
}

struct BoundReport {
    BoundKind kind = BoundKind::qhb;
    CodeQuery query;
    Rational factor;  ///< H, H^{n,e}, p^{2(d-1)} or S
    Rational value;   ///< upper bound on K, p^n / factor
    long e_used = 0;
    std::optional<long> e_formula;  ///< closed-form or heuristic choice of e, for comparison
    Rational correction;            ///< Lloyd correction sum (strengthened only)
    long h_proj = 0;                ///< ceil(log_p H_{t,sigma}^n) for qhb/strengthened, ceil(log_p factor) otherwise
    std::optional<long> s_proj;     ///< ceil(log_p S) (strengthened only)
    bool improvement_1lq = false;
    std::optional<long> singleton_exponent;  ///< qsb only: K <= p^exponent
};

/// H_{t,sigma}^n.
inline Integer hamming_factor(long p, long n, long t, long sigma) {
    if (t < 0) throw DomainError("t must be >= 0");
    if (t > n - sigma) throw DomainError("Hamming sum out of range: t > n - sigma");
    Integer acc = 0;
    for (long s = 0; s <= t; ++s) acc += rho_weight(s, n - sigma, p);
    return ipow(p, static_cast<unsigned long>(2 * sigma)) * acc;
}

/// H_{t,sigma}^{n,e} = p^{4e} H_{t-e,sigma}^{n-2e}.
inline Integer hamming_singleton_factor(long p, long n, long t, long sigma, long e) {
    if (e < 0 || e > t) throw DomainError("e must lie in [0, t]");
    return ipow(p, static_cast<unsigned long>(4 * e)) * hamming_factor(p, n - 2 * e, t - e, sigma);
}

namespace detail {

inline BoundReport make_report(BoundKind kind, const CodeQuery& q, const Rational& factor) {
    BoundReport r;
    r.kind = kind;
    r.query = q;
    r.factor = factor;
    r.value = Rational(ipow(q.p, static_cast<unsigned long>(q.n))) / factor;
    return r;
}

inline void require_hamming_domain(const CodeQuery& q) {
    validate(q);
    if (q.n < q.d) throw DomainError("need n >= d");
}

}  // namespace detail

inline BoundReport qhb(const CodeQuery& q) {
    detail::require_hamming_domain(q);
    Rational h(hamming_factor(q.p, q.n, q.t(), q.sigma()));
    BoundReport r = detail::make_report(BoundKind::qhb, q, h);
    r.h_proj = ceil_log(q.p, h);
    return r;
}

inline BoundReport qsb(const CodeQuery& q) {
    validate(q);
    BoundReport r = detail::make_report(BoundKind::qsb, q, Rational(ipow(q.p, static_cast<unsigned long>(2 * (q.d - 1)))));
    r.singleton_exponent = q.n - 2 * (q.d - 1);
    r.h_proj = 2 * (q.d - 1);
    return r;
}

inline BoundReport qhsb(const CodeQuery& q, long e) {
    detail::require_hamming_domain(q);
    if (q.d < 3) throw DomainError("Hamming-Singleton bound needs d >= 3");
    if (e < 0 || e > q.t()) throw DomainError("e out of range [0, t]");
    Rational h(hamming_singleton_factor(q.p, q.n, q.t(), q.sigma(), e));
    BoundReport r = detail::make_report(BoundKind::qhsb, q, h);
    r.e_used = e;
    r.h_proj = ceil_log(q.p, h);
    return r;
}

/// The closed-form choice e = t + 1 - ceil((n-d)/(p^2-2)), clamped to [0, t].
inline long qhsb_formula_e(const CodeQuery& q) {
    const long t = q.t();
    const Integer c = ceil_of(Rational(q.n - q.d) / (q.p * q.p - 2));
    Integer e = t + 1 - c;
    if (e < 0) return 0;
    if (e > t) return t;
    return e.get_si();
}

/// Exhaustive scan over e in [0, t]; keeps the largest factor (smallest e on ties).
inline BoundReport qhsb_best(const CodeQuery& q) {
    std::optional<BoundReport> best;
    for (long e = 0; e <= q.t(); ++e) {
        BoundReport r;
        try {
            r = qhsb(q, e);
        } catch (const DomainError&) {
            if (e == 0) throw;
            continue;
        }
        if (!best || r.factor > best->factor) best = std::move(r);
    }
    best->e_formula = qhsb_formula_e(q);
    return *best;
}

namespace detail {

inline void require_strengthened_domain(const CodeQuery& q) {
    detail::require_hamming_domain(q);
    if (q.d < 3) throw DomainError("strengthened bound needs d >= 3");
    if (q.purity == Purity::impure && q.d >= 5 && !q.assume_conjecture)
        throw DomainError("impure beyond d=4 unsupported: the strengthened bound is proven for impure codes only at d = 3, 4");
}

inline void finish_strengthened(BoundReport& r, const CodeQuery& q) {
    r.h_proj = ceil_log(q.p, Rational(hamming_factor(q.p, q.n, q.t(), q.sigma())));
    r.s_proj = ceil_log(q.p, r.factor);
    r.improvement_1lq = r.factor > Rational(ipow(q.p, static_cast<unsigned long>(r.h_proj)));
}

}  // namespace detail

inline BoundReport strengthened(const CodeQuery& q, long e) {
    detail::require_strengthened_domain(q);
    const long t = q.t(), sigma = q.sigma(), p = q.p;
    if (e < 0 || e >= t) throw DomainError("e out of range [0, t)");
    const LloydInstance inst = lloyd_roots({q.n, t, sigma, p, e});
    const Rational corr = correction_sum(inst);
    const Rational h(hamming_singleton_factor(p, q.n, t, sigma, e));
    const Rational coef = Rational((p * p - 1) * (q.n - 2 * e - sigma)) /
                          Rational(ipow(p, static_cast<unsigned long>(2 * (2 * e + 1 + sigma))));
    const Rational inv = 1 / h - coef * corr;
    if (inv <= 0) throw PropertyViolation("nonpositive reciprocal in the strengthened bound");
    BoundReport r = detail::make_report(BoundKind::strengthened, q, 1 / inv);
    r.e_used = e;
    r.correction = corr;
    detail::finish_strengthened(r, q);
    return r;
}

/// Heuristic e: with x_1 < ... < x_t the zeros of the e = 0 Lloyd polynomial,
/// e = t - j for the greatest j with floor(x_j) < n - d + 2j (e = t when no j qualifies).
inline long heuristic_e(const LloydInstance& e0) {
    const CodeQuery q{e0.params.p, e0.params.n, 2 * e0.params.t + 1 + e0.params.sigma};
    long j_best = 0;
    for (size_t j = 1; j <= e0.roots.size(); ++j)
        if (e0.roots[j - 1].floor < q.n - q.d + 2 * static_cast<long>(j)) j_best = static_cast<long>(j);
    return e0.params.t - j_best;
}

/// Scans every e in [0, t) and keeps the largest S; the heuristic choice is recorded in e_formula.
inline BoundReport strengthened_best(const CodeQuery& q) {
    detail::require_strengthened_domain(q);
    std::optional<BoundReport> best;
    for (long e = 0; e < q.t(); ++e) {
        BoundReport r;
        try {
            r = strengthened(q, e);
        } catch (const DomainError&) {
            if (e == 0) throw;
            continue;
        } catch (const PropertyViolation&) {
            if (e == 0) throw;
            continue;
        }
        if (!best || r.factor > best->factor) best = std::move(r);
    }
    best->e_formula = heuristic_e(lloyd_roots({q.n, q.t(), q.sigma(), q.p, 0}));
    return *best;
}

struct LinearLloydData {
    Rational z;
    Integer floor_z;
    Rational delta;
    Rational delta_bar;
};

/// The single zero of the linear Lloyd polynomial: p^2 z = (p^2-1)(n-sigma) + 1.
inline LinearLloydData linear_lloyd(long p, long n, long sigma) {
    const long q = p * p;
    LinearLloydData l;
    l.z = Rational((q - 1) * (n - sigma) + 1) / q;
    l.floor_z = floor_of(l.z);
    l.delta = l.z - Rational(l.floor_z);
    l.delta_bar = 1 - l.delta;
    return l;
}

/// Closed form for d = 3, 4 (e = 0, one linear Lloyd zero); valid for impure codes too.
inline BoundReport strengthened_d34(const CodeQuery& q) {
    detail::require_hamming_domain(q);
    if (q.d != 3 && q.d != 4) throw DomainError("closed form applies only to d = 3, 4");
    const long sigma = q.sigma(), p = q.p;
    const LinearLloydData l = linear_lloyd(p, q.n, sigma);
    if (l.floor_z <= 0) throw PropertyViolation("degenerate floor of the Lloyd zero");
    const Rational h(hamming_factor(p, q.n, 1, sigma));
    const Rational f(l.floor_z);
    const Rational corr = Rational((p * p - 1) * (q.n - sigma)) * l.delta_bar * l.delta / (f * (f + 1));
    const Rational inv = (1 - corr) / h;
    if (inv <= 0) throw PropertyViolation("nonpositive reciprocal in the strengthened bound");
    BoundReport r = detail::make_report(BoundKind::strengthened, q, 1 / inv);
    // same correction convention as the general path: |Delta(z)| / (z T(z)), T = 1
    r.correction = l.delta * l.delta_bar / (f * (f + 1) * l.z);
    detail::finish_strengthened(r, q);
    return r;
}

struct StabilizerProjection {
    long h = 0;
    long s = 0;
    bool improvement = false;
    long e_used = 0;
};

/// h = ceil(log_p H), s = ceil(log_p S) with S from strengthened_best; for K = p^k, n - k >= s >= h.
inline StabilizerProjection stabilizer_projection(const CodeQuery& q) {
    const BoundReport r = strengthened_best(q);
    return {r.h_proj, *r.s_proj, r.improvement_1lq, r.e_used};
}

struct CorollaryRow {
    long r = 0;
    long n = 0;
    long s_claim = 0;
    long h_claim = 0;
};

/// Lengths N = (p^{2m+1} - p)/(p^2 - 1) - r + sigma for every integer
/// 0 <= r <= (sqrt(1 - 4p^3 + 4p^4) - p^2 - (p-1)^2) / 2, with the claimed projections
/// s = 2(m + 1 + sigma) and h = 2(m + sigma) + 1 at distance 3 + sigma.
inline std::vector<CorollaryRow> corollary_family(long p, long sigma, long m) {
    if (p < 2) throw DomainError("p must be >= 2");
    if (sigma != 0 && sigma != 1) throw DomainError("sigma must be 0 or 1");
    if (m < 2) throw DomainError("m must be >= 2");
    const Integer base = (ipow(p, static_cast<unsigned long>(2 * m + 1)) - p) / (p * p - 1);
    if (!base.fits_slong_p()) throw DomainError("length overflows");
    const Integer disc = 1 - 4 * ipow(p, 3) + 4 * ipow(p, 4);
    const Integer c = p * p + (p - 1) * (p - 1);
    std::vector<CorollaryRow> rows;
    // 2r + c <= sqrt(disc)  <=>  (2r + c)^2 <= disc, both sides nonnegative
    for (long r = 0;; ++r) {
        Integer lhs = 2 * r + c;
        if (lhs * lhs > disc) break;
        rows.push_back({r, base.get_si() - r + sigma, 2 * (m + 1 + sigma), 2 * (m + sigma) + 1});
    }
    return rows;
}

struct FamilyRow {
    std::string family;  ///< "n_a" (d = 5) or "N_m1" (d = 4)
    long index = 0;      ///< a or m
    long n = 0;
    long d = 0;
    long h = 0;
    long s = 0;
    bool improvement = false;
};

/// Binary lengths n_a = (4^a - 1)/3 at d = 5 and N_{m,1}^0 at d = 4.
inline std::vector<FamilyRow> special_families(long a_max, long m_max) {
    std::vector<FamilyRow> rows;
    for (long a = 3; a <= a_max; ++a) {
        const long n = Integer((ipow(4, static_cast<unsigned long>(a)) - 1) / 3).get_si();
        const auto sp = stabilizer_projection({2, n, 5});
        rows.push_back({"n_a", a, n, 5, sp.h, sp.s, sp.improvement});
    }
    for (long m = 2; m <= m_max; ++m) {
        const long n = corollary_family(2, 1, m).front().n;
        const auto sp = stabilizer_projection({2, n, 4});
        rows.push_back({"N_m1", m, n, 4, sp.h, sp.s, sp.improvement});
    }
    return rows;
}

struct NonexistenceVerdicts {
    bool mds_excluded = false;                ///< n > p^2 + d - 2
    bool pure_perfect_excluded_qhsb = false;  ///< n < d + t(p^2 - 2)
    bool pure_perfect_excluded_lloyd = false; ///< the e = 0 Lloyd polynomial has a non-integer zero
};

inline NonexistenceVerdicts nonexistence_precheck(const CodeQuery& q) {
    validate(q);
    if (q.d < 3) throw DomainError("precheck needs d >= 3");
    const long p2 = q.p * q.p;
    NonexistenceVerdicts v;
    v.mds_excluded = q.n > p2 + q.d - 2;
    v.pure_perfect_excluded_qhsb = q.n < q.d + q.t() * (p2 - 2);
    try {
        const Poly l = lloyd_poly({q.n, q.t(), q.sigma(), q.p, 0}).monic();
        const Rational b = root_bound(l);
        const auto roots = sturm_isolate(l, -b, b);
        bool non_integer = static_cast<long>(roots.size()) != l.degree();  // complex zeros count as non-integer
        for (const auto& r : roots) non_integer = non_integer || !r.is_integer;
        v.pure_perfect_excluded_lloyd = non_integer;
    } catch (const DomainError&) {
        v.pure_perfect_excluded_lloyd = false;
    }
    return v;
}

enum class ImpureRegime { large_n, small_n, excluded };

inline std::string to_string(ImpureRegime r) {
    switch (r) {
        case ImpureRegime::large_n: return "large_n";
        case ImpureRegime::small_n: return "small_n";
        case ImpureRegime::excluded: return "excluded";
    }
    return "?";
}

struct CertificateCheck {
    long i = 0;
    Rational lhs;  ///< a_0 * tildeDelta(i)
    Rational rhs;  ///< n^sigma * a_i
    bool pass = false;
};

struct ImpureCertificate {
    long p = 2, n = 0, sigma = 0;
    LinearLloydData lloyd;
    Rational a[4];
    std::vector<CertificateCheck> checks;
    ImpureRegime regime = ImpureRegime::large_n;
    /// small-n regime only: p^2 a_0 == n^sigma floor(z)(floor(z)+1)
    std::optional<bool> small_n_identity;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// tildeDelta(x) = (n - x)^sigma (1 - x/floor(z))(1 - x/(floor(z)+1)).
inline Poly impure_tilde_delta(long n, long sigma, const LinearLloydData& l) {
    const Rational f(l.floor_z);
    Poly d = Poly::linear(-1 / f, 1) * Poly::linear(-1 / (f + 1), 1);
    if (sigma == 1) d *= Poly::linear(-1, n);
    return d;
}

/// Coefficients a_{i,sigma} of the Krawtchouk expansion of tildeDelta used for impure
/// codes at d = 3, 4, and the inequalities a_0 tildeDelta(i) >= n^sigma a_i for 0 <= i <= 2 + sigma.
inline ImpureCertificate impure_certificate(long p, long n, long sigma) {
    if (p < 2) throw DomainError("p must be >= 2");
    if (sigma != 0 && sigma != 1) throw DomainError("sigma must be 0 or 1");
    if (n < 4 + 2 * sigma) throw DomainError("impure certificate needs n >= 4 + 2 sigma");
    const long q = p * p;
    ImpureCertificate c;
    c.p = p;
    c.n = n;
    c.sigma = sigma;
    c.lloyd = linear_lloyd(p, n, sigma);
    const Rational f(c.lloyd.floor_z), dl = c.lloyd.delta, db = c.lloyd.delta_bar;
    auto pw = [sigma](long base) { return Rational(sigma == 1 ? base : 1); };
    const Rational core = f + db - q * dl * db;
    c.a[0] = pw(n) * core;
    c.a[1] = 2 * pw(n - 1) * db + sigma * core;
    c.a[2] = 2 * pw(n - 2) / q + 4 * sigma * db;
    c.a[3] = Rational(6 * sigma) / q;

    const Poly td = impure_tilde_delta(n, sigma, c.lloyd);
    for (long i = 0; i <= 2 + sigma; ++i) {
        CertificateCheck chk{i, c.a[0] * td(Rational(i)), pw(n) * c.a[i], false};
        chk.pass = chk.lhs >= chk.rhs;
        c.checks.push_back(std::move(chk));
    }
    if (p == 2 && n == 7 && sigma == 1) {
        c.regime = ImpureRegime::excluded;
    } else if (n >= q + 2 + sigma) {
        c.regime = ImpureRegime::large_n;
    } else {
        c.regime = ImpureRegime::small_n;
        c.small_n_identity = q * c.a[0] == pw(n) * f * (f + 1);
    }
    return c;
}

}  // namespace qbound

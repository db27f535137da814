#pragma once

/**
 * @file qlp.hpp
 * @brief The quantum linear-programming bound as an exact feasibility problem.
 *
 * Unknowns are the weight distribution A_1..A_n (A_0 = 1). With
 *   B_j = (K/p^n) sum_i K_j^n(i) A_i
 * a code ((n, K, d))_p can exist only if
 *   B_0 = 1,  B_j >= 0,  B_j >= A_j >= 0,
 *   A_j = B_j = 0 for 1 <= j < d   (pure)   or   A_j = B_j for 1 <= j < d   (impure).
 *
 * Feasibility is decided by a phase-one simplex with Bland's rule. The solver is a
 * template over the scalar type: Rational gives an exact answer; double is used
 * only to propose a final basis, which is then refactorized exactly; if that basis
 * is primal feasible the exact simplex continues from it and the verdict is exact.
 */

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qbound/bounds.hpp"

namespace qbound {

enum class Relation { eq, ge, le };

struct LinearConstraint {
    std::vector<Rational> coeffs;
    Relation rel = Relation::ge;
    Rational rhs;
    std::string label;
};

struct LPProblem {
    long num_vars = 0;
    std::vector<LinearConstraint> rows;
    std::optional<std::vector<Rational>> objective;  ///< unused by the feasibility solver

    void add(std::vector<Rational> coeffs, Relation rel, Rational rhs, std::string label = {}) {
        if (static_cast<long>(coeffs.size()) != num_vars) throw AlgebraError("constraint row has wrong width");
        rows.push_back({std::move(coeffs), rel, std::move(rhs), std::move(label)});
    }
};

enum class LPStatus { feasible, infeasible };
enum class Verification { exact, unverified };

inline std::string to_string(LPStatus s) { return s == LPStatus::feasible ? "feasible" : "infeasible"; }
inline std::string to_string(Verification v) { return v == Verification::exact ? "exact" : "unverified"; }

struct LPOutcome {
    LPStatus status = LPStatus::infeasible;
    std::vector<Rational> witness;  ///< A_1..A_n when feasible
    Rational phase_one_optimum;     ///< sum of artificials at the optimum; > 0 proves infeasibility
    Verification verification = Verification::exact;
};

/// Exact substitution check of a candidate point against every constraint.
inline bool satisfies(const LPProblem& prob, const std::vector<Rational>& x) {
    if (static_cast<long>(x.size()) != prob.num_vars) return false;
    for (const auto& v : x)
        if (v < 0) return false;
    for (const auto& row : prob.rows) {
        Rational lhs = 0;
        for (size_t i = 0; i < x.size(); ++i) lhs += row.coeffs[i] * x[i];
        const bool ok = row.rel == Relation::eq ? lhs == row.rhs : row.rel == Relation::ge ? lhs >= row.rhs : lhs <= row.rhs;
        if (!ok) return false;
    }
    return true;
}

namespace detail {

template <typename T>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
    static Rational from(const Rational& v) { return v; }
    static bool neg(const Rational& v) { return v < 0; }
    static bool pos(const Rational& v) { return v > 0; }
    static bool zero(const Rational& v) { return v == 0; }
};

template <>
struct ScalarOps<double> {
    static constexpr double eps = 1e-9;
    static double from(const Rational& v) { return v.get_d(); }
    static bool neg(double v) { return v < -eps; }
    static bool pos(double v) { return v > eps; }
    static bool zero(double v) { return std::fabs(v) <= eps; }
};

/// Dense phase-one tableau: rows are constraints with nonnegative right-hand
/// side; the last row holds reduced costs of the artificial objective.
template <typename T>
class PhaseOneTableau {
    using Ops = ScalarOps<T>;

public:
    /// row_scale[i] > 0 multiplies constraint i (used to condition the float tableau).
    explicit PhaseOneTableau(const LPProblem& prob, const std::vector<Rational>* row_scale = nullptr)
        : nv_(static_cast<size_t>(prob.num_vars)), m_(prob.rows.size()) {
        size_t n_slack = 0, n_art = 0;
        for (const auto& r : prob.rows) {
            if (r.rel != Relation::eq) ++n_slack;
            if (needs_artificial(r)) ++n_art;
        }
        art_begin_ = nv_ + n_slack;
        cols_ = art_begin_ + n_art;
        tab_.assign(m_ + 1, std::vector<T>(cols_ + 1, T(0)));
        basis_.assign(m_, 0);
        size_t slack = nv_, art = art_begin_;
        for (size_t i = 0; i < m_; ++i) {
            const auto& r = prob.rows[i];
            const bool flip = r.rhs < 0;
            Rational scale = row_scale ? (*row_scale)[i] : Rational(1);
            if (flip) scale = -scale;
            for (size_t j = 0; j < nv_; ++j) tab_[i][j] = Ops::from(r.coeffs[j] * scale);
            tab_[i][cols_] = Ops::from(r.rhs * scale);
            Relation rel = r.rel;
            if (flip && rel != Relation::eq) rel = rel == Relation::ge ? Relation::le : Relation::ge;
            if (rel == Relation::le) {
                tab_[i][slack] = T(1);
                basis_[i] = slack++;
            } else {
                if (rel == Relation::ge) tab_[i][slack++] = T(-1);
                tab_[i][art] = T(1);
                basis_[i] = art++;
            }
        }
        // reduced costs for min sum(artificials) with the artificial basis
        auto& z = tab_[m_];
        for (size_t i = 0; i < m_; ++i) {
            if (basis_[i] < art_begin_) continue;
            for (size_t j = 0; j <= cols_; ++j)
                if (j < art_begin_ || j == cols_) z[j] -= tab_[i][j];
        }
    }

    void pivot(size_t r, size_t c) {
        const T pv = tab_[r][c];
        for (auto& v : tab_[r]) v /= pv;
        for (size_t i = 0; i <= m_; ++i) {
            if (i == r || Ops::zero(tab_[i][c])) continue;
            const T f = tab_[i][c];
            for (size_t j = 0; j <= cols_; ++j)
                if (!Ops::zero(tab_[r][j])) tab_[i][j] -= f * tab_[r][j];
            tab_[i][c] = T(0);
        }
        basis_[r] = c;
    }

    /// Bland's rule: smallest entering index, ties in the ratio test by smallest basic index.
    void solve() {
        for (;;) {
            size_t enter = cols_;
            for (size_t j = 0; j < cols_; ++j)
                if (Ops::neg(tab_[m_][j])) {
                    enter = j;
                    break;
                }
            if (enter == cols_) return;
            size_t leave = m_;
            T best{};
            for (size_t i = 0; i < m_; ++i) {
                if (!Ops::pos(tab_[i][enter])) continue;
                T ratio = tab_[i][cols_] / tab_[i][enter];
                if (leave == m_ || ratio < best || (!(best < ratio) && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m_) return;  // cannot happen in phase one
            pivot(leave, enter);
        }
    }

    /// Pivots the given basis in, row by row. Returns false if it is singular.
    bool install_basis(const std::vector<size_t>& target) {
        std::vector<bool> done(m_, false);
        for (size_t c : target) {
            size_t row = m_;
            for (size_t i = 0; i < m_; ++i)
                if (!done[i] && !Ops::zero(tab_[i][c])) {
                    row = i;
                    break;
                }
            if (row == m_) return false;
            pivot(row, c);
            done[row] = true;
        }
        return true;
    }

    bool primal_feasible() const {
        for (size_t i = 0; i < m_; ++i)
            if (Ops::neg(tab_[i][cols_])) return false;
        return true;
    }
    bool optimal() const {
        for (size_t j = 0; j < cols_; ++j)
            if (Ops::neg(tab_[m_][j])) return false;
        return true;
    }
    T objective() const { return -tab_[m_][cols_]; }
    const std::vector<size_t>& basis() const { return basis_; }

    std::vector<T> point() const {
        std::vector<T> x(nv_, T(0));
        for (size_t i = 0; i < m_; ++i)
            if (basis_[i] < nv_) x[basis_[i]] = tab_[i][cols_];
        return x;
    }

private:
    static bool needs_artificial(const LinearConstraint& r) {
        if (r.rel == Relation::eq) return true;
        // after flipping to a nonnegative rhs, ge rows need an artificial
        return (r.rhs < 0) ? r.rel == Relation::le : r.rel == Relation::ge;
    }

    size_t nv_, m_;
    size_t art_begin_ = 0, cols_ = 0;
    std::vector<std::vector<T>> tab_;
    std::vector<size_t> basis_;
};

inline LPOutcome finish_exact(const LPProblem& prob, const PhaseOneTableau<Rational>& tab) {
    LPOutcome out;
    out.phase_one_optimum = tab.objective();
    if (out.phase_one_optimum > 0) {
        out.status = LPStatus::infeasible;
        return out;
    }
    out.status = LPStatus::feasible;
    out.witness = tab.point();
    if (!satisfies(prob, out.witness)) throw PropertyViolation("simplex witness failed exact re-verification");
    return out;
}

}  // namespace detail

/// Exact phase-one simplex.
inline LPOutcome lp_feasible(const LPProblem& prob) {
    detail::PhaseOneTableau<Rational> tab(prob);
    tab.solve();
    return detail::finish_exact(prob, tab);
}

/// Float simplex proposes a basis; the exact tableau is refactorized on it. When
/// that basis is primal feasible in exact arithmetic the exact simplex warm-starts
/// from it and the verdict is exact; otherwise the float verdict is returned as unverified.
inline LPOutcome lp_feasible_presolved(const LPProblem& prob) {
    std::vector<Rational> scale;
    for (const auto& r : prob.rows) {
        Rational mx = abs(r.rhs);
        for (const auto& c : r.coeffs)
            if (abs(c) > mx) mx = abs(c);
        scale.push_back(mx == 0 ? Rational(1) : 1 / mx);
    }
    detail::PhaseOneTableau<double> ftab(prob, &scale);
    ftab.solve();

    detail::PhaseOneTableau<Rational> tab(prob);
    if (tab.install_basis(ftab.basis()) && tab.primal_feasible()) {
        // usually already optimal; otherwise a few exact Bland pivots finish the job
        tab.solve();
        return detail::finish_exact(prob, tab);
    }
    LPOutcome out;
    out.verification = Verification::unverified;
    out.phase_one_optimum = Rational(ftab.objective());
    out.status = ftab.objective() > 1e-7 ? LPStatus::infeasible : LPStatus::feasible;
    if (out.status == LPStatus::feasible)
        for (double v : ftab.point()) out.witness.push_back(Rational(v));
    return out;
}

/// Builds the qLP feasibility program for ((n, K, d))_p. Rows involving B_j are
/// multiplied by p^n/K so their coefficients are the Krawtchouk values K_j^n(i).
inline LPProblem assemble_qlp(const CodeQuery& q, const Rational& k_dim) {
    validate(q);
    if (k_dim <= 0) throw DomainError("K must be positive");
    const long n = q.n;
    const Rational inv_c = Rational(ipow(q.p, static_cast<unsigned long>(n))) / k_dim;  // p^n / K
    LPProblem prob;
    prob.num_vars = n;

    std::vector<std::vector<Integer>> kv(static_cast<size_t>(n + 1), std::vector<Integer>(static_cast<size_t>(n + 1)));
    for (long j = 0; j <= n; ++j) {
        const Poly kj = kraw_poly(j, n, q.p);
        for (long i = 0; i <= n; ++i) kv[j][i] = kj(Rational(i)).get_num();
    }
    auto b_row = [&](long j) {
        std::vector<Rational> row(static_cast<size_t>(n));
        for (long i = 1; i <= n; ++i) row[i - 1] = kv[j][i];
        return row;
    };
    auto unit = [&](long j, const Rational& v) {
        std::vector<Rational> row(static_cast<size_t>(n));
        row[j - 1] = v;
        return row;
    };

    prob.add(std::vector<Rational>(static_cast<size_t>(n), Rational(1)), Relation::eq, inv_c - 1, "B_0 = 1");
    for (long j = 0; j <= n; ++j) prob.add(b_row(j), Relation::ge, Rational(-kv[j][0]), "B_" + std::to_string(j) + " >= 0");
    for (long j = 1; j <= n; ++j) {
        auto row = b_row(j);
        row[j - 1] -= inv_c;
        prob.add(std::move(row), Relation::ge, Rational(-kv[j][0]), "B_" + std::to_string(j) + " >= A_" + std::to_string(j));
    }
    for (long j = 1; j <= std::min(q.d - 1, n); ++j) {
        if (q.purity == Purity::pure) {
            prob.add(unit(j, 1), Relation::eq, 0, "A_" + std::to_string(j) + " = 0");
            prob.add(b_row(j), Relation::eq, Rational(-kv[j][0]), "B_" + std::to_string(j) + " = 0");
        } else {
            auto row = b_row(j);
            row[j - 1] -= inv_c;
            prob.add(std::move(row), Relation::eq, Rational(-kv[j][0]), "B_" + std::to_string(j) + " = A_" + std::to_string(j));
        }
    }
    return prob;
}

struct QlpOptions {
    /// Largest n solved by plain exact simplex; above it the float-presolve path is used.
    long exact_limit = 40;
};

struct QlpResult {
    std::optional<long> k;  ///< nullopt: infeasible even at K = 1
    Verification verification = Verification::exact;
};

inline LPOutcome qlp_outcome(const CodeQuery& q, long k, const QlpOptions& opt = {}) {
    const LPProblem prob = assemble_qlp(q, Rational(ipow(q.p, static_cast<unsigned long>(k))));
    return q.n <= opt.exact_limit ? lp_feasible(prob) : lp_feasible_presolved(prob);
}

/// Largest k >= 0 such that K = p^k passes the qLP test, scanning down from the Singleton exponent.
inline QlpResult qlp_max_k(long p, long n, long d, Purity purity, const QlpOptions& opt = {}) {
    const CodeQuery q{p, n, d, purity};
    validate(q);
    QlpResult res;
    const long start = std::clamp(n - 2 * (d - 1), 0L, n);
    for (long k = start; k >= 0; --k) {
        const LPOutcome o = qlp_outcome(q, k, opt);
        if (o.verification == Verification::unverified) res.verification = Verification::unverified;
        if (o.status == LPStatus::feasible) {
            res.k = k;
            return res;
        }
    }
    return res;
}

}  // namespace qbound

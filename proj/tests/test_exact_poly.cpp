#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qbound/roots.hpp"
#include "support/interval_oracle.hpp"

using namespace qbound;

namespace {

Rational Q(long a, long b = 1) { return make_rational(a, b); }

Poly random_poly(std::mt19937& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(0, max_degree), num(-20, 20), den(1, 9);
    std::vector<Rational> c(static_cast<size_t>(deg(rng) + 1));
    for (auto& v : c) v = Q(num(rng), den(rng));
    return Poly(std::move(c));
}

}  // namespace

TEST(BinomInt, SmallValues) {
    EXPECT_EQ(binom_int(5, 2), 10);
    EXPECT_EQ(binom_int(7, 0), 1);
    EXPECT_EQ(binom_int(4, 7), 0);
    EXPECT_EQ(binom_int(4, -1), 0);
    EXPECT_THROW(binom_int(-1, 0), DomainError);
}

TEST(BinomPoly, LowDegrees) {
    EXPECT_EQ(binom_poly(0), Poly::constant(1));
    EXPECT_EQ(binom_poly(1), Poly::x());
    EXPECT_EQ(binom_poly(2), (Poly{0, Q(-1, 2), Q(1, 2)}));
    for (long x = -3; x <= 12; ++x)
        for (long j = 0; j <= 6; ++j) {
            if (x >= 0) {
                EXPECT_EQ(binom_poly(j)(Q(x)), Rational(binom_int(x, j)));
            }
        }
}

TEST(Poly, CanonicalForm) {
    Poly p{1, 2, 0, 0};
    EXPECT_EQ(p.degree(), 1);
    EXPECT_TRUE((Poly{0, 0}).is_zero());
    EXPECT_EQ((Poly{}).degree(), -1);
    EXPECT_TRUE((p - p).is_zero());
    EXPECT_TRUE((p - p).coeffs().empty());
}

TEST(Poly, RingOperationsAreExactProperty) {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> num(-50, 50), den(1, 13);
    for (int trial = 0; trial < 300; ++trial) {
        Poly a = random_poly(rng, 8), b = random_poly(rng, 8);
        Rational x0 = Q(num(rng), den(rng));
        EXPECT_EQ((a + b)(x0), a(x0) + b(x0));
        EXPECT_EQ((a * b)(x0), a(x0) * b(x0));
        EXPECT_EQ(a.compose(b)(x0), a(b(x0)));
        if (!b.is_zero()) {
            auto [quo, rem] = divmod(a, b);
            EXPECT_EQ(quo * b + rem, a);
            EXPECT_LT(rem.degree(), b.degree() > 0 ? b.degree() : 1);
        }
    }
}

TEST(Poly, GcdAndInverse) {
    Poly a = Poly{-1, 1} * Poly{-2, 1};  // (x-1)(x-2)
    Poly b = Poly{-1, 1} * Poly{3, 1};   // (x-1)(x+3)
    EXPECT_EQ(gcd(a, b), (Poly{-1, 1}));
    Poly inv = inverse_mod(Poly{0, 1}, a);
    EXPECT_EQ((inv * Poly::x()) % a, Poly::constant(1));
    EXPECT_THROW(inverse_mod(b, a), AlgebraError);
}

TEST(SturmIsolate, LinearIntegerRoot) {
    auto r = sturm_isolate(Poly{-3, 1}, Q(0), Q(10));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_TRUE(r[0].is_integer);
    EXPECT_EQ(*r[0].exact_value, 3);
    EXPECT_EQ(r[0].floor, 3);
}

TEST(SturmIsolate, SqrtTwo) {
    auto r = sturm_isolate(Poly{-2, 0, 1}, Q(0), Q(10));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_FALSE(r[0].is_integer);
    EXPECT_FALSE(r[0].exact_value.has_value());
    EXPECT_EQ(r[0].floor, 1);
    EXPECT_EQ(floor_of(r[0].lo), 1);
    EXPECT_EQ(floor_of(r[0].hi), 1);
    EXPECT_LT(r[0].lo * r[0].lo, 2);
    EXPECT_GT(r[0].hi * r[0].hi, 2);
}

TEST(SturmIsolate, LinearLloydZero) {
    // p = 2, n = 10, t = 1: 4z = 3*10 + 1
    auto r = sturm_isolate(Poly{-31, 4}, Q(0), Q(10));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(*r[0].exact_value, Q(31, 4));
    EXPECT_EQ(r[0].floor, 7);
    EXPECT_FALSE(r[0].is_integer);
}

TEST(SturmIsolate, RationalRootsOfHigherDegree) {
    // (3x - 7)(x - 5)(2x + 1)(x^2 - 3)
    Poly p = Poly{-7, 3} * Poly{-5, 1} * Poly{1, 2} * Poly{-3, 0, 1};
    auto r = sturm_isolate(p, Q(-10), Q(10));
    ASSERT_EQ(r.size(), 5u);
    EXPECT_FALSE(r[0].exact_value.has_value());
    EXPECT_EQ(r[0].floor, -2);
    EXPECT_EQ(*r[1].exact_value, Q(-1, 2));
    EXPECT_EQ(r[1].floor, -1);
    EXPECT_FALSE(r[2].exact_value.has_value());
    EXPECT_EQ(r[2].floor, 1);
    EXPECT_EQ(*r[3].exact_value, Q(7, 3));
    EXPECT_FALSE(r[3].is_integer);
    EXPECT_EQ(r[3].floor, 2);
    EXPECT_TRUE(r[4].is_integer);
    EXPECT_EQ(r[4].floor, 5);
}

TEST(SturmIsolate, Preconditions) {
    EXPECT_THROW(sturm_isolate(Poly{1, -2, 1}, Q(-5), Q(5)), AlgebraError);  // (x-1)^2
    EXPECT_THROW(sturm_isolate(Poly{-3, 1}, Q(3), Q(5)), AlgebraError);      // endpoint root
}

TEST(SturmIsolate, CountsMatchSturmAndBracketsSurviveRefinementProperty) {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> cnt(1, 6), val(-40, 40), den(1, 5), sq(2, 60);
    for (int trial = 0; trial < 60; ++trial) {
        Poly p = Poly::constant(1);
        const int k = cnt(rng);
        for (int i = 0; i < k; ++i) {
            if (i % 2 == 0) p *= Poly::linear(den(rng), val(rng));
            else p *= Poly{-sq(rng), 0, 1};
        }
        p = p.monic();
        if (!is_square_free(p)) continue;
        const Rational b = root_bound(p);
        auto roots = sturm_isolate(p, -b, b);
        detail::SturmChain chain(p);
        EXPECT_EQ(static_cast<int>(roots.size()), chain.count(-b, b));
        for (size_t i = 0; i + 1 < roots.size(); ++i) EXPECT_LE(roots[i].hi, roots[i + 1].lo);
        for (auto r : roots) {
            if (r.is_integer) {
                EXPECT_EQ(p(r.lo), 0);
                continue;
            }
            EXPECT_EQ(floor_of(r.lo), r.floor);
            EXPECT_EQ(floor_of(r.hi), r.floor);
            if (r.exact_value) {
                EXPECT_EQ(p(*r.exact_value), 0);
            }
            for (int it = 0; it < 20; ++it) {
                ASSERT_NE(sgn(p(r.lo)), sgn(p(r.hi)));
                Rational m = (r.lo + r.hi) / 2;
                if (p(m) == 0) break;
                if (sgn(p(m)) == sgn(p(r.lo))) {
                    r.lo = m;
                } else {
                    r.hi = m;
                }
            }
        }
    }
}

TEST(RootSum, VietaExamples) {
    const Poly m{2, -3, 1};  // roots 1, 2
    EXPECT_EQ(root_sum(Poly::constant(1), Poly::constant(1), m), 2);
    EXPECT_EQ(root_sum(Poly::x(), Poly::constant(1), m), 3);
    EXPECT_EQ(root_sum(Poly::constant(1), Poly::x(), m), Q(3, 2));
}

TEST(RootSum, PoleAtRootRejected) {
    const Poly m{2, -3, 1};
    EXPECT_THROW(root_sum(Poly::constant(1), Poly{-1, 1}, m), AlgebraError);
    EXPECT_THROW(root_sum(Poly::constant(1), Poly::constant(1), Poly{2, -3, 2}), AlgebraError);  // not monic
}

TEST(RootSum, AgreesWithCertifiedIntervalsProperty) {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> kind(0, 1), val(-30, 30), den(1, 4), sq(2, 40), deg(1, 6);
    const Rational target = make_rational(Integer(1), ipow(10, 30));
    int checked = 0;
    for (int trial = 0; checked < 40 && trial < 400; ++trial) {
        Poly m = Poly::constant(1);
        std::vector<double> approx;
        const int d = deg(rng);
        while (m.degree() < d) {
            if (kind(rng) == 0 || m.degree() + 2 > d) {
                const Rational r = Q(val(rng), den(rng));
                m *= Poly{-r, 1};
                approx.push_back(r.get_d());
            } else {
                const int a = sq(rng);
                m *= Poly{-a, 0, 1};
                approx.push_back(std::sqrt(a));
                approx.push_back(-std::sqrt(a));
            }
        }
        std::sort(approx.begin(), approx.end());
        bool separated = true;
        for (size_t i = 0; i + 1 < approx.size(); ++i) separated = separated && approx[i + 1] - approx[i] > 0.05;
        if (!separated) continue;

        Poly num = random_poly(rng, 5), den_p = random_poly(rng, 4);
        if (den_p.is_zero() || num.is_zero()) continue;
        // all roots lie in [-30, 30] by construction
        auto brackets = oracle::bracket_roots(m, Q(-61, 2), Q(61, 2), Q(1, 64));
        ASSERT_EQ(static_cast<int>(brackets.size()), m.degree());
        Rational exact;
        try {
            exact = root_sum(num, den_p, m);
        } catch (const AlgebraError&) {
            continue;  // D vanishes at a root
        }
        oracle::Interval enc;
        try {
            enc = oracle::enclose_root_sum(num, den_p, m, brackets, target);
        } catch (const std::exception&) {
            continue;
        }
        EXPECT_TRUE(enc.contains(exact)) << "trial " << trial;
        EXPECT_LT(enc.width(), target);
        ++checked;
    }
    EXPECT_GE(checked, 30);
}

TEST(CeilLog, Examples) {
    EXPECT_EQ(ceil_log(2, Q(31)), 5);
    EXPECT_EQ(ceil_log(2, Q(32)), 5);
    EXPECT_EQ(ceil_log(2, Q(13888, 403)), 6);
    EXPECT_EQ(ceil_log(2, Q(1)), 0);
    EXPECT_EQ(ceil_log(2, Q(1, 2)), -1);
    EXPECT_EQ(ceil_log(3, Q(1, 10)), -2);
    EXPECT_THROW(ceil_log(2, Q(0)), DomainError);
    EXPECT_THROW(ceil_log(2, Q(-3)), DomainError);
}

TEST(CeilLog, PowerBoundariesProperty) {
    for (long p : {2L, 3L, 5L, 7L})
        for (unsigned long m = 0; m <= 64; ++m) {
            const Integer pm = ipow(p, m);
            EXPECT_EQ(ceil_log(p, Rational(pm)), static_cast<long>(m));
            EXPECT_EQ(ceil_log(p, Rational(pm + 1)), static_cast<long>(m) + 1);
        }
}

#include "thomas/decompose.hpp"
#include "thomas/verify.hpp"

#include <gtest/gtest.h>

using namespace thomas;

namespace {

const Var A = 0, X = 1;
Polynomial v(Var k) { return Polynomial::variable(k); }

/// Near-equality of a complex number and a real target at the active precision.
bool near(const Complex& z, double re, double im = 0) { return abs(z - Complex(Real(re), Real(im))) < Real(1e-30); }

std::set<double> real_parts(const std::vector<NumericPoint>& pts, Var k)
{
    std::set<double> out;
    for (const auto& p : pts) out.insert(std::round(static_cast<double>(p.at(k).re) * 1e6) / 1e6);
    return out;
}

}  // namespace

TEST(NumericRoots, CubeRootsOfUnity)
{
    PrecisionGuard guard(128);
    const auto roots = numeric_roots(specialize(v(X) * v(X) + v(X) + 1, X, {}), 1e-20);
    ASSERT_EQ(roots.size(), 2u);
    const double s = std::sqrt(3.0) / 2;
    const bool order = roots[0].im > 0;
    EXPECT_LT(abs(roots[order ? 0 : 1] - Complex(Real(-0.5), sqrt(Real(3)) / 2)), Real(1e-30));
    EXPECT_NEAR(static_cast<double>(roots[order ? 1 : 0].im), -s, 1e-15);
}

TEST(NumericRoots, DropsVanishingLeadingCoefficient)
{
    PrecisionGuard guard(128);
    // a*x^2 + x - 2 at a = 0 is linear.
    const NumericPoint at{{A, Complex(Real(0))}};
    const auto roots = numeric_roots(specialize(v(A) * v(X) * v(X) + v(X) - 2, X, at), 1e-20);
    ASSERT_EQ(roots.size(), 1u);
    EXPECT_TRUE(near(roots[0], 2));
}

TEST(MergeClusters, AveragesCloseRoots)
{
    PrecisionGuard guard(128);
    const std::vector<Complex> r{Complex(Real(1)), Complex(Real(1) + Real(1e-12)), Complex(Real(-1))};
    const auto m = detail::merge_clusters(r, 1e-9);
    ASSERT_EQ(m.size(), 2u);
}

TEST(ZeroTest, ScaleUsesUnitFloor)
{
    PrecisionGuard guard(128);
    // x^2 at x = 1e-15 is tiny in absolute terms and must read as zero.
    const NumericPoint small{{X, Complex(Real(1e-15))}};
    EXPECT_TRUE(is_numeric_zero(evaluate_numeric(v(X) * v(X), small), 1e-20));
    const NumericPoint one{{X, Complex(Real(1))}};
    EXPECT_FALSE(is_numeric_zero(evaluate_numeric(v(X) * v(X) - 1 + Polynomial(Rational(1, 1000)), one), 1e-20));
    EXPECT_THROW(evaluate_numeric(v(A), one), std::invalid_argument);
}

TEST(SampleSolutions, SquareRootsOfOne)
{
    const auto pts = sample_solutions(SimpleSystem{{eq(v(X) * v(X) - 1)}}, {X}, SampleConfig{});
    EXPECT_EQ(real_parts(pts, X), (std::set<double>{-1, 1}));
    for (const auto& p : pts) EXPECT_EQ(p.at(X).im, 0);
}

TEST(SampleSolutions, WorkedFirstSystemGivesCubeRoots)
{
    const SimpleSystem s{{ineq(v(A) * v(A) - v(A) + 1), eq(v(X) * v(X) + v(X) + 1)}};
    SampleConfig cfg;
    cfg.samples_per_free_variable = 3;
    const auto pts = sample_solutions(s, {A, X}, cfg);
    ASSERT_EQ(pts.size(), 6u);
    PrecisionGuard guard(cfg.precision);
    for (const auto& p : pts) {
        EXPECT_LT(abs(p.at(X).re + Real(0.5)), Real(1e-30));
        EXPECT_NEAR(std::abs(static_cast<double>(p.at(X).im)), std::sqrt(3.0) / 2, 1e-15);
        EXPECT_TRUE(is_member(p, s, cfg.tolerance));
    }
}

TEST(SampleSolutions, CurveSecondSystem)
{
    const Var x = 0, y = 1;
    const auto pts = sample_solutions(SimpleSystem{{eq(v(x) * v(x) + v(x)), eq(v(y))}}, {x, y}, SampleConfig{});
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_EQ(real_parts(pts, x), (std::set<double>{-1, 0}));
    EXPECT_EQ(real_parts(pts, y), (std::set<double>{0}));
}

TEST(SampleSolutions, DeterministicForSeed)
{
    const SimpleSystem s{{ineq(v(A)), eq(v(X) * v(X) - v(A))}};
    SampleConfig cfg;
    cfg.seed = 11;
    const auto a = sample_solutions(s, {A, X}, cfg), b = sample_solutions(s, {A, X}, cfg);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].at(A).re, b[i].at(A).re);
}

TEST(SampleSolutions, ExhaustedRedrawBudget)
{
    // With no redraws allowed, an inequation-led variable cannot be placed.
    SampleConfig cfg;
    cfg.redraw_budget = 0;
    EXPECT_THROW(sample_solutions(SimpleSystem{{ineq(v(A))}}, {A}, cfg), sampling_error);
}

TEST(CheckDisjoint, CurveDecomposition)
{
    const Var x = 0, y = 1;
    const Polynomial p = v(y) * v(y) - v(x).pow(3) - v(x) * v(x);
    const auto d = decompose({p}, {});
    SampleConfig cfg;
    cfg.samples_per_free_variable = 4;
    const std::vector<Relation> input{eq(p)};
    const auto rep = check_disjoint(d.systems, {x, y}, cfg, &input);
    EXPECT_TRUE(rep.ok());
    EXPECT_GE(rep.points, 8u + 2u);

    // The origin belongs to the second system and is excluded from the first.
    PrecisionGuard guard(cfg.precision);
    const NumericPoint origin{{x, Complex()}, {y, Complex()}};
    const SimpleSystem first{{ineq(v(x) * v(x) + v(x)), eq(p)}};
    EXPECT_FALSE(is_member(origin, first, cfg.tolerance));
    EXPECT_TRUE(is_member(origin, SimpleSystem{{eq(v(x) * v(x) + v(x)), eq(v(y))}}, cfg.tolerance));
}

TEST(CheckDisjoint, DuplicateSystemIsViolation)
{
    const SimpleSystem s{{eq(v(X) * v(X) - 2)}};
    const auto rep = check_disjoint({s, s}, {X}, SampleConfig{});
    EXPECT_FALSE(rep.ok());
    EXPECT_EQ(rep.violations.size(), 4u);
}

TEST(CheckDisjoint, SingleSystemIsVacuous)
{
    const auto rep = check_disjoint({SimpleSystem{{eq(v(X) * v(X) - 2)}}}, {X}, SampleConfig{});
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.points, 2u);
}

TEST(CheckCover, PointInNoSystem)
{
    SampleConfig cfg;
    PrecisionGuard guard(cfg.precision);
    const std::vector<SimpleSystem> sys{SimpleSystem{{eq(v(X) - 1)}}};
    EXPECT_TRUE(check_cover(sys, {{{X, Complex(Real(1))}}}, cfg).ok());
    EXPECT_FALSE(check_cover(sys, {{{X, Complex(Real(2))}}}, cfg).ok());
}

TEST(CountZeroDim, Examples)
{
    const Var x = 0, y = 1;
    EXPECT_EQ(count_zero_dim(SimpleSystem{{eq(v(x) * v(x) - 1), eq(v(y) * v(y) - 4)}}, {x, y}), 4u);
    EXPECT_EQ(count_zero_dim(SimpleSystem{{eq(v(A) * v(A) - v(A) + 1), eq(v(X) - v(A) + 1)}}, {A, X}), 2u);
    EXPECT_EQ(count_zero_dim(SimpleSystem{{ineq(v(A) * v(A) - v(A) + 1), eq(v(X) * v(X) + v(X) + 1)}}, {A, X}),
              std::nullopt);
    // A variable that occurs nowhere is free.
    EXPECT_EQ(count_zero_dim(SimpleSystem{{eq(v(X) - 1)}}, {A, X}), std::nullopt);
}

TEST(BruteCount, Examples)
{
    const Var x = 0, y = 1;
    EXPECT_EQ(brute_count({v(x) * v(x) - 1, v(y) * v(y) - 4}, {}, {x, y}), 4u);
    EXPECT_EQ(brute_count({v(X) * v(X) + v(X) + 1}, {v(X) + v(A)}, {A, X}), std::nullopt);
    EXPECT_EQ(brute_count({v(X) * v(X) + v(X) + 1, v(A) * v(A) - v(A) + 1}, {v(X) + v(A)}, {A, X}), 2u);
}

TEST(BruteCount, RepeatedRootsCountOnce)
{
    const Var x = 0, y = 1;
    // The curve meets y = 0 at x = 0 (double) and x = -1.
    const Polynomial p = v(y) * v(y) - v(x).pow(3) - v(x) * v(x);
    EXPECT_EQ(brute_count({p, v(y)}, {}, {x, y}), 2u);
    EXPECT_EQ(brute_count({(v(x) - 1).pow(3)}, {}, {x}), 1u);
}

TEST(BruteCount, ContentSurvivesSquareFreeStep)
{
    const Var x = 0, y = 1;
    // y^2*x has the component x = 0 that a naive square-free part drops.
    EXPECT_EQ(brute_count({4 * v(y) + 4, 2 * v(y) * v(y) * v(x)}, {3 * v(y) + 5}, {x, y}), 1u);
}

TEST(BruteCount, InconsistentAndZeroInequation)
{
    EXPECT_EQ(brute_count({v(X) - 1, v(X) - 2}, {}, {X}), 0u);
    EXPECT_EQ(brute_count({v(X) - 1}, {Polynomial{}}, {X}), 0u);
}

TEST(BruteSolve, AgreesWithDecompositionPoints)
{
    const std::vector<Polynomial> eqs{v(X) * v(X) + v(X) + 1, v(A) * v(A) - v(A) + 1};
    const std::vector<Polynomial> ineqs{v(X) + v(A)};
    SampleConfig cfg;
    const auto pts = brute_solve(eqs, ineqs, {A, X}, cfg);
    ASSERT_TRUE(pts);
    const auto d = decompose(eqs, ineqs);
    EXPECT_TRUE(check_cover(d.systems, *pts, cfg).ok());
}

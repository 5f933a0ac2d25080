#include "oracles.hpp"
#include "thomas/subres.hpp"

#include <gtest/gtest.h>

#include <thread>

using namespace thomas;

namespace {

const Var A = 0, B = 1, X = 2;
Polynomial a() { return Polynomial::variable(A); }
Polynomial x() { return Polynomial::variable(X); }

}  // namespace

TEST(Prs, WorkedExample)
{
    const auto s = prs(x() * x() + x() + 1, x() + a(), X);
    ASSERT_EQ(s.regular.size(), 3u);
    EXPECT_EQ(s.regular.at(2), x() * x() + x() + 1);
    EXPECT_EQ(s.regular.at(1), x() + a());
    EXPECT_EQ(s.regular.at(0), a() * a() - a() + 1);
    EXPECT_EQ(res(s, 0), a() * a() - a() + 1);
    EXPECT_EQ(res(s, 1), Polynomial(1L));
    EXPECT_EQ(res(s, 2), Polynomial(1L));
}

TEST(Prs, SquareRootDiscriminant)
{
    const auto s = prs(x() * x() - a(), 2 * x(), X);
    EXPECT_EQ(s.regular.at(0), -4 * a());
    EXPECT_EQ(res(s, 0), -4 * a());
    EXPECT_EQ(res(s, 1), Polynomial(2L));
    EXPECT_EQ(res(s, 2), Polynomial(1L));
}

TEST(Prs, VanishingResultant)
{
    const auto s = prs(x().pow(3), x(), X);
    EXPECT_EQ(s.regular.count(0), 0u);
    EXPECT_EQ(s.regular.count(2), 0u);
    EXPECT_TRUE(res(s, 0).is_zero());
    EXPECT_TRUE(res(s, 2).is_zero());
    EXPECT_EQ(res(s, 1), Polynomial(1L));
    EXPECT_EQ(res(s, 3), Polynomial(1L));
}

TEST(Prs, StandardConventionForDerivative)
{
    // Discriminant-type resultant of x^2+x+1 and its derivative.
    const auto s = prs(x() * x() + x() + 1, 2 * x() + 1, X);
    EXPECT_EQ(res(s, 0), Polynomial(3L));
}

TEST(Prs, Errors)
{
    EXPECT_THROW(prs(x(), x() * x(), X), algebra_error);
    EXPECT_THROW(prs(x(), x() + 1, X), algebra_error);
    const auto s = prs(x(), Polynomial(1L), X);
    EXPECT_THROW(res(s, 2), algebra_error);
}

TEST(Prs, DegreeZeroAndZeroSecondArgument)
{
    const auto s = prs(x() * x() + a(), a() + 1, X);
    EXPECT_EQ(res(s, 0), a() + 1);
    EXPECT_TRUE(res(s, 1).is_zero());
    EXPECT_EQ(res(s, 2), Polynomial(1L));
    const auto z = prs(x() * x() + a(), Polynomial{}, X);
    EXPECT_TRUE(res(z, 0).is_zero());
    EXPECT_TRUE(res(z, 1).is_zero());
}

TEST(Prs, MatchesDeterminantOracle)
{
    std::mt19937_64 rng(41);
    int checked = 0;
    for (int it = 0; it < 60; ++it) {
        const unsigned p = 2 + rng() % 5;
        const unsigned q = 1 + rng() % (p - 1);
        const Polynomial P = oracle::random_poly(rng, {A, B, X}, p, 3, 0.45);
        const Polynomial Q = oracle::random_poly(rng, {A, B, X}, q, 3, 0.45);
        const auto s = prs(P, Q, X);
        for (std::uint32_t j = 0; j < q; ++j) {
            const Polynomial sj = oracle::subresultant(P, Q, X, j);
            const bool regular = !sj.is_zero() && sj.degree(X) == j;
            if (regular) {
                ASSERT_TRUE(s.regular.count(j)) << "missing regular member " << j;
                EXPECT_EQ(s.regular.at(j), sj) << "member " << j;
            } else {
                EXPECT_EQ(s.regular.count(j), 0u) << "spurious member " << j;
            }
            ++checked;
        }
        EXPECT_EQ(res(s, 0), oracle::resultant(P, Q, X));
    }
    EXPECT_GT(checked, 60);
}

TEST(Prs, MatchesClassicalRecurrence)
{
    std::mt19937_64 rng(43);
    for (int it = 0; it < 150; ++it) {
        const unsigned p = 2 + rng() % 6;
        const unsigned q = 1 + rng() % (p - 1);
        const Polynomial P = oracle::random_poly(rng, {A, B, X}, p, 5, 0.3);
        const Polynomial Q = oracle::random_poly(rng, {A, B, X}, q, 5, 0.3);
        EXPECT_EQ(prs(P, Q, X).regular, oracle::naive_regular(P, Q, X));
    }
}

TEST(Prs, DefectiveChainsFromCommonFactors)
{
    std::mt19937_64 rng(47);
    for (int it = 0; it < 60; ++it) {
        const Polynomial g = oracle::random_poly(rng, {A, B, X}, 1 + rng() % 2, 3);
        const Polynomial P = g * oracle::random_poly(rng, {A, B, X}, 2 + rng() % 2, 3, 0.3);
        const Polynomial Q = g * oracle::random_poly(rng, {A, B, X}, 1, 3, 0.3);
        if (P.degree(X) <= Q.degree(X)) continue;
        const auto s = prs(P, Q, X);
        EXPECT_TRUE(res(s, 0).is_zero());
        EXPECT_EQ(s.regular, oracle::naive_regular(P, Q, X));
    }
}

TEST(Prs, ResultantUnivariateMatchesSylvester)
{
    std::mt19937_64 rng(53);
    for (int it = 0; it < 100; ++it) {
        const unsigned p = 1 + rng() % 6;
        const unsigned q = rng() % p;
        const Polynomial P = oracle::random_poly(rng, {X}, p, 9);
        const Polynomial Q = oracle::random_poly(rng, {X}, q, 9);
        if (q == 0) continue;
        EXPECT_EQ(res(prs(P, Q, X), 0), oracle::resultant(P, Q, X));
    }
}

TEST(Prs, SpecializationGivesGcdDegree)
{
    std::mt19937_64 rng(59);
    std::uniform_int_distribution<int> val(-20, 20);
    int hits = 0;
    for (int it = 0; it < 200; ++it) {
        Polynomial g = oracle::random_poly(rng, {A, B, X}, rng() % 3, 3);
        if (g.degree(X) == 0) g = Polynomial(1L);
        const Polynomial P = g * oracle::random_poly(rng, {A, B, X}, 1 + rng() % 3, 3);
        const Polynomial Q = g * oracle::random_poly(rng, {A, B, X}, rng() % 3, 3);
        if (P.degree(X) <= Q.degree(X) || Q.degree(X) == 0) continue;
        const auto s = prs(P, Q, X);
        const std::map<Var, Rational> pt{{A, val(rng)}, {B, val(rng)}};
        const Polynomial pa = evaluate(P, pt, X), qa = evaluate(Q, pt, X);
        if (pa.degree(X) != P.degree(X)) continue;
        std::uint32_t first = 0;
        while (evaluate(res(s, first), pt).is_zero()) ++first;
        const Polynomial ga = oracle::euclid_gcd(pa, qa, X);
        EXPECT_EQ(first, ga.degree(X));
        ++hits;
    }
    EXPECT_GT(hits, 50);
}

TEST(PrsCache, TransparentAndThreadSafe)
{
    PrsCache cache;
    const Polynomial p = x().pow(4) + a() * x() + 1, q = 3 * x() * x() - a();
    const auto s1 = cache.get(p, q, X);
    const auto s2 = cache.get(p, q, X);
    EXPECT_EQ(s1.get(), s2.get());
    EXPECT_EQ(*s1, prs(p, q, X));
    std::vector<std::thread> ts;
    for (int t = 0; t < 4; ++t)
        ts.emplace_back([&, t] {
            for (int k = 0; k < 20; ++k) {
                const Polynomial qq = q + Polynomial(Rational(k % 5 + t));
                EXPECT_EQ(*cache.get(p, qq, X), prs(p, qq, X));
            }
        });
    for (auto& t : ts) t.join();
    EXPECT_LE(cache.size(), 1u + 4 + 5);
}

#include "oracles.hpp"
#include "thomas/system.hpp"
#include "thomas/verify.hpp"

#include <gtest/gtest.h>

using namespace thomas;

namespace {

const Var A = 0, X = 1;
Polynomial a() { return Polynomial::variable(A); }
Polynomial x() { return Polynomial::variable(X); }

System with_T(std::initializer_list<Relation> rs)
{
    System S;
    for (const auto& r : rs) S.T.emplace(*r.poly.leader(), r);
    return S;
}

}  // namespace

TEST(Reduce, WorkedExampleResultantVanishes)
{
    const System S = with_T({eq(x() * x() + x() + 1), eq(a() * a() - a() + 1)});
    EXPECT_TRUE(reduce(S, a() * a() - a() + 1).is_zero());
}

TEST(Reduce, EmptyTriangularPartIsIdentity)
{
    const System S;
    const Polynomial p = a() * x() * x() + 3 * x() - a();
    EXPECT_EQ(reduce(S, p), p);
}

TEST(Reduce, LongDivisionRemainder)
{
    const System S = with_T({eq(x() * x() + x() + 1)});
    EXPECT_EQ(reduce(S, x().pow(3)), Polynomial(1L));
}

TEST(Reduce, InitialReducingToZeroIsStripped)
{
    // init(q) = a^2 - a + 1 vanishes modulo T, so only the tail survives.
    const System S = with_T({eq(a() * a() - a() + 1)});
    const Polynomial q = (a() * a() - a() + 1) * x() * x() + x() + a();
    EXPECT_EQ(reduce(S, q), normalize(x() + a()));
}

TEST(Reduce, InequationsInTAreNotReductors)
{
    const System S = with_T({ineq(x() * x() + 1)});
    EXPECT_EQ(reduce(S, x().pow(3)), x().pow(3));
}

TEST(Reduce, CoefficientReductionIsOptional)
{
    const System S = with_T({eq(a() * a() - 2)});
    const Polynomial q = a() * a() * x() + 1;
    EXPECT_EQ(reduce(S, q), normalize(q));
    EXPECT_EQ(reduce(S, q, {true}), normalize(2 * x() + 1));
}

TEST(Reduce, PreservesVanishingOnSampledSolutions)
{
    std::mt19937_64 rng(7);
    const SimpleSystem simple{{eq(a() * a() - 2), eq(x() * x() - a())}};
    System S;
    for (const auto& r : simple.relations) S.T.emplace(*r.poly.leader(), r);
    const auto points = sample_solutions(simple, {A, X}, SampleConfig{});
    ASSERT_EQ(points.size(), 4u);
    PrecisionGuard guard(128);
    for (int it = 0; it < 60; ++it) {
        // p lies in the ideal when the remainder term is dropped.
        Polynomial p = oracle::random_poly(rng, {A, X}, 2, 4) * (a() * a() - 2) +
                       oracle::random_poly(rng, {A, X}, 2, 4) * (x() * x() - a());
        if (it % 2) p += oracle::random_poly(rng, {A, X}, 1, 4);
        for (const bool coefficients : {false, true}) {
            const Polynomial r = reduce(S, p, {coefficients});
            for (const auto& pt : points)
                EXPECT_EQ(is_numeric_zero(evaluate_numeric(p, pt), 1e-20),
                          is_numeric_zero(evaluate_numeric(r, pt), 1e-20));
        }
    }
}

TEST(Select, WorkedExamplePicksEquation)
{
    Queue Q;
    Q.insert(ineq(x() + a()));
    Q.insert(eq(x() * x() + x() + 1));
    EXPECT_EQ(select(Q), eq(x() * x() + x() + 1));
}

TEST(Select, Singleton)
{
    Queue Q{eq(x() * x() - a())};
    EXPECT_EQ(select(Q), eq(x() * x() - a()));
}

TEST(Select, LowerEquationBeforeHigherInequation)
{
    Queue Q{eq(a() * a() - a() + 1), ineq(x() + a())};
    EXPECT_EQ(select(Q), eq(a() * a() - a() + 1));
}

TEST(Select, EmptyQueueThrows)
{
    Queue Q;
    EXPECT_THROW(select(Q), std::logic_error);
}

TEST(Select, AxiomsOnRandomQueues)
{
    std::mt19937_64 rng(11);
    const std::vector<Var> vars{0, 1, 2};
    for (int it = 0; it < 300; ++it) {
        Queue Q;
        std::uniform_int_distribution<int> n(1, 6), v(0, 2), k(0, 1), d(1, 3);
        for (int i = n(rng); i > 0; --i) {
            const int top = v(rng);
            std::vector<Var> vs(vars.begin(), vars.begin() + top + 1);
            Q.insert({oracle::random_poly(rng, vs, d(rng), 3), k(rng) ? Kind::equation : Kind::inequation});
        }
        const Relation& s = select(Q);
        for (const auto& r : Q) {
            if (!r.is_equation()) continue;
            if (s.is_equation()) EXPECT_FALSE(r.poly.leader() < s.poly.leader());
            else EXPECT_FALSE(r.poly.leader() <= s.poly.leader());
        }
    }
}

TEST(Queue, DuplicatesCollapseAfterNormalization)
{
    System S;
    S.enqueue(2 * x() + 2, Kind::equation);
    S.enqueue(-x() - 1, Kind::equation);
    S.enqueue(x() + 1, Kind::inequation);
    EXPECT_EQ(S.Q.size(), 2u);
}

TEST(InsertEquation, IntoEmptyT)
{
    System S;
    insert_equation_alg(S, x() - a() + 1);
    ASSERT_EQ(S.T.size(), 1u);
    EXPECT_EQ(S.T.at(X), eq(x() - a() + 1));
}

TEST(InsertEquation, ReplacesPreviousEquation)
{
    System S = with_T({eq(x() * x() + x() + 1), eq(a() * a() - a() + 1)});
    insert_equation_alg(S, x() - a() + 1);
    EXPECT_EQ(S.T.at(X), eq(x() - a() + 1));
    EXPECT_EQ(S.T.size(), 2u);
}

TEST(SimpleSystem, EquationAndInequationViews)
{
    SimpleSystem s{{ineq(a()), eq(x() - a())}};
    EXPECT_EQ(s.equations(), std::vector<Polynomial>{x() - a()});
    EXPECT_EQ(s.inequations(), std::vector<Polynomial>{a()});
}

// Numeric checks of algebraic decompositions: solution sampling, membership,
// disjointness, solution counting and a brute-force elimination oracle.
//
// Arithmetic is carried out in MPFR floating point (via Boost.Multiprecision)
// at a configurable binary precision. A value counts as zero when its
// magnitude is at most tolerance * (sum of the magnitudes of the terms that
// produced it).
#pragma once

#include "thomas/subres.hpp"
#include "thomas/system.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <random>
#include <set>
#include <string>
#include <variant>

namespace thomas {

using Real = boost::multiprecision::mpfr_float;

/// Sets the working precision (in bits) of Real for the lifetime of the
/// guard. The precision is process-wide, so checks run on one thread.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned bits) : saved_(Real::default_precision())
    {
        Real::default_precision(bits_to_digits(bits));
    }
    ~PrecisionGuard() { Real::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

    static unsigned bits_to_digits(unsigned bits) { return static_cast<unsigned>(std::ceil(bits * 0.30103)) + 1; }

private:
    unsigned saved_;
};

struct Complex {
    Real re{0}, im{0};

    Complex() = default;
    Complex(Real r, Real i = Real(0)) : re(std::move(r)), im(std::move(i)) {}  // NOLINT

    static Complex from(const Rational& q)
    {
        Real n(q.get_num().get_mpz_t()), d(q.get_den().get_mpz_t());
        return Complex(n / d);
    }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b)
    {
        const Real n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    Complex operator-() const { return {-re, -im}; }
    Complex& operator+=(const Complex& b) { return *this = *this + b; }
    Complex& operator-=(const Complex& b) { return *this = *this - b; }
    Complex& operator*=(const Complex& b) { return *this = *this * b; }
};

inline Real abs(const Complex& z) { return boost::multiprecision::hypot(z.re, z.im); }

inline Complex cpow(Complex z, std::uint32_t e)
{
    Complex r(Real(1));
    while (e) {
        if (e & 1) r *= z;
        z *= z;
        e >>= 1;
    }
    return r;
}

using NumericPoint = std::map<Var, Complex>;

struct SampleConfig {
    unsigned precision = 128;
    double tolerance = 1e-20;
    unsigned samples_per_free_variable = 1;
    std::uint64_t seed = 0;
    /// Redraw budget when a random value violates an inequation.
    unsigned redraw_budget = 200;
};

class sampling_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Value of p at a point together with the magnitude scale used for the
/// relative zero test. The scale sums |c| * prod max(1, |x_i|)^e over the
/// terms, so values at coordinates near the origin are judged absolutely.
struct Evaluation {
    Complex value;
    Real scale{0};
};

inline Evaluation evaluate_numeric(const Polynomial& p, const NumericPoint& a)
{
    Evaluation out;
    const Real one(1);
    for (const auto& t : p.terms()) {
        Complex m = Complex::from(t.coef);
        Real size = abs(m);
        for (const auto& [v, e] : t.mono) {
            auto it = a.find(v);
            if (it == a.end()) throw std::invalid_argument("evaluate_numeric: unassigned variable");
            m *= cpow(it->second, e);
            size *= boost::multiprecision::pow(std::max(one, abs(it->second)), e);
        }
        out.value += m;
        out.scale += size;
    }
    return out;
}

inline bool is_numeric_zero(const Evaluation& e, double tolerance)
{
    return abs(e.value) <= Real(tolerance) * e.scale;
}

/// Coefficients (ascending degree in x) of p specialized at a point that
/// assigns every other variable.
inline std::vector<Evaluation> specialize(const Polynomial& p, Var x, const NumericPoint& a)
{
    const auto cs = p.coefficients(x);
    std::vector<Evaluation> out;
    out.reserve(cs.size());
    for (const auto& c : cs) out.push_back(evaluate_numeric(c, a));
    return out;
}

namespace detail {

/// All complex roots of sum c_k x^k (c_d != 0) by Aberth iteration followed
/// by Newton polishing.
inline std::vector<Complex> aberth_roots(std::vector<Complex> c)
{
    while (!c.empty() && abs(c.back()) == 0) c.pop_back();
    if (c.size() <= 1) return {};
    const std::size_t d = c.size() - 1;
    const Complex lead = c.back();
    for (auto& x : c) x = x / lead;
    if (d == 1) return {-c[0]};

    auto horner = [&](const Complex& z, Complex& f, Complex& df) {
        f = c[d];
        df = Complex();
        for (std::size_t k = d; k-- > 0;) {
            df = df * z + f;
            f = f * z + c[k];
        }
    };

    Real bound(0);
    for (std::size_t k = 0; k < d; ++k) bound = boost::multiprecision::max(bound, abs(c[k]));
    bound += 1;
    const Real pi = boost::multiprecision::acos(Real(-1));
    std::vector<Complex> z(d);
    for (std::size_t k = 0; k < d; ++k) {
        const Real angle = 2 * pi * Real(k) / Real(d) + Real(0.4);
        const Real radius = bound * Real(0.5) + Real(0.1) * Real(k) / Real(d);
        z[k] = Complex(radius * boost::multiprecision::cos(angle), radius * boost::multiprecision::sin(angle));
    }

    const Real eps = boost::multiprecision::pow(Real(10), -static_cast<int>(Real::default_precision() * 9 / 10));
    for (int iter = 0; iter < 2000; ++iter) {
        Real max_step(0);
        for (std::size_t k = 0; k < d; ++k) {
            Complex f, df;
            horner(z[k], f, df);
            if (abs(f) == 0) continue;
            const Complex ratio = f / df;
            Complex sum;
            for (std::size_t j = 0; j < d; ++j)
                if (j != k) {
                    const Complex diff = z[k] - z[j];
                    if (abs(diff) != 0) sum += Complex(Real(1)) / diff;
                }
            const Complex step = ratio / (Complex(Real(1)) - ratio * sum);
            z[k] -= step;
            max_step = boost::multiprecision::max(max_step, abs(step) / (abs(z[k]) + 1));
        }
        if (max_step < eps) break;
    }
    for (auto& r : z) {
        for (int k = 0; k < 5; ++k) {
            Complex f, df;
            horner(r, f, df);
            if (abs(df) == 0) break;
            const Complex candidate = r - f / df;
            Complex g, dg;
            horner(candidate, g, dg);
            if (abs(g) >= abs(f)) break;
            r = candidate;
        }
    }
    return z;
}

inline Var top_variable(const std::vector<Var>& vars) { return *std::max_element(vars.begin(), vars.end()); }

}  // namespace detail

/// Roots of a univariate polynomial given by specialized coefficients.
/// Leading coefficients that are numerically zero are dropped.
inline std::vector<Complex> numeric_roots(std::vector<Evaluation> coefficients, double tolerance)
{
    while (!coefficients.empty() && is_numeric_zero(coefficients.back(), tolerance)) coefficients.pop_back();
    std::vector<Complex> c;
    for (const auto& e : coefficients) c.push_back(e.value);
    return detail::aberth_roots(std::move(c));
}

/// Random rational with numerator and denominator bounded by 100.
inline Rational random_rational(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> num(-100, 100), den(1, 100);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

/// True when the point satisfies every relation of S within tolerance.
inline bool is_member(const NumericPoint& a, const std::vector<Relation>& relations, double tolerance)
{
    for (const auto& r : relations) {
        const bool zero = is_numeric_zero(evaluate_numeric(r.poly, a), tolerance);
        if (r.is_equation() != zero) return false;
    }
    return true;
}

inline bool is_member(const NumericPoint& a, const SimpleSystem& S, double tolerance)
{
    return is_member(a, S.relations, tolerance);
}

/// Points of a simple system: variables are visited in ascending order;
/// equation-led variables are extended by every root, the others receive
/// random rationals redrawn until the inequation on them holds. `vars` lists
/// every variable that must be assigned (at least those occurring in S).
inline std::vector<NumericPoint> sample_solutions(const SimpleSystem& S, std::vector<Var> vars, const SampleConfig& cfg,
                                                  std::uint64_t stream = 0)
{
    PrecisionGuard guard(cfg.precision);
    std::map<Var, const Relation*> by_leader;
    for (const auto& r : S.relations) {
        if (r.poly.is_constant()) throw std::invalid_argument("sample_solutions: constant relation");
        by_leader.emplace(*r.poly.leader(), &r);
        for (Var v : r.poly.variables()) vars.push_back(v);
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());

    std::vector<NumericPoint> points{NumericPoint{}};
    for (Var v : vars) {
        std::mt19937_64 rng(cfg.seed ^ (stream * 0x9e3779b97f4a7c15ULL) ^ (v * 0xbf58476d1ce4e5b9ULL));
        std::vector<NumericPoint> next;
        auto it = by_leader.find(v);
        const Relation* r = it == by_leader.end() ? nullptr : it->second;
        for (const auto& a : points) {
            if (r && r->is_equation()) {
                for (auto& root : numeric_roots(specialize(r->poly, v, a), cfg.tolerance)) {
                    NumericPoint b = a;
                    b.emplace(v, root);
                    next.push_back(std::move(b));
                }
                continue;
            }
            for (unsigned s = 0; s < std::max(1u, cfg.samples_per_free_variable); ++s) {
                bool placed = false;
                for (unsigned attempt = 0; attempt < cfg.redraw_budget && !placed; ++attempt) {
                    NumericPoint b = a;
                    b.emplace(v, Complex::from(random_rational(rng)));
                    if (r && is_numeric_zero(evaluate_numeric(r->poly, b), cfg.tolerance)) continue;
                    next.push_back(std::move(b));
                    placed = true;
                }
                if (!placed) throw sampling_error("sample_solutions: redraw budget exhausted");
            }
        }
        points = std::move(next);
    }
    return points;
}

struct Violation {
    std::size_t system;    ///< system the point was sampled from (or npos)
    std::size_t other;     ///< system it also satisfies (or npos)
    std::string message;
};

struct VerificationReport {
    std::size_t points = 0;
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

namespace detail {

inline std::string describe(const NumericPoint& a)
{
    std::string s = "(";
    bool first = true;
    for (const auto& [v, z] : a) {
        if (!first) s += ", ";
        first = false;
        s += "v" + std::to_string(v) + "=" + z.re.str(12) + (z.im < 0 ? "" : "+") + z.im.str(12) + "i";
    }
    return s + ")";
}

}  // namespace detail

/// Samples every system and tests each point against every other system.
/// When `input` is given, each point must also satisfy the input relations.
inline VerificationReport check_disjoint(const std::vector<SimpleSystem>& systems, const std::vector<Var>& vars,
                                         const SampleConfig& cfg, const std::vector<Relation>* input = nullptr)
{
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    auto attempt = [&](const SampleConfig& c) {
        PrecisionGuard guard(c.precision);
        VerificationReport rep;
        for (std::size_t i = 0; i < systems.size(); ++i) {
            for (const auto& a : sample_solutions(systems[i], vars, c, i)) {
                ++rep.points;
                if (!is_member(a, systems[i], c.tolerance))
                    rep.violations.push_back({i, npos, "sample not in its own system " + detail::describe(a)});
                if (input && !is_member(a, *input, c.tolerance))
                    rep.violations.push_back({i, npos, "sample violates the input " + detail::describe(a)});
                for (std::size_t j = 0; j < systems.size(); ++j)
                    if (j != i && is_member(a, systems[j], c.tolerance))
                        rep.violations.push_back({i, j, "sample lies in two systems " + detail::describe(a)});
            }
        }
        return rep;
    };
    VerificationReport rep = attempt(cfg);
    if (!rep.ok()) {
        SampleConfig fine = cfg;
        fine.precision *= 2;
        rep = attempt(fine);
    }
    return rep;
}

/// Checks that each given point lies in exactly one system.
inline VerificationReport check_cover(const std::vector<SimpleSystem>& systems, const std::vector<NumericPoint>& points,
                                      const SampleConfig& cfg)
{
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    auto attempt = [&](const SampleConfig& c) {
        PrecisionGuard guard(c.precision);
        VerificationReport rep;
        for (const auto& a : points) {
            ++rep.points;
            std::size_t hits = 0;
            for (const auto& s : systems) hits += is_member(a, s, c.tolerance);
            if (hits != 1)
                rep.violations.push_back({npos, npos,
                                          "input solution lies in " + std::to_string(hits) + " systems " +
                                              detail::describe(a)});
        }
        return rep;
    };
    VerificationReport rep = attempt(cfg);
    if (!rep.ok()) {
        SampleConfig fine = cfg;
        fine.precision *= 2;
        rep = attempt(fine);
    }
    return rep;
}

/// Number of solutions of a simple system over the given variables: the
/// product of the equation ranks when every variable leads an equation,
/// otherwise nullopt (infinitely many).
inline std::optional<std::uint64_t> count_zero_dim(const SimpleSystem& S, const std::vector<Var>& vars)
{
    std::set<Var> all(vars.begin(), vars.end());
    std::map<Var, std::uint32_t> eq_rank;
    for (const auto& r : S.relations) {
        for (Var v : r.poly.variables()) all.insert(v);
        if (r.is_equation()) eq_rank[*r.poly.leader()] = r.poly.rank();
    }
    std::uint64_t n = 1;
    for (Var v : all) {
        auto it = eq_rank.find(v);
        if (it == eq_rank.end()) return std::nullopt;
        n *= it->second;
    }
    return n;
}

/// Result of the elimination oracle: the finite solution set, or nullopt
/// when a positive-dimensional component was detected.
using SolutionSet = std::optional<std::vector<NumericPoint>>;

namespace detail {

/// Tolerance used inside the oracle to accept back-substituted roots. It is
/// loose on purpose: roots of specializations with clustered roots are only
/// accurate to about half the working precision.
inline double oracle_tolerance(const SampleConfig& cfg)
{
    return std::max(cfg.tolerance, std::pow(2.0, -static_cast<double>(cfg.precision) / 3));
}

/// Square-free part of p in x; the content in x is kept as it is, since it
/// only matters through its zero set.
inline Polynomial univariate_squarefree(const Polynomial& p, Var x)
{
    const Polynomial c = content(p, x);
    const Polynomial pp = *exact_divide(p, c);
    const Polynomial g = gcd(pp, derive(pp, x));
    return g.contains(x) ? c * *exact_divide(pp, g) : p;
}

/// res_x(a, b) up to a nonzero factor; both must contain x.
inline Polynomial eliminate(Polynomial a, Polynomial b, Var x)
{
    if (a.degree(x) < b.degree(x)) std::swap(a, b);
    if (a.degree(x) == b.degree(x)) {
        b = a.coefficient(x, a.degree(x)) * b - b.coefficient(x, b.degree(x)) * a;
        if (b.is_zero()) return Polynomial{};
    }
    return normalize(res(prs(a, b, x), 0));
}

/// Replaces every cluster of roots closer than the tolerance by its mean; the
/// mean of a perturbed k-fold root is accurate to the working precision.
inline std::vector<Complex> merge_clusters(const std::vector<Complex>& roots, double tolerance)
{
    std::vector<Complex> out;
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        Complex sum = roots[i];
        unsigned k = 1;
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (used[j] || abs(roots[j] - roots[i]) > Real(tolerance) * (1 + abs(roots[i]))) continue;
            used[j] = true;
            sum += roots[j];
            ++k;
        }
        out.push_back({sum.re / k, sum.im / k});
    }
    return out;
}

inline void dedupe(std::vector<NumericPoint>& pts, double tolerance)
{
    std::vector<NumericPoint> out;
    for (auto& p : pts) {
        bool dup = false;
        for (const auto& q : out) {
            Real dist(0), size(1);
            for (const auto& [v, z] : p) {
                dist += abs(z - q.at(v));
                size += abs(z);
            }
            if (dist <= Real(tolerance) * size) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(std::move(p));
    }
    pts = std::move(out);
}

inline SolutionSet solve_equations(std::vector<Polynomial> F, std::vector<Var> vars, const SampleConfig& cfg,
                                   std::mt19937_64& rng, unsigned depth = 0)
{
    if (depth > 12) return std::nullopt;
    std::vector<Polynomial> nonzero;
    for (auto& f : F) {
        if (f.is_zero()) continue;
        if (f.is_constant()) return std::vector<NumericPoint>{};
        nonzero.push_back(normalize(f));
    }
    std::sort(nonzero.begin(), nonzero.end());
    nonzero.erase(std::unique(nonzero.begin(), nonzero.end()), nonzero.end());
    F = std::move(nonzero);
    if (vars.empty()) return std::vector<NumericPoint>{NumericPoint{}};
    if (F.empty()) return std::nullopt;

    const Var y = top_variable(vars);
    std::vector<Var> lower;
    for (Var v : vars)
        if (v != y) lower.push_back(v);
    std::vector<Polynomial> F0, F1;
    for (auto& f : F) (f.contains(y) ? F1 : F0).push_back(f);

    if (F1.empty()) {
        auto base = solve_equations(F0, lower, cfg, rng, depth + 1);
        if (base && base->empty()) return base;
        return std::nullopt;
    }

    // Split off a common factor: V(F0, c*G) = V(F0, c) u V(F0, G).
    Polynomial c = F1.front();
    for (std::size_t i = 1; i < F1.size(); ++i) c = gcd(c, F1[i]);
    if (F1.size() > 1 && c.contains(y)) {
        std::vector<Polynomial> A = F0, B = F0;
        A.push_back(c);
        for (const auto& f : F1) B.push_back(*exact_divide(f, c));
        auto sa = solve_equations(A, vars, cfg, rng, depth + 1);
        auto sb = solve_equations(B, vars, cfg, rng, depth + 1);
        if (!sa || !sb) return std::nullopt;
        sa->insert(sa->end(), sb->begin(), sb->end());
        dedupe(*sa, 1e-12);
        return sa;
    }

    for (auto& f : F1) f = univariate_squarefree(f, y);

    std::vector<Polynomial> projected = F0;
    if (F1.size() >= 2) {
        std::uniform_int_distribution<long> w(-20, 20);
        auto combo = [&] {
            Polynomial g;
            for (const auto& f : F1) g += f * w(rng);
            return g;
        };
        for (int k = 0; k < 2; ++k) {
            Polynomial r;
            for (int attempt = 0; attempt < 8 && r.is_zero(); ++attempt) {
                const Polynomial g1 = combo(), g2 = combo();
                if (!g1.contains(y) || !g2.contains(y)) continue;
                r = eliminate(g1, g2, y);
            }
            if (r.is_zero()) return std::nullopt;
            projected.push_back(r);
        }
    } else {
        // One equation in y: every lower point with a nonvanishing
        // specialization contributes its roots; points where all y-coefficients
        // vanish form a fiber that is either empty or infinite.
        auto base = solve_equations(F0, lower, cfg, rng, depth + 1);
        if (!base) return std::nullopt;
        std::vector<NumericPoint> out;
        const double tol = oracle_tolerance(cfg);
        for (const auto& a : *base) {
            auto cs = specialize(F1.front(), y, a);
            bool all_zero = true;
            for (std::size_t k = 1; k < cs.size(); ++k) all_zero = all_zero && is_numeric_zero(cs[k], tol);
            if (all_zero) {
                if (is_numeric_zero(cs[0], tol)) return std::nullopt;
                continue;
            }
            for (auto& root : merge_clusters(numeric_roots(cs, tol), tol)) {
                NumericPoint b = a;
                b.emplace(y, root);
                out.push_back(std::move(b));
            }
        }
        dedupe(out, 1e-12);
        return out;
    }

    auto base = solve_equations(projected, lower, cfg, rng, depth + 1);
    if (!base) return std::nullopt;
    std::vector<NumericPoint> out;
    const double tol = oracle_tolerance(cfg);
    for (const auto& a : *base) {
        // Roots of the lowest-degree nonvanishing specialization, filtered by the others.
        std::vector<std::vector<Evaluation>> specs;
        for (const auto& f : F1) specs.push_back(specialize(f, y, a));
        std::size_t best = specs.size();
        std::size_t best_degree = 0;
        bool identically_zero = true;
        for (std::size_t i = 0; i < specs.size(); ++i) {
            std::size_t deg = specs[i].size();
            while (deg > 0 && is_numeric_zero(specs[i][deg - 1], tol)) --deg;
            if (deg == 0) continue;
            identically_zero = false;
            if (deg == 1) {
                best = specs.size();
                best_degree = 0;
                break;  // nonzero constant: no roots over this point
            }
            if (best == specs.size() || deg < best_degree) {
                best = i;
                best_degree = deg;
            }
        }
        if (identically_zero) return std::nullopt;
        if (best == specs.size()) continue;
        for (auto& root : merge_clusters(numeric_roots(specs[best], tol), tol)) {
            NumericPoint b = a;
            b.emplace(y, root);
            bool ok = true;
            for (const auto& f : F1) ok = ok && is_numeric_zero(evaluate_numeric(f, b), tol);
            if (ok) out.push_back(std::move(b));
        }
    }
    dedupe(out, 1e-12);
    return out;
}

}  // namespace detail

/// Solutions of a system of equations and inequations over at most a few
/// variables, by iterated resultants, numeric root finding and
/// back-substitution. nullopt means positive-dimensional.
inline SolutionSet brute_solve(const std::vector<Polynomial>& equations, const std::vector<Polynomial>& inequations,
                               std::vector<Var> vars, const SampleConfig& cfg = {})
{
    PrecisionGuard guard(cfg.precision);
    for (const auto& p : equations)
        for (Var v : p.variables()) vars.push_back(v);
    for (const auto& p : inequations)
        for (Var v : p.variables()) vars.push_back(v);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    for (const auto& q : inequations)
        if (q.is_zero()) return std::vector<NumericPoint>{};
    std::mt19937_64 rng(cfg.seed + 0x5851f42d4c957f2dULL);
    auto sols = detail::solve_equations(equations, vars, cfg, rng);
    if (!sols) return std::nullopt;
    std::vector<NumericPoint> out;
    for (auto& a : *sols) {
        bool ok = true;
        for (const auto& q : inequations) ok = ok && !is_numeric_zero(evaluate_numeric(q, a), cfg.tolerance);
        if (ok) out.push_back(std::move(a));
    }
    return out;
}

/// Number of solutions from brute_solve, or nullopt when infinite.
inline std::optional<std::uint64_t> brute_count(const std::vector<Polynomial>& equations,
                                                const std::vector<Polynomial>& inequations,
                                                const std::vector<Var>& vars, const SampleConfig& cfg = {})
{
    auto s = brute_solve(equations, inequations, vars, cfg);
    if (!s) return std::nullopt;
    return s->size();
}

}  // namespace thomas

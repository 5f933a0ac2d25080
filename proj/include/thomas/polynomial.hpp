// Sparse multivariate polynomials over the rationals.
//
// Variables are opaque 64-bit keys whose numeric order *is* the ranking: a
// larger key is a higher-ranked variable. Algebraic problems use the variable
// index directly; differential problems encode jet variables so that the
// encoding is monotone in the chosen differential ranking (see janet.hpp).
//
// Terms are stored in a vector sorted descending in the lexicographic order
// induced by the ranking (highest variable most significant). With this order
// the leading term carries the leader at its highest power, so leader, rank
// and initial are cheap scans.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace thomas {

using Integer = mpz_class;
using Rational = mpq_class;
using Var = std::uint64_t;

/// Leader of a polynomial: a variable, or std::nullopt for the constant
/// symbol 1 (which compares below every variable, as std::optional does).
using Leader = std::optional<Var>;

class algebra_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Power product, stored as (variable, exponent) pairs with strictly
/// decreasing variables and positive exponents.
class Monomial {
public:
    using value_type = std::pair<Var, std::uint32_t>;

    Monomial() = default;
    explicit Monomial(std::vector<value_type> factors) : factors_(std::move(factors)) {}

    static Monomial power(Var v, std::uint32_t e)
    {
        Monomial m;
        if (e > 0) m.factors_.emplace_back(v, e);
        return m;
    }

    bool is_one() const { return factors_.empty(); }
    const std::vector<value_type>& factors() const { return factors_; }
    auto begin() const { return factors_.begin(); }
    auto end() const { return factors_.end(); }
    std::size_t size() const { return factors_.size(); }

    std::uint32_t degree(Var v) const
    {
        for (const auto& [w, e] : factors_) {
            if (w == v) return e;
            if (w < v) break;
        }
        return 0;
    }

    std::uint64_t total_degree() const
    {
        std::uint64_t d = 0;
        for (const auto& f : factors_) d += f.second;
        return d;
    }

    /// Monomial with the factor of v removed.
    Monomial without(Var v) const
    {
        Monomial m;
        m.factors_.reserve(factors_.size());
        for (const auto& f : factors_)
            if (f.first != v) m.factors_.push_back(f);
        return m;
    }

    /// Monomial with the exponent of v replaced by e.
    Monomial with(Var v, std::uint32_t e) const
    {
        Monomial m;
        m.factors_.reserve(factors_.size() + 1);
        bool placed = false;
        for (const auto& f : factors_) {
            if (!placed && f.first <= v) {
                if (e > 0) m.factors_.emplace_back(v, e);
                placed = true;
                if (f.first == v) continue;
            }
            m.factors_.push_back(f);
        }
        if (!placed && e > 0) m.factors_.emplace_back(v, e);
        return m;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b)
    {
        Monomial m;
        m.factors_.reserve(a.size() + b.size());
        auto i = a.factors_.begin(), j = b.factors_.begin();
        while (i != a.factors_.end() && j != b.factors_.end()) {
            if (i->first > j->first) {
                m.factors_.push_back(*i++);
            } else if (j->first > i->first) {
                m.factors_.push_back(*j++);
            } else {
                m.factors_.emplace_back(i->first, i->second + j->second);
                ++i;
                ++j;
            }
        }
        m.factors_.insert(m.factors_.end(), i, a.factors_.end());
        m.factors_.insert(m.factors_.end(), j, b.factors_.end());
        return m;
    }

    /// a / b if b divides a.
    friend std::optional<Monomial> divide(const Monomial& a, const Monomial& b)
    {
        Monomial m;
        auto j = b.factors_.begin();
        for (const auto& f : a.factors_) {
            if (j != b.factors_.end() && j->first > f.first) return std::nullopt;
            if (j != b.factors_.end() && j->first == f.first) {
                if (j->second > f.second) return std::nullopt;
                if (j->second < f.second) m.factors_.emplace_back(f.first, f.second - j->second);
                ++j;
            } else {
                m.factors_.push_back(f);
            }
        }
        if (j != b.factors_.end()) return std::nullopt;
        return m;
    }

    /// Lexicographic comparison with the highest variable most significant.
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b)
    {
        auto i = a.factors_.begin(), j = b.factors_.begin();
        for (; i != a.factors_.end() && j != b.factors_.end(); ++i, ++j) {
            if (i->first != j->first) return i->first <=> j->first;
            if (i->second != j->second) return i->second <=> j->second;
        }
        if (i != a.factors_.end()) return std::strong_ordering::greater;
        if (j != b.factors_.end()) return std::strong_ordering::less;
        return std::strong_ordering::equal;
    }
    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<value_type> factors_;
};

namespace detail {

inline std::strong_ordering compare_rational(const Rational& a, const Rational& b)
{
    const int c = cmp(a, b);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

inline std::size_t hash_combine(std::size_t seed, std::size_t v)
{
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

inline std::size_t hash_mpz(const mpz_class& z)
{
    std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
    const std::size_t limbs = mpz_size(z.get_mpz_t());
    for (std::size_t k = 0; k < limbs; ++k)
        h = hash_combine(h, static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(k))));
    return h;
}

}  // namespace detail

class Polynomial {
public:
    struct Term {
        Monomial mono;
        Rational coef;
        friend bool operator==(const Term& a, const Term& b) { return a.mono == b.mono && a.coef == b.coef; }
    };

    Polynomial() = default;
    Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    Polynomial(const Rational& c)                    // NOLINT(google-explicit-constructor)
    {
        if (sgn(c) != 0) terms_.push_back({Monomial{}, c});
        if (!terms_.empty()) terms_.front().coef.canonicalize();
    }

    static Polynomial variable(Var v, std::uint32_t exponent = 1)
    {
        Polynomial p;
        p.terms_.push_back({Monomial::power(v, exponent), Rational(1)});
        return p;
    }

    static Polynomial term(Monomial m, Rational c)
    {
        Polynomial p;
        if (sgn(c) != 0) p.terms_.push_back({std::move(m), std::move(c)});
        return p;
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    static Polynomial from_terms(std::vector<Term> terms)
    {
        Polynomial p;
        p.terms_ = std::move(terms);
        p.canonicalize();
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

    Rational constant_value() const
    {
        if (!is_constant()) throw algebra_error("constant_value of a non-constant polynomial");
        return terms_.empty() ? Rational(0) : terms_[0].coef;
    }

    /// Leading coefficient in the lexicographic term order.
    const Rational& leading_coefficient() const
    {
        if (terms_.empty()) throw algebra_error("leading coefficient of zero");
        return terms_.front().coef;
    }

    Leader leader() const
    {
        if (terms_.empty() || terms_[0].mono.is_one()) return std::nullopt;
        return terms_[0].mono.factors().front().first;
    }

    std::uint32_t rank() const
    {
        if (terms_.empty() || terms_[0].mono.is_one()) return 0;
        return terms_[0].mono.factors().front().second;
    }

    std::uint32_t degree(Var v) const
    {
        std::uint32_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.degree(v));
        return d;
    }

    std::uint64_t total_degree() const
    {
        std::uint64_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
        return d;
    }

    bool contains(Var v) const
    {
        for (const auto& t : terms_)
            if (t.mono.degree(v) > 0) return true;
        return false;
    }

    /// Variables occurring in the polynomial, ascending.
    std::vector<Var> variables() const
    {
        std::vector<Var> vs;
        for (const auto& t : terms_)
            for (const auto& f : t.mono) vs.push_back(f.first);
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return vs;
    }

    /// Coefficients of v^0, v^1, ..., v^deg as polynomials free of v.
    std::vector<Polynomial> coefficients(Var v) const
    {
        std::vector<Polynomial> cs(degree(v) + 1);
        // Removing v keeps the relative order of terms sharing its exponent.
        for (const auto& t : terms_) cs[t.mono.degree(v)].terms_.push_back({t.mono.without(v), t.coef});
        return cs;
    }

    Polynomial coefficient(Var v, std::uint32_t e) const
    {
        Polynomial c;
        for (const auto& t : terms_)
            if (t.mono.degree(v) == e) c.terms_.push_back({t.mono.without(v), t.coef});
        return c;
    }

    static Polynomial from_coefficients(const std::vector<Polynomial>& cs, Var v)
    {
        std::vector<Term> ts;
        for (std::size_t e = 0; e < cs.size(); ++e)
            for (const auto& t : cs[e].terms_) ts.push_back({t.mono.with(v, static_cast<std::uint32_t>(e)), t.coef});
        return from_terms(std::move(ts));
    }

    /// Initial: coefficient of leader^rank; the polynomial itself if constant.
    Polynomial initial() const
    {
        const Leader x = leader();
        if (!x) return *this;
        Polynomial c;
        const std::uint32_t r = rank();
        for (const auto& t : terms_) {
            if (t.mono.factors().empty() || t.mono.factors().front().first != *x) break;
            if (t.mono.factors().front().second != r) break;
            c.terms_.push_back({t.mono.without(*x), t.coef});
        }
        return c;
    }

    /// p - init(p) * ld(p)^rank(p).
    Polynomial tail() const
    {
        const Leader x = leader();
        if (!x) return Polynomial{};
        Polynomial c;
        const std::uint32_t r = rank();
        for (const auto& t : terms_) {
            const auto& f = t.mono.factors();
            if (!f.empty() && f.front().first == *x && f.front().second == r) continue;
            c.terms_.push_back(t);
        }
        return c;
    }

    Polynomial operator-() const
    {
        Polynomial r = *this;
        for (auto& t : r.terms_) t.coef = -t.coef;
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_constant()) return b * a.terms_[0].coef;
        if (b.is_constant()) return a * b.terms_[0].coef;
        std::vector<Term> ts;
        ts.reserve(a.size() * b.size());
        for (const auto& s : a.terms_)
            for (const auto& t : b.terms_) ts.push_back({s.mono * t.mono, s.coef * t.coef});
        return from_terms(std::move(ts));
    }

    friend Polynomial operator*(const Polynomial& a, const Rational& c)
    {
        if (sgn(c) == 0) return {};
        Polynomial r = a;
        for (auto& t : r.terms_) t.coef *= c;
        return r;
    }
    friend Polynomial operator*(const Rational& c, const Polynomial& a) { return a * c; }
    friend Polynomial operator*(const Polynomial& a, long c) { return a * Rational(c); }
    friend Polynomial operator*(long c, const Polynomial& a) { return a * Rational(c); }

    /// Multiplication by a monomial (order-preserving, no re-sort needed).
    Polynomial times(const Monomial& m) const
    {
        Polynomial r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coef});
        return r;
    }

    Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
    Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
    Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

    Polynomial pow(unsigned e) const
    {
        Polynomial result(1L), base = *this;
        while (e > 0) {
            if (e & 1U) result *= base;
            e >>= 1U;
            if (e > 0) base *= base;
        }
        return result;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

    /// Total order: by terms, highest first; a proper prefix compares lower.
    friend std::strong_ordering operator<=>(const Polynomial& a, const Polynomial& b)
    {
        const std::size_t n = std::min(a.size(), b.size());
        for (std::size_t k = 0; k < n; ++k) {
            if (auto c = a.terms_[k].mono <=> b.terms_[k].mono; c != 0) return c;
            if (auto c = detail::compare_rational(a.terms_[k].coef, b.terms_[k].coef); c != 0) return c;
        }
        return a.size() <=> b.size();
    }

    std::size_t hash() const
    {
        std::size_t h = terms_.size();
        for (const auto& t : terms_) {
            for (const auto& f : t.mono) h = detail::hash_combine(h, f.first * 131 + f.second);
            h = detail::hash_combine(h, detail::hash_mpz(t.coef.get_num()));
            h = detail::hash_combine(h, detail::hash_mpz(t.coef.get_den()));
        }
        return h;
    }

private:
    void canonicalize()
    {
        std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().mono == t.mono) {
                out.back().coef += t.coef;
            } else {
                if (!out.empty() && sgn(out.back().coef) == 0) out.pop_back();
                out.push_back(std::move(t));
            }
        }
        if (!out.empty() && sgn(out.back().coef) == 0) out.pop_back();
        terms_ = std::move(out);
    }

    static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract)
    {
        Polynomial r;
        r.terms_.reserve(a.size() + b.size());
        auto i = a.terms_.begin(), j = b.terms_.begin();
        while (i != a.terms_.end() || j != b.terms_.end()) {
            if (j == b.terms_.end() || (i != a.terms_.end() && i->mono > j->mono)) {
                r.terms_.push_back(*i++);
            } else if (i == a.terms_.end() || j->mono > i->mono) {
                r.terms_.push_back({j->mono, subtract ? Rational(-j->coef) : j->coef});
                ++j;
            } else {
                Rational c = subtract ? Rational(i->coef - j->coef) : Rational(i->coef + j->coef);
                if (sgn(c) != 0) r.terms_.push_back({i->mono, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    std::vector<Term> terms_;
};

struct PolynomialHash {
    std::size_t operator()(const Polynomial& p) const { return p.hash(); }
};

/// Leader, rank and initial of a polynomial. head(0) = (1, 0, 0).
struct Head {
    Leader leader;
    std::uint32_t rank = 0;
    Polynomial initial;
};

inline Head head(const Polynomial& p) { return {p.leader(), p.rank(), p.initial()}; }

/// Formal partial derivative with respect to x.
inline Polynomial derive(const Polynomial& p, Var x)
{
    std::vector<Polynomial::Term> ts;
    for (const auto& t : p.terms()) {
        const std::uint32_t e = t.mono.degree(x);
        if (e == 0) continue;
        ts.push_back({t.mono.with(x, e - 1), t.coef * e});
    }
    return Polynomial::from_terms(std::move(ts));
}

/// Substitutes rational values for every assigned variable strictly below
/// `below` (all assigned variables when `below` is std::nullopt). Variables
/// at or above `below` are left untouched. Throws if a variable below the
/// bound occurs in p but is missing from the assignment.
inline Polynomial substitute(const Polynomial& p, const std::map<Var, Rational>& values,
                             std::optional<Var> below = std::nullopt)
{
    std::vector<Polynomial::Term> ts;
    ts.reserve(p.size());
    for (const auto& t : p.terms()) {
        Rational c = t.coef;
        std::vector<Monomial::value_type> keep;
        for (const auto& [v, e] : t.mono) {
            if (below && v >= *below) {
                keep.emplace_back(v, e);
                continue;
            }
            auto it = values.find(v);
            if (it == values.end()) {
                if (below) throw algebra_error("evaluation: variable missing from assignment");
                keep.emplace_back(v, e);
                continue;
            }
            Rational pw;
            mpz_pow_ui(pw.get_num_mpz_t(), it->second.get_num_mpz_t(), e);
            mpz_pow_ui(pw.get_den_mpz_t(), it->second.get_den_mpz_t(), e);
            c *= pw;
        }
        c.canonicalize();
        ts.push_back({Monomial(std::move(keep)), std::move(c)});
    }
    return Polynomial::from_terms(std::move(ts));
}

/// Expanded text form, terms in descending order. `name` maps a variable key
/// to its printed name.
inline std::string to_string(const Polynomial& p, const std::function<std::string(Var)>& name)
{
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : p.terms()) {
        Rational c = t.coef;
        const bool neg = sgn(c) < 0;
        if (neg) c = -c;
        if (first) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        first = false;
        std::string mono;
        for (const auto& [v, e] : t.mono) {
            if (!mono.empty()) mono += "*";
            mono += name(v);
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) out += c.get_str();
        else if (c == 1) out += mono;
        else out += c.get_str() + "*" + mono;
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p)
{
    return os << to_string(p, [](Var v) { return "v" + std::to_string(v); });
}

/// Evaluation homomorphism: every variable below `below` is replaced by its
/// value; higher variables are kept. std::nullopt evaluates everything.
inline Polynomial evaluate(const Polynomial& p, const std::map<Var, Rational>& values,
                           std::optional<Var> below = std::nullopt)
{
    if (!below) {
        for (Var v : p.variables())
            if (!values.count(v)) throw algebra_error("evaluation: variable missing from assignment");
    }
    return substitute(p, values, below);
}

/// Result of sparse pseudo-division: m * p = quotient * q + remainder.
struct PseudoDivision {
    Polynomial remainder;
    Polynomial quotient;
    Polynomial multiplier;
    unsigned steps = 0;
};

/// Sparse pseudo-division of p by q with respect to x. The multiplier is
/// init(q)^k where k counts the reduction steps actually performed; a
/// constant initial is divided out over Q instead, leaving k = 0.
inline PseudoDivision prem_pquo(const Polynomial& p, const Polynomial& q, Var x)
{
    const std::uint32_t dq = q.degree(x);
    if (dq == 0) throw algebra_error("pseudo-division by a polynomial free of the main variable");
    PseudoDivision out{p, Polynomial{}, Polynomial(1L), 0};
    if (p.degree(x) < dq) return out;

    auto rc = p.coefficients(x);
    const auto qc = q.coefficients(x);
    const Polynomial& lq = qc[dq];
    std::vector<Polynomial> quot(rc.size() - dq);

    for (std::size_t d = rc.size() - 1; d + 1 > dq; --d) {
        if (rc[d].is_zero()) continue;
        Polynomial lead = rc[d];
        const std::size_t shift = d - dq;
        if (lq.is_constant()) {
            if (lq.constant_value() != 1) lead = lead * Rational(1 / lq.constant_value());
        } else {
            for (std::size_t k = 0; k < d; ++k)
                if (!rc[k].is_zero()) rc[k] *= lq;
            for (auto& c : quot)
                if (!c.is_zero()) c *= lq;
            out.multiplier *= lq;
        }
        quot[shift] += lead;
        rc[d] = Polynomial{};
        for (std::size_t k = 0; k < dq; ++k)
            if (!qc[k].is_zero()) rc[k + shift] -= lead * qc[k];
        if (!lq.is_constant()) ++out.steps;
    }
    rc.resize(dq);
    out.remainder = Polynomial::from_coefficients(rc, x);
    out.quotient = Polynomial::from_coefficients(quot, x);
    return out;
}

inline Polynomial prem(const Polynomial& p, const Polynomial& q, Var x) { return prem_pquo(p, q, x).remainder; }
inline Polynomial pquo(const Polynomial& p, const Polynomial& q, Var x) { return prem_pquo(p, q, x).quotient; }

/// Exact multivariate division; std::nullopt if b does not divide a.
inline std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b)
{
    if (b.is_zero()) throw algebra_error("division by zero polynomial");
    if (b.is_constant()) return a * Rational(1 / b.constant_value());
    Polynomial r = a;
    std::vector<Polynomial::Term> q;
    const auto& lt = b.terms().front();
    while (!r.is_zero()) {
        const auto& rt = r.terms().front();
        auto m = divide(rt.mono, lt.mono);
        if (!m) return std::nullopt;
        Rational c = rt.coef / lt.coef;
        r -= b.times(*m) * c;
        q.push_back({std::move(*m), std::move(c)});
    }
    return Polynomial::from_terms(std::move(q));
}

/// gcd of numerators over lcm of denominators (positive); 0 for p = 0.
inline Rational rational_content(const Polynomial& p)
{
    Integer num = 0, den = 1;
    for (const auto& t : p.terms()) {
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coef.get_num_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coef.get_den_mpz_t());
    }
    Rational c(num, den);
    c.canonicalize();
    return c;
}

/// Scales p to integer coefficients with gcd 1 and positive leading
/// coefficient. The zero polynomial is returned unchanged.
inline Polynomial normalize(const Polynomial& p)
{
    if (p.is_zero()) return p;
    Rational c = rational_content(p);
    if (sgn(p.leading_coefficient()) < 0) c = -c;
    return p * Rational(1 / c);
}

Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// gcd of the coefficients of p viewed as a univariate polynomial in x.
inline Polynomial content(const Polynomial& p, Var x)
{
    Polynomial g;
    for (const auto& c : p.coefficients(x)) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant()) return Polynomial(1L);
    }
    return g;
}

/// p divided by its content with respect to x.
inline Polynomial primitive_part(const Polynomial& p, Var x)
{
    if (p.is_zero()) return p;
    const Polynomial c = content(p, x);
    auto q = exact_divide(p, c);
    if (!q) throw algebra_error("content does not divide polynomial");
    return normalize(*q);
}

namespace detail {

/// Univariate gcd in x of two polynomials free of other variables.
inline Polynomial univariate_gcd(Polynomial f, Polynomial g, Var x)
{
    if (f.degree(x) < g.degree(x)) std::swap(f, g);
    while (!g.is_zero()) {
        if (!g.contains(x)) return Polynomial(1L);
        Polynomial r = prem(f, g, x);
        f = std::move(g);
        g = r.is_zero() ? r : normalize(r);
    }
    return f;
}

/// True only if gcd(a, b) = 1 is certain. For each common variable v the
/// other variables are specialized at integers where lc_v(a) survives;
/// lc_v(gcd) divides lc_v(a), so a constant specialized gcd proves that the
/// gcd is free of v.
inline bool certainly_coprime(const Polynomial& a, const Polynomial& b)
{
    const auto va = a.variables(), vb = b.variables();
    std::vector<Var> common;
    std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(common));
    if (common.empty()) return true;
    std::vector<Var> all;
    std::set_union(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(all));
    for (Var v : common) {
        bool proved = false;
        for (long attempt = 0; attempt < 3 && !proved; ++attempt) {
            std::map<Var, Rational> at;
            long k = 0;
            for (Var w : all)
                if (w != v) at.emplace(w, Rational(3 + 2 * ((k++ * 7 + attempt * 13 + static_cast<long>(w % 101)) % 23)));
            if (substitute(a.coefficient(v, a.degree(v)), at).is_zero()) continue;
            const Polynomial sa = substitute(a, at), sb = substitute(b, at);
            if (sb.is_zero()) continue;
            if (sb.contains(v) && univariate_gcd(sa, sb, v).contains(v)) return false;
            proved = true;
        }
        if (!proved) return false;
    }
    return true;
}

}  // namespace detail

/// Normalized gcd over Q of two multivariate polynomials (primitive PRS,
/// recursive in the highest variable).
inline Polynomial gcd(const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero()) return normalize(b);
    if (b.is_zero()) return normalize(a);
    if (a.is_constant() || b.is_constant()) return Polynomial(1L);
    if (detail::certainly_coprime(a, b)) return Polynomial(1L);
    const Var x = std::max(*a.leader(), *b.leader());
    const bool ax = a.contains(x), bx = b.contains(x);
    if (!ax) return gcd(a, content(b, x));
    if (!bx) return gcd(content(a, x), b);

    const Polynomial ca = content(a, x), cb = content(b, x);
    const Polynomial cg = gcd(ca, cb);
    Polynomial f = *exact_divide(a, ca), g = *exact_divide(b, cb);
    if (f.degree(x) < g.degree(x)) std::swap(f, g);
    while (true) {
        Polynomial r = prem(f, g, x);
        if (r.is_zero()) break;
        if (!r.contains(x)) return cg;
        f = std::move(g);
        g = primitive_part(r, x);
    }
    return normalize(cg * primitive_part(g, x));
}

/// p divided by its content as a univariate polynomial in x, then scaled to
/// primitive integer coefficients with positive leading coefficient.
inline Polynomial content_free(const Polynomial& p, Var x)
{
    if (!p.contains(x)) return normalize(p);
    return primitive_part(p, x);
}

inline Polynomial lcm(const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    return normalize(*exact_divide(a * b, gcd(a, b)));
}

}  // namespace thomas

template <>
struct std::hash<thomas::Polynomial> {
    std::size_t operator()(const thomas::Polynomial& p) const { return p.hash(); }
};

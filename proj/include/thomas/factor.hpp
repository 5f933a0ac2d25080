// Partial factorization over Q: contents with respect to every variable,
// Yun's square-free decomposition and linear factors of univariate parts
// found from rational roots. Factors that survive are not guaranteed to be
// irreducible.
#pragma once

#include "thomas/polynomial.hpp"

#include <vector>

namespace thomas {

namespace detail {

/// Positive divisors of |n|, or empty if |n| is too large to enumerate.
inline std::vector<Integer> small_divisors(const Integer& n)
{
    Integer m = abs(n);
    if (m == 0 || mpz_sizeinbase(m.get_mpz_t(), 2) > 40) return {};
    std::vector<std::pair<Integer, unsigned>> pf;
    for (Integer d = 2; d * d <= m; ++d) {
        unsigned e = 0;
        while (mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t())) {
            m /= d;
            ++e;
        }
        if (e) pf.emplace_back(d, e);
    }
    if (m > 1) pf.emplace_back(m, 1);
    std::vector<Integer> out{1};
    for (const auto& [p, e] : pf) {
        const std::size_t n0 = out.size();
        Integer pw = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pw *= p;
            for (std::size_t i = 0; i < n0; ++i) out.push_back(out[i] * pw);
        }
    }
    return out;
}

/// Splits off linear factors den*x - num of a univariate integer polynomial.
inline std::vector<Polynomial> split_rational_roots(Polynomial f, Var x)
{
    std::vector<Polynomial> out;
    f = normalize(f);
    while (f.degree(x) > 1) {
        const auto cs = f.coefficients(x);
        if (cs[0].is_zero()) {
            out.push_back(Polynomial::variable(x));
            f = *exact_divide(f, Polynomial::variable(x));
            continue;
        }
        const auto nums = small_divisors(cs[0].constant_value().get_num());
        const auto dens = small_divisors(cs.back().constant_value().get_num());
        bool found = false;
        for (const auto& d : dens) {
            for (const auto& n : nums) {
                for (int s : {1, -1}) {
                    const Polynomial lin = Polynomial(Rational(d)) * Polynomial::variable(x) - Polynomial(Rational(s * n));
                    auto q = exact_divide(f, lin);
                    if (!q) continue;
                    out.push_back(normalize(lin));
                    f = normalize(*q);
                    found = true;
                    break;
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) break;
    }
    if (!f.is_constant()) out.push_back(f);
    return out;
}

inline void collect_factors(const Polynomial& p, std::vector<Polynomial>& out)
{
    if (p.is_constant()) return;
    const Var x = *p.leader();
    collect_factors(content(p, x), out);
    Polynomial a = primitive_part(p, x);
    if (a.rank() == 1) {
        out.push_back(a);
        return;
    }
    // Yun: a = prod g_k^k.
    std::vector<Polynomial> parts;
    const Polynomial b = derive(a, x);
    const Polynomial c = gcd(a, b);
    Polynomial w = *exact_divide(a, c);
    Polynomial y = *exact_divide(b, c);
    Polynomial z = y - derive(w, x);
    while (w.contains(x)) {
        const Polynomial g = gcd(w, z);
        if (g.contains(x)) parts.push_back(g);
        w = *exact_divide(w, g);
        y = *exact_divide(z, g);
        z = y - derive(w, x);
    }
    for (const auto& g : parts) {
        if (g.variables().size() == 1) {
            for (auto& f : split_rational_roots(g, x)) out.push_back(normalize(f));
        } else {
            out.push_back(normalize(g));
        }
    }
}

}  // namespace detail

/// Distinct non-constant factors of p, normalized and sorted.
inline std::vector<Polynomial> factor(const Polynomial& p)
{
    std::vector<Polynomial> out;
    detail::collect_factors(p, out);
    for (auto& f : out) f = normalize(f);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace thomas

// Subresultant polynomial remainder sequences.
//
// Only the regular members (degree equal to their index) are kept. The
// boundary conventions are PRS_{dp} = p, PRS_{dq} = q, absent members in
// between, and res_{dp} = 1, res_0 = PRS_0, res_i = init(PRS_i) otherwise.
//
// The sequence is computed with Lazard's dichotomic formula for the regular
// member closing a defective block and Ducos' reduction for the first member
// of the next block, which avoids the large intermediate pseudo-remainder of
// the classical recurrence.
#pragma once

#include "thomas/polynomial.hpp"

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace thomas {

struct SubresultantSequence {
    Var x = 0;
    std::uint32_t dp = 0;
    std::uint32_t dq = 0;
    /// Regular members keyed by degree in x.
    std::map<std::uint32_t, Polynomial> regular;

    friend bool operator==(const SubresultantSequence&, const SubresultantSequence&) = default;
};

namespace detail {

inline Polynomial lead_in(const Polynomial& p, Var x) { return p.coefficient(x, p.degree(x)); }

inline Polynomial must_divide(const Polynomial& a, const Polynomial& b)
{
    auto q = exact_divide(a, b);
    if (!q) throw algebra_error("subresultant: inexact division");
    return std::move(*q);
}

/// Classical pseudo-remainder: lc(q)^(deg p - deg q + 1) * p mod q.
inline Polynomial full_prem(const Polynomial& p, const Polynomial& q, Var x)
{
    const std::uint32_t dp = p.degree(x), dq = q.degree(x);
    auto pd = prem_pquo(p, q, x);
    const unsigned missing = dp + 1 - dq - pd.steps;
    if (missing == 0) return pd.remainder;
    return pd.remainder * lead_in(q, x).pow(missing);
}

/// x^n / y^(n-1), with every intermediate an exact quotient.
inline Polynomial lazard_power(const Polynomial& x, const Polynomial& y, unsigned n)
{
    if (n == 0) throw algebra_error("lazard_power with n = 0");
    unsigned a = 1;
    while (2 * a <= n) a *= 2;
    Polynomial c = x;
    n -= a;
    while (a > 1) {
        a /= 2;
        c = must_divide(c * c, y);
        if (n >= a) {
            c = must_divide(c * x, y);
            n -= a;
        }
    }
    return c;
}

/// S_e from S_{d-1} (degree e) and s_d: lc(S_{d-1})^(delta-1) S_{d-1} / s_d^(delta-1).
inline Polynomial lazard_step(const Polynomial& b, const Polynomial& s, unsigned delta, Var x)
{
    if (delta <= 1) return b;
    const Polynomial c = lazard_power(lead_in(b, x), s, delta - 1);
    return must_divide(c * b, s);
}

/// S_{e-1} from A = S_d (regular, lc = s), B = S_{d-1} (degree e) and
/// C = S_e (regular).
inline Polynomial ducos_step(const Polynomial& a, const Polynomial& b, const Polynomial& c, const Polynomial& s,
                             Var x)
{
    const std::uint32_t d = a.degree(x), e = b.degree(x);
    const Polynomial cb = lead_in(b, x);
    const Polynomial se = lead_in(c, x);
    const auto ac = a.coefficients(x);

    // H_j = se * x^j for j < e; H_e = se * x^e - C; H_{j+1} = x H_j - coeff_e(x H_j) B / lc(B).
    Polynomial d_sum;
    for (std::uint32_t j = 0; j < e && j < d; ++j)
        if (!ac[j].is_zero()) d_sum += ac[j] * se * Polynomial::variable(x, j);
    Polynomial h = se * Polynomial::variable(x, e) - c;
    for (std::uint32_t j = e; j < d; ++j) {
        if (j > e) {
            const Polynomial xh = h * Polynomial::variable(x);
            h = xh - must_divide(xh.coefficient(x, e) * b, cb);
        }
        if (!ac[j].is_zero()) d_sum += ac[j] * h;
    }
    const Polynomial dd = must_divide(d_sum, lead_in(a, x));
    const Polynomial xh = h * Polynomial::variable(x);
    Polynomial r = must_divide(cb * (xh + dd) - xh.coefficient(x, e) * b, s);
    return ((d - e) % 2 == 0) ? -r : r;
}

}  // namespace detail

/// Subresultant sequence of p and q with respect to x. Requires
/// deg_x(p) > deg_x(q). A q free of x (including q = 0) is accepted and
/// treated as a polynomial of degree 0 in x.
inline SubresultantSequence prs(const Polynomial& p, const Polynomial& q, Var x)
{
    SubresultantSequence seq;
    seq.x = x;
    seq.dp = p.degree(x);
    seq.dq = q.degree(x);
    if (seq.dp == 0 || seq.dp <= seq.dq) throw algebra_error("prs: requires deg(p) > deg(q) >= 0 in x");
    seq.regular.emplace(seq.dp, p);
    if (q.is_zero()) return seq;
    seq.regular.emplace(seq.dq, q);
    if (seq.dq == 0) return seq;

    const std::uint32_t dp = seq.dp, dq = seq.dq;
    const Polynomial lq = detail::lead_in(q, x);
    Polynomial s = lq.pow(dp - dq);             // principal coefficient of S_dq
    Polynomial a = q * lq.pow(dp - dq - 1);    // standard S_dq
    Polynomial b = detail::full_prem(p, q, x);  // +-S_{dq-1}
    if ((dp - dq) % 2 == 0) b = -b;
    std::uint32_t d = dq;
    while (!b.is_zero()) {
        const std::uint32_t e = b.degree(x);
        Polynomial c = detail::lazard_step(b, s, d - e, x);
        seq.regular.emplace(e, c);
        if (e == 0) break;
        Polynomial next = detail::ducos_step(a, b, c, s, x);
        s = detail::lead_in(c, x);
        a = std::move(c);
        b = std::move(next);
        d = e;
    }
    return seq;
}

/// res_i of a subresultant sequence.
inline Polynomial res(const SubresultantSequence& seq, std::uint32_t i)
{
    if (i > seq.dp) throw algebra_error("res: index exceeds deg(p)");
    if (i == seq.dp) return Polynomial(1L);
    auto it = seq.regular.find(i);
    if (it == seq.regular.end()) return Polynomial{};
    if (i == 0) return it->second;
    return detail::lead_in(it->second, seq.x);
}

/// PRS_i: the regular member of degree i, or zero.
inline Polynomial prs_member(const SubresultantSequence& seq, std::uint32_t i)
{
    auto it = seq.regular.find(i);
    return it == seq.regular.end() ? Polynomial{} : it->second;
}

/// Thread-safe memo of subresultant sequences keyed by (p, q, x).
class PrsCache {
public:
    std::shared_ptr<const SubresultantSequence> get(const Polynomial& p, const Polynomial& q, Var x)
    {
        Key key{p, q, x};
        {
            std::shared_lock lock(mutex_);
            auto it = map_.find(key);
            if (it != map_.end()) {
                ++hits_;
                return it->second;
            }
        }
        auto seq = std::make_shared<const SubresultantSequence>(prs(p, q, x));
        std::unique_lock lock(mutex_);
        auto [it, inserted] = map_.emplace(std::move(key), seq);
        return it->second;
    }

    std::size_t size() const
    {
        std::shared_lock lock(mutex_);
        return map_.size();
    }
    std::size_t hits() const { return hits_; }

private:
    struct Key {
        Polynomial p, q;
        Var x;
        friend bool operator==(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const
        {
            return detail::hash_combine(detail::hash_combine(k.p.hash(), k.q.hash()), k.x);
        }
    };

    mutable std::shared_mutex mutex_;
    std::unordered_map<Key, std::shared_ptr<const SubresultantSequence>, KeyHash> map_;
    std::atomic<std::size_t> hits_{0};
};

/// prs through an optional cache.
inline std::shared_ptr<const SubresultantSequence> prs_cached(PrsCache* cache, const Polynomial& p,
                                                             const Polynomial& q, Var x)
{
    if (cache) return cache->get(p, q, x);
    return std::make_shared<const SubresultantSequence>(prs(p, q, x));
}

}  // namespace thomas

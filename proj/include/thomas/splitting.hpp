// Splitting subalgorithms. Each takes a system by value and returns the
// branch where the generic condition holds together with its complement.
//
// The reducer argument is any callable (const System&, const Polynomial&)
// -> Polynomial; the algebraic and differential engines pass their own
// Reduce.
#pragma once

#include "thomas/subres.hpp"
#include "thomas/system.hpp"

#include <optional>
#include <utility>

namespace thomas {

struct SplitOutcome {
    System kept;   ///< generic branch
    System other;  ///< complementary branch
    Polynomial witness;
    std::optional<Polynomial> extra;
    std::optional<std::uint32_t> fiber;
};

/// (S with p != 0 queued, S with p = 0 queued).
inline std::pair<System, System> split(const System& S, const Polynomial& p)
{
    std::pair<System, System> out{S, S};
    out.first.enqueue(p, Kind::inequation);
    out.second.enqueue(p, Kind::equation);
    return out;
}

/// Kept branch: init(q) != 0. Other branch: init(q) = 0 and the truncated q.
inline std::pair<System, System> init_split(const System& S, const Relation& q)
{
    const Polynomial init = q.poly.initial();
    auto out = split(S, init);
    out.second.enqueue(q.poly.tail(), q.kind);
    return out;
}

namespace detail {

inline std::uint32_t degree_in(const Polynomial& p, Var x) { return p.contains(x) ? p.degree(x) : 0; }

}  // namespace detail

/// ResSplit: the quasi fiber cardinality i of p and q with respect to S and
/// the split on res_i. q may be free of x, in which case it acts as a
/// polynomial of degree 0.
template <class Reducer>
SplitOutcome res_split(const System& S, const Polynomial& p, const Polynomial& q, Var x, Reducer&& reduce_fn,
                       PrsCache* cache = nullptr)
{
    for (const auto& r : S.Q)
        if (r.is_equation() && r.poly.leader() < Leader(x))
            throw std::logic_error("res_split: queued equation below the main variable");
    const auto seq = prs_cached(cache, p, q, x);
    std::uint32_t i = 0;
    for (;; ++i) {
        if (i > seq->dp) throw std::logic_error("res_split: res_dp must not reduce to zero");
        if (!reduce_fn(S, res(*seq, i)).is_zero()) break;
    }
    const Polynomial w = res(*seq, i);
    auto [kept, other] = split(S, w);
    SplitOutcome out{std::move(kept), std::move(other), w, std::nullopt, i};
    return out;
}

/// ResSplitGCD: extra = PRS_i(T[x], q) as the conditional gcd; the complement
/// re-queues q.
template <class Reducer>
SplitOutcome res_split_gcd(const System& S, const Polynomial& q, Reducer&& reduce_fn, PrsCache* cache = nullptr)
{
    const Var x = *q.leader();
    const Relation* t = S.equation_at(x);
    if (!t) throw std::logic_error("res_split_gcd: T[x] is not an equation");
    SplitOutcome out = res_split(S, t->poly, q, x, reduce_fn, cache);
    out.other.enqueue(q, Kind::equation);
    out.extra = prs_member(*prs_cached(cache, t->poly, q, x), *out.fiber);
    return out;
}

/// ResSplitDivide: extra = conditional quotient of p by q' where q' = q if
/// rank(p) > rank(q) and prem(q, p, x) otherwise. The complement re-queues
/// the original q with the given kind.
template <class Reducer>
SplitOutcome res_split_divide(const System& S, const Polynomial& p, const Polynomial& q, Reducer&& reduce_fn,
                              PrsCache* cache = nullptr, Kind q_kind = Kind::inequation)
{
    const Var x = *p.leader();
    const Polynomial qq = detail::degree_in(q, x) >= p.rank() ? prem(q, p, x) : q;
    SplitOutcome out = res_split(S, p, qq, x, reduce_fn, cache);
    const std::uint32_t i = *out.fiber;
    if (i > 0) {
        const Polynomial g = prs_member(*prs_cached(cache, p, qq, x), i);
        out.extra = pquo(p, g, x);
    } else {
        out.extra = p;
    }
    out.other.enqueue(q, q_kind);
    return out;
}

/// ResSplitSquareFree: extra = conditional square-free part of p; the
/// complement re-queues p with the given kind. Linear polynomials are
/// returned unchanged without a split (kept = S, other left empty).
template <class Reducer>
SplitOutcome res_split_squarefree(const System& S, const Polynomial& p, Reducer&& reduce_fn,
                                  PrsCache* cache = nullptr, Kind p_kind = Kind::equation)
{
    const Var x = *p.leader();
    if (p.rank() == 1) return SplitOutcome{S, System{}, Polynomial(1L), p, 0};
    SplitOutcome out = res_split(S, p, derive(p, x), x, reduce_fn, cache);
    const std::uint32_t i = *out.fiber;
    if (i > 0) {
        const Polynomial g = prs_member(*prs_cached(cache, p, derive(p, x), x), i);
        out.extra = pquo(p, g, x);
    } else {
        out.extra = p;
    }
    out.other.enqueue(p, p_kind);
    return out;
}

}  // namespace thomas

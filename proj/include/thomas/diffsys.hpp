// Differential systems: total derivations acting on jet variables, Janet
// reduction, differential insertion and the differential decomposition.
#pragma once

#include "thomas/decompose.hpp"
#include "thomas/janet.hpp"

#include <memory>

namespace thomas {

/// Total derivative of p by derivation k (0-based), via the product rule.
inline Polynomial diff_derive(const Polynomial& p, std::size_t k, const DiffRanking& ranking)
{
    std::vector<Polynomial::Term> terms;
    std::map<Var, Var> shifted;
    for (const auto& t : p.terms()) {
        for (const auto& [v, e] : t.mono) {
            auto it = shifted.find(v);
            if (it == shifted.end()) it = shifted.emplace(v, ranking.shift(v, k)).first;
            terms.push_back({t.mono.with(v, e - 1) * Monomial::power(it->second, 1), t.coef * Rational(e)});
        }
    }
    return Polynomial::from_terms(std::move(terms));
}

/// Derivative of p by the multi-index k.
inline Polynomial diff_derive(Polynomial p, const MultiIndex& k, const DiffRanking& ranking)
{
    for (std::size_t l = 0; l < k.size(); ++l)
        for (std::uint32_t t = 0; t < k[l]; ++t) p = diff_derive(p, l, ranking);
    return p;
}

/// Recomputes the Janet assignment of the equations in T.
inline void reassign_admissible(System& S, const DiffRanking& ranking)
{
    std::vector<Var> keys;
    std::vector<JetVariable> W;
    for (const auto& [x, r] : S.T)
        if (r.is_equation()) {
            keys.push_back(x);
            W.push_back(ranking.decode(x));
        }
    const auto masks = assign_admissible(W);
    S.admissible.clear();
    for (std::size_t a = 0; a < keys.size(); ++a) S.admissible.emplace(keys[a], masks[a]);
}

/// The equation of T and the multi-index whose admissible derivative has the
/// leader of q, if q is Janet reducible modulo T.
inline std::optional<std::pair<Var, MultiIndex>> janet_reductor(const System& S, const Polynomial& q,
                                                               const DiffRanking& ranking)
{
    if (q.is_constant()) return std::nullopt;
    const JetVariable v = ranking.decode(*q.leader());
    for (const auto& [w, mask] : S.admissible) {
        const JetVariable jw = ranking.decode(w);
        if (!in_cone(v, jw, mask)) continue;
        MultiIndex k(v.index.size());
        bool proper = false;
        for (std::size_t l = 0; l < k.size(); ++l) {
            k[l] = v.index[l] - jw.index[l];
            proper = proper || k[l] > 0;
        }
        if (proper || q.rank() >= S.T.at(w).poly.rank()) return std::pair{w, k};
    }
    return std::nullopt;
}

/// Reductor for the jet y occurring in q with degree deg.
inline std::optional<std::pair<Var, MultiIndex>> janet_reductor(const System& S, Var y, std::uint32_t deg,
                                                               const DiffRanking& ranking)
{
    return janet_reductor(S, Polynomial::variable(y, deg), ranking);
}

/// Differential Reduce: Janet reduction of the leader by admissible
/// prolongations of the equations of T, then (when `full`) of every other
/// jet from the highest down, then the initial is dropped whenever it
/// reduces to 0.
inline Polynomial diff_reduce(const System& S, const Polynomial& p, const DiffRanking& ranking, bool full = true)
{
    Polynomial q = p;
    while (true) {
        while (auto r = janet_reductor(S, q, ranking)) {
            const Polynomial d = diff_derive(S.T.at(r->first).poly, r->second, ranking);
            q = normalize(prem(q, d, *q.leader()));
        }
        if (q.is_constant()) return q;
        if (full) {
            bool changed = false;
            auto vars = q.variables();
            std::sort(vars.rbegin(), vars.rend());
            for (Var y : vars) {
                if (y == *q.leader()) continue;
                if (auto r = janet_reductor(S, y, q.degree(y), ranking)) {
                    const Polynomial d = diff_derive(S.T.at(r->first).poly, r->second, ranking);
                    q = normalize(prem(q, d, y));
                    changed = true;
                    break;
                }
            }
            if (changed) continue;
        }
        if (!diff_reduce(S, q.initial(), ranking, full).is_zero()) return q;
        q = q.tail();
    }
}

/// Differential InsertEquation. Any previous T[x] is replaced; T members with
/// a leader in the full cone of x move back to Q, as do inequations that
/// became Janet reducible; then every non-admissible prolongation not queued
/// before is queued as an equation.
inline void diff_insert_equation(System& S, const Polynomial& p, const DiffRanking& ranking)
{
    const Var x = *p.leader();
    const JetVariable jx = ranking.decode(x);
    S.T.erase(x);
    for (auto it = S.T.begin(); it != S.T.end();) {
        if (in_full_cone(ranking.decode(it->first), jx)) {
            S.enqueue(it->second);
            it = S.T.erase(it);
        } else {
            ++it;
        }
    }
    S.T.emplace(x, eq(p));
    reassign_admissible(S, ranking);
    for (auto it = S.T.begin(); it != S.T.end();) {
        if (it->second.is_inequation() && janet_reductor(S, it->second.poly, ranking)) {
            S.enqueue(it->second);
            it = S.T.erase(it);
        } else {
            ++it;
        }
    }
    std::vector<Polynomial> fresh;
    for (const auto& [w, mask] : S.admissible)
        for (std::size_t l = 0; l < ranking.derivation_count(); ++l) {
            if (mask & (1u << l)) continue;
            Polynomial d = normalize(diff_derive(S.T.at(w).poly, l, ranking));
            if (S.prolonged.insert(d).second) fresh.push_back(std::move(d));
        }
    std::sort(fresh.begin(), fresh.end(), [](const Polynomial& a, const Polynomial& b) { return a.leader() < b.leader(); });
    for (auto& d : fresh) S.enqueue(std::move(d), Kind::equation);
}

struct DifferentialPolicy {
    std::shared_ptr<const DiffRanking> ranking;
    bool full = true;

    Polynomial reduce(const System& S, const Polynomial& p) const { return diff_reduce(S, p, *ranking, full); }
    void insert_equation(System& S, const Polynomial& p) const { diff_insert_equation(S, p, *ranking); }
};

/// Differential Thomas decomposition of an input system (T must be empty).
inline Decomposition diff_decompose(const System& input, const DiffRanking& ranking,
                                    const DecomposeOptions& options = {})
{
    if (!input.T.empty()) throw std::invalid_argument("diff_decompose: input must have an empty triangular part");
    DifferentialPolicy policy{std::make_shared<const DiffRanking>(ranking)};
    DecomposeOptions opt = options;
    Engine<DifferentialPolicy> engine(policy, opt);
    return engine.run(input);
}

inline Decomposition diff_decompose(const std::vector<Polynomial>& equations,
                                    const std::vector<Polynomial>& inequations, const DiffRanking& ranking,
                                    const DecomposeOptions& options = {})
{
    return diff_decompose(make_system(equations, inequations), ranking, options);
}

/// A finished system rebuilt as a System with its Janet assignment, for
/// reduction against it.
inline System as_system(const SimpleSystem& s, const DiffRanking& ranking)
{
    System out;
    for (const auto& r : s.relations) out.T.emplace(*r.poly.leader(), r);
    reassign_admissible(out, ranking);
    return out;
}

/// Every non-admissible prolongation of an equation reduces to 0.
inline bool is_involutive(const System& S, const DiffRanking& ranking)
{
    for (const auto& [w, mask] : S.admissible)
        for (std::size_t l = 0; l < ranking.derivation_count(); ++l) {
            if (mask & (1u << l)) continue;
            if (!diff_reduce(S, diff_derive(S.T.at(w).poly, l, ranking), ranking).is_zero()) return false;
        }
    return true;
}

/// The equation leaders form a minimal Janet basis: they equal the Janet
/// completion of their minimal generators, and no leader lies in the Janet
/// cone of another.
inline bool is_minimal(const System& S, const DiffRanking& ranking)
{
    std::vector<JetVariable> W;
    std::vector<DerivationMask> masks;
    for (const auto& [w, mask] : S.admissible) {
        W.push_back(ranking.decode(w));
        masks.push_back(mask);
    }
    for (std::size_t a = 0; a < W.size(); ++a)
        for (std::size_t b = 0; b < W.size(); ++b)
            if (a != b && in_cone(W[a], W[b], masks[b])) return false;
    auto key = [&](const JetVariable& v) { return ranking.encode(v); };
    auto completed = complete(minimal_generators(W), key);
    std::sort(W.begin(), W.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
    return completed == W;
}

/// No inequation of T is Janet reducible modulo the equations of T.
inline bool inequations_irreducible(const System& S, const DiffRanking& ranking)
{
    for (const auto& [x, r] : S.T)
        if (r.is_inequation() && janet_reductor(S, r.poly, ranking)) return false;
    return true;
}

}  // namespace thomas

// Systems of equations and inequations: a triangular candidate T and a work
// queue Q, with reduction modulo T and the selection strategy.
#pragma once

#include "thomas/polynomial.hpp"

#include <map>
#include <memory>
#include <set>
#include <tuple>
#include <vector>

namespace thomas {

enum class Kind : std::uint8_t { equation = 0, inequation = 1 };

struct Relation {
    Polynomial poly;
    Kind kind = Kind::equation;

    bool is_equation() const { return kind == Kind::equation; }
    bool is_inequation() const { return kind == Kind::inequation; }

    friend bool operator==(const Relation&, const Relation&) = default;
};

inline Relation eq(Polynomial p) { return {std::move(p), Kind::equation}; }
inline Relation ineq(Polynomial p) { return {std::move(p), Kind::inequation}; }

/// Queue order. The minimum is the relation Select returns: smallest leader,
/// equations before inequations, then smaller rank, smaller total degree and
/// finally the canonical polynomial order.
struct RelationLess {
    bool operator()(const Relation& a, const Relation& b) const
    {
        const Leader la = a.poly.leader(), lb = b.poly.leader();
        if (la != lb) return la < lb;
        if (a.kind != b.kind) return a.kind < b.kind;
        const auto ra = a.poly.rank(), rb = b.poly.rank();
        if (ra != rb) return ra < rb;
        const auto ta = a.poly.total_degree(), tb = b.poly.total_degree();
        if (ta != tb) return ta < tb;
        return a.poly < b.poly;
    }
};

using Queue = std::set<Relation, RelationLess>;

struct System {
    /// Triangular candidate: at most one relation per leader.
    std::map<Var, Relation> T;
    Queue Q;

    /// Differential bookkeeping, unused by algebraic systems: the admissible
    /// derivations (bit i = derivation i) of each equation in T, keyed by
    /// leader, and the non-admissible prolongations already queued.
    std::map<Var, std::uint32_t> admissible;
    std::set<Polynomial> prolonged;

    /// Normalizes p and queues it; duplicates collapse.
    void enqueue(const Relation& r) { Q.insert({normalize(r.poly), r.kind}); }
    void enqueue(Polynomial p, Kind k) { enqueue(Relation{std::move(p), k}); }

    const Relation* at(Var x) const
    {
        auto it = T.find(x);
        return it == T.end() ? nullptr : &it->second;
    }
    const Relation* equation_at(Var x) const
    {
        const Relation* r = at(x);
        return r && r->is_equation() ? r : nullptr;
    }
    const Relation* inequation_at(Var x) const
    {
        const Relation* r = at(x);
        return r && r->is_inequation() ? r : nullptr;
    }

    /// The finished relations of T ascending by leader.
    std::vector<Relation> relations() const
    {
        std::vector<Relation> out;
        out.reserve(T.size());
        for (const auto& [x, r] : T) out.push_back(r);
        return out;
    }
};

/// A finished system; relations ascending by leader.
struct SimpleSystem {
    std::vector<Relation> relations;

    std::vector<Polynomial> equations() const
    {
        std::vector<Polynomial> out;
        for (const auto& r : relations)
            if (r.is_equation()) out.push_back(r.poly);
        return out;
    }
    std::vector<Polynomial> inequations() const
    {
        std::vector<Polynomial> out;
        for (const auto& r : relations)
            if (r.is_inequation()) out.push_back(r.poly);
        return out;
    }

    friend bool operator==(const SimpleSystem&, const SimpleSystem&) = default;
};

/// Canonical order of finished systems: relation sequences compared
/// lexicographically on (leader, rank, kind, polynomial).
struct SimpleSystemLess {
    bool operator()(const SimpleSystem& a, const SimpleSystem& b) const
    {
        const std::size_t n = std::min(a.relations.size(), b.relations.size());
        for (std::size_t i = 0; i < n; ++i) {
            const Relation &ra = a.relations[i], &rb = b.relations[i];
            const auto ka = std::make_tuple(ra.poly.leader(), ra.poly.rank(), ra.kind);
            const auto kb = std::make_tuple(rb.poly.leader(), rb.poly.rank(), rb.kind);
            if (ka != kb) return ka < kb;
            if (ra.poly != rb.poly) return ra.poly < rb.poly;
        }
        return a.relations.size() < b.relations.size();
    }
};

/// Builds an input system with empty T.
inline System make_system(const std::vector<Polynomial>& equations, const std::vector<Polynomial>& inequations)
{
    System s;
    for (const auto& p : equations) s.enqueue(p, Kind::equation);
    for (const auto& p : inequations) s.enqueue(p, Kind::inequation);
    return s;
}

/// Select: the minimum of the queue order. Picking the globally smallest
/// leader, with equations first among equal leaders, satisfies both axioms
/// of a selection strategy.
inline const Relation& select(const Queue& Q)
{
    if (Q.empty()) throw std::logic_error("select on an empty queue");
    return *Q.begin();
}

struct ReduceOptions {
    /// Also pseudo-reduce by equations of T with leaders below ld(p).
    bool coefficient_reduction = false;
};

/// Algebraic Reduce: pseudo-reduces by the T-equation of the current leader
/// while the rank allows, then drops the initial whenever it reduces to 0.
inline Polynomial reduce(const System& S, const Polynomial& p, const ReduceOptions& opt = {})
{
    Polynomial q = p;
    while (true) {
        while (!q.is_constant()) {
            const Var x = *q.leader();
            const Relation* t = S.equation_at(x);
            if (!t || q.rank() < t->poly.rank()) break;
            q = normalize(prem(q, t->poly, x));
        }
        if (q.is_constant()) return q;
        const Var x = *q.leader();
        if (opt.coefficient_reduction) {
            for (auto it = S.T.lower_bound(x); it != S.T.begin();) {
                --it;
                const auto& [y, r] = *it;
                if (r.is_equation() && q.degree(y) >= r.poly.rank()) q = normalize(prem(q, r.poly, y));
            }
            if (q.is_constant() || *q.leader() != x) continue;
        }
        if (!reduce(S, q.initial(), opt).is_zero()) return q;
        q = q.tail();
    }
}

/// Algebraic InsertEquation: T[x] := r, replacing any previous T[x].
inline void insert_equation_alg(System& S, const Polynomial& r)
{
    const Var x = *r.leader();
    S.T.insert_or_assign(x, eq(r));
}

}  // namespace thomas

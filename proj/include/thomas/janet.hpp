// Jet variables, differential rankings and Janet division.
//
// A jet variable u^(j)_i is stored as an ordinary polynomial variable whose
// 64-bit key is monotone in the differential ranking:
//
//   bits 56..63  block (elimination rankings; 0 for orderly)
//   bits 40..55  total order |i|
//   bits  0..39  priority * C(|i|+n-1, n-1) + lexrank(i)
//
// where lexrank orders the multi-indices of equal order lexicographically
// with the first derivation most significant.
#pragma once

#include "thomas/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace thomas {

using MultiIndex = std::vector<std::uint32_t>;

struct JetVariable {
    std::uint32_t indeterminate = 0;
    MultiIndex index;

    std::uint32_t order() const { return std::accumulate(index.begin(), index.end(), 0u); }
    friend bool operator==(const JetVariable&, const JetVariable&) = default;
    friend auto operator<=>(const JetVariable&, const JetVariable&) = default;
};

namespace detail {

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Number of multi-indices with n entries summing to s.
inline std::uint64_t compositions(std::uint64_t s, std::uint64_t n)
{
    if (n == 0) return s == 0 ? 1 : 0;
    return binomial(s + n - 1, n - 1);
}

inline std::uint64_t lex_rank(const MultiIndex& i)
{
    const std::size_t n = i.size();
    std::uint64_t remaining = std::accumulate(i.begin(), i.end(), std::uint64_t{0});
    std::uint64_t rank = 0;
    for (std::size_t l = 0; l + 1 < n; ++l) {
        for (std::uint64_t v = 0; v < i[l]; ++v) rank += compositions(remaining - v, n - l - 1);
        remaining -= i[l];
    }
    return rank;
}

inline MultiIndex lex_unrank(std::uint64_t rank, std::uint64_t order, std::size_t n)
{
    MultiIndex out(n, 0);
    std::uint64_t remaining = order;
    for (std::size_t l = 0; l + 1 < n; ++l) {
        std::uint64_t v = 0;
        while (true) {
            const std::uint64_t c = compositions(remaining - v, n - l - 1);
            if (rank < c) break;
            rank -= c;
            ++v;
        }
        out[l] = static_cast<std::uint32_t>(v);
        remaining -= v;
    }
    if (n > 0) out[n - 1] = static_cast<std::uint32_t>(remaining);
    return out;
}

}  // namespace detail

/// A ranking on jet variables. Indeterminates are listed in descending
/// priority; an elimination ranking partitions them into blocks, also in
/// descending order (every jet of an earlier block exceeds every jet of a
/// later one).
class DiffRanking {
public:
    enum class Kind { orderly, elimination };

    DiffRanking() = default;
    DiffRanking(std::vector<std::string> derivations, std::vector<std::string> indeterminates,
                Kind kind = Kind::orderly, std::vector<std::vector<std::string>> blocks = {})
        : derivations_(std::move(derivations)), names_(std::move(indeterminates)), kind_(kind)
    {
        const std::size_t m = names_.size();
        if (derivations_.empty() || derivations_.size() > 32) throw std::invalid_argument("ranking: 1..32 derivations");
        block_.assign(m, 0);
        priority_.assign(m, 0);
        if (kind_ == Kind::orderly) {
            blocks = {names_};
        } else if (blocks.empty()) {
            for (const auto& n : names_) blocks.push_back({n});
        }
        std::vector<bool> seen(m, false);
        const std::size_t nb = blocks.size();
        for (std::size_t b = 0; b < nb; ++b) {
            const std::size_t size = blocks[b].size();
            for (std::size_t k = 0; k < size; ++k) {
                const std::uint32_t j = lookup(blocks[b][k]);
                if (seen[j]) throw std::invalid_argument("ranking: indeterminate listed twice: " + blocks[b][k]);
                seen[j] = true;
                block_[j] = static_cast<std::uint32_t>(nb - 1 - b);
                priority_[j] = static_cast<std::uint32_t>(size - 1 - k);
            }
            block_size_.push_back(static_cast<std::uint32_t>(size));
        }
        std::reverse(block_size_.begin(), block_size_.end());
        for (std::size_t j = 0; j < m; ++j)
            if (!seen[j]) throw std::invalid_argument("ranking: indeterminate missing from blocks: " + names_[j]);
    }

    std::size_t derivation_count() const { return derivations_.size(); }
    std::size_t indeterminate_count() const { return names_.size(); }
    const std::vector<std::string>& derivations() const { return derivations_; }
    const std::vector<std::string>& indeterminates() const { return names_; }
    Kind kind() const { return kind_; }

    std::uint32_t lookup(const std::string& name) const
    {
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) throw std::invalid_argument("unknown indeterminate: " + name);
        return static_cast<std::uint32_t>(it - names_.begin());
    }

    Var encode(const JetVariable& v) const
    {
        if (v.index.size() != derivation_count()) throw std::invalid_argument("jet arity mismatch");
        const std::uint64_t order = v.order();
        if (order >= (1u << 16)) throw std::invalid_argument("jet order too large");
        const std::uint64_t count = detail::compositions(order, derivation_count());
        const std::uint64_t rest = priority_[v.indeterminate] * count + detail::lex_rank(v.index);
        if (rest >= (std::uint64_t{1} << 40)) throw std::invalid_argument("jet order too large for encoding");
        return (std::uint64_t{block_[v.indeterminate]} << 56) | (order << 40) | rest;
    }

    JetVariable decode(Var key) const
    {
        const std::uint32_t block = static_cast<std::uint32_t>(key >> 56);
        const std::uint64_t order = (key >> 40) & 0xffff;
        const std::uint64_t rest = key & ((std::uint64_t{1} << 40) - 1);
        const std::uint64_t count = detail::compositions(order, derivation_count());
        const std::uint32_t prio = static_cast<std::uint32_t>(rest / count);
        JetVariable out;
        out.index = detail::lex_unrank(rest % count, order, derivation_count());
        for (std::uint32_t j = 0; j < names_.size(); ++j)
            if (block_[j] == block && priority_[j] == prio) {
                out.indeterminate = j;
                return out;
            }
        throw std::invalid_argument("invalid jet key");
    }

    Var variable(std::uint32_t indeterminate, MultiIndex index) const { return encode({indeterminate, std::move(index)}); }

    /// Key of the derivative of a jet variable by derivation k (0-based).
    Var shift(Var key, std::size_t k, std::uint32_t times = 1) const
    {
        JetVariable v = decode(key);
        v.index.at(k) += times;
        return encode(v);
    }

    std::string name(Var key) const
    {
        const JetVariable v = decode(key);
        std::string s = names_[v.indeterminate] + "[";
        for (std::size_t i = 0; i < v.index.size(); ++i) s += (i ? "," : "") + std::to_string(v.index[i]);
        return s + "]";
    }

private:
    std::vector<std::string> derivations_;
    std::vector<std::string> names_;
    Kind kind_ = Kind::orderly;
    std::vector<std::uint32_t> block_, priority_, block_size_;
};

/// Bit mask of admissible derivations (bit l = derivation l).
using DerivationMask = std::uint32_t;

inline DerivationMask all_derivations(std::size_t n) { return n >= 32 ? ~0u : ((1u << n) - 1); }

/// True if v lies in the cone of w generated by the derivations in mask
/// (full cone when mask has every derivation).
inline bool in_cone(const JetVariable& v, const JetVariable& w, DerivationMask mask)
{
    if (v.indeterminate != w.indeterminate) return false;
    for (std::size_t l = 0; l < v.index.size(); ++l) {
        if (v.index[l] < w.index[l]) return false;
        if (v.index[l] > w.index[l] && !(mask & (1u << l))) return false;
    }
    return true;
}

inline bool in_full_cone(const JetVariable& v, const JetVariable& w) { return in_cone(v, w, ~0u); }

/// Janet division: derivation l is admissible for w iff w's l-th index is
/// maximal among the members of W (same indeterminate) that agree with w in
/// the indices before l. Returns one mask per element of W, in order.
inline std::vector<DerivationMask> assign_admissible(const std::vector<JetVariable>& W)
{
    std::vector<DerivationMask> out(W.size(), 0);
    for (std::size_t a = 0; a < W.size(); ++a) {
        const JetVariable& w = W[a];
        const std::size_t n = w.index.size();
        for (std::size_t l = 0; l < n; ++l) {
            bool maximal = true;
            for (const JetVariable& o : W) {
                if (o.indeterminate != w.indeterminate) continue;
                if (!std::equal(o.index.begin(), o.index.begin() + l, w.index.begin())) continue;
                if (o.index[l] > w.index[l]) {
                    maximal = false;
                    break;
                }
            }
            if (maximal) out[a] |= 1u << l;
        }
    }
    return out;
}

/// Janet completion: adjoins non-admissible prolongations not covered by
/// the current Janet cones, smallest first (ordered by the key function),
/// until the cones cover the full cone closure of W.
template <class Key>
std::vector<JetVariable> complete(std::vector<JetVariable> W, Key&& key)
{
    std::sort(W.begin(), W.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
    W.erase(std::unique(W.begin(), W.end()), W.end());
    while (true) {
        const auto masks = assign_admissible(W);
        std::optional<JetVariable> best;
        for (std::size_t a = 0; a < W.size(); ++a) {
            for (std::size_t l = 0; l < W[a].index.size(); ++l) {
                if (masks[a] & (1u << l)) continue;
                JetVariable p = W[a];
                ++p.index[l];
                bool covered = false;
                for (std::size_t b = 0; b < W.size() && !covered; ++b) covered = in_cone(p, W[b], masks[b]);
                if (!covered && (!best || key(p) < key(*best))) best = p;
            }
        }
        if (!best) return W;
        W.insert(std::upper_bound(W.begin(), W.end(), *best, [&](const auto& a, const auto& b) { return key(a) < key(b); }),
                 *best);
    }
}

/// Completion ordered by (indeterminate, order, lexicographic index).
inline std::vector<JetVariable> complete(std::vector<JetVariable> W)
{
    return complete(std::move(W), [](const JetVariable& v) {
        return std::make_tuple(v.indeterminate, v.order(), v.index);
    });
}

struct JanetDivisor {
    std::size_t element;  ///< position in the divisor list
    MultiIndex derivative;
};

/// Finds p in T (given by leaders, admissible masks and ranks) whose
/// admissible derivative has leader v and rank at most `rank`. A proper
/// derivative always has rank 1.
inline std::optional<JanetDivisor> janet_divisor(const JetVariable& v, const std::vector<JetVariable>& leaders,
                                                 const std::vector<DerivationMask>& masks,
                                                 const std::vector<std::uint32_t>& ranks, std::uint32_t rank)
{
    for (std::size_t a = 0; a < leaders.size(); ++a) {
        if (!in_cone(v, leaders[a], masks[a])) continue;
        MultiIndex k(v.index.size());
        bool proper = false;
        for (std::size_t l = 0; l < k.size(); ++l) {
            k[l] = v.index[l] - leaders[a].index[l];
            proper = proper || k[l] > 0;
        }
        if (proper ? rank >= 1 : rank >= ranks[a]) return JanetDivisor{a, k};
    }
    return std::nullopt;
}

/// Minimal generators of the full cone closure of W.
inline std::vector<JetVariable> minimal_generators(const std::vector<JetVariable>& W)
{
    std::vector<JetVariable> out;
    for (std::size_t a = 0; a < W.size(); ++a) {
        bool redundant = false;
        for (std::size_t b = 0; b < W.size() && !redundant; ++b)
            if (a != b && in_full_cone(W[a], W[b]) && (W[a] != W[b] || b < a)) redundant = true;
        if (!redundant) out.push_back(W[a]);
    }
    return out;
}

}  // namespace thomas

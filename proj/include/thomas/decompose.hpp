// The main decomposition loop. The engine is parameterized by a policy that
// supplies Reduce and InsertEquation, so the same control flow serves the
// algebraic and the differential case.
#pragma once

#include "thomas/factor.hpp"
#include "thomas/splitting.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

namespace thomas {

class budget_exceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Statistics {
    std::uint64_t iterations = 0;
    std::uint64_t splits = 0;
    std::uint64_t discarded = 0;
};

struct Decomposition {
    std::vector<SimpleSystem> systems;
    Statistics stats;
};

struct DecomposeOptions {
    bool factor = false;
    bool coefficient_reduction = false;
    unsigned jobs = 1;
    std::uint64_t max_iterations = 2'000'000;
    /// Shared subresultant memo; one is created per run when null.
    std::shared_ptr<PrsCache> cache;
    /// Called at every loop boundary with pending and finished systems.
    /// Only honoured when jobs == 1.
    std::function<void(const std::vector<System>&, const std::vector<System>&)> observer;
};

enum class Verdict { discard_system, drop_relation, process };

/// Classifies a reduced relation: 0 != 0 and c = 0 (c a nonzero constant)
/// are contradictions, 0 = 0 and c != 0 are trivially true.
inline Verdict is_consistent_relation(const Relation& q)
{
    if (!q.poly.is_constant()) return Verdict::process;
    const bool zero = q.poly.is_zero();
    if (q.is_equation()) return zero ? Verdict::drop_relation : Verdict::discard_system;
    return zero ? Verdict::discard_system : Verdict::drop_relation;
}

/// Branches for a relation whose polynomial factors as f_1 ... f_k:
/// equations give {f_1 = 0}, {f_1 != 0, f_2 = 0}, ...; inequations give the
/// single system with every f_i != 0.
inline std::vector<System> factor_split(const System& S, const Relation& q, const std::vector<Polynomial>& factors)
{
    std::vector<System> out;
    if (q.is_inequation()) {
        System s = S;
        for (const auto& f : factors) s.enqueue(f, Kind::inequation);
        out.push_back(std::move(s));
        return out;
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
        System s = S;
        for (std::size_t j = 0; j < i; ++j) s.enqueue(factors[j], Kind::inequation);
        s.enqueue(factors[i], Kind::equation);
        out.push_back(std::move(s));
    }
    return out;
}

inline std::vector<System> factor_split(const System& S, const Relation& q)
{
    auto fs = factor(q.poly);
    if (fs.size() < 2 && (fs.empty() || fs.front() == normalize(q.poly))) return {S};
    return factor_split(S, q, fs);
}

/// Reduce and InsertEquation of plain polynomial systems.
struct AlgebraicPolicy {
    ReduceOptions options;

    Polynomial reduce(const System& S, const Polynomial& p) const { return thomas::reduce(S, p, options); }
    void insert_equation(System& S, const Polynomial& p) const { insert_equation_alg(S, p); }
};

template <class Policy>
class Engine {
public:
    Engine(Policy policy, DecomposeOptions options) : policy_(std::move(policy)), opt_(std::move(options))
    {
        if (!opt_.cache) opt_.cache = std::make_shared<PrsCache>();
    }

    Decomposition run(System input)
    {
        iterations_ = splits_ = discarded_ = 0;
        std::vector<System> finished;
        if (opt_.jobs <= 1) run_serial(std::move(input), finished);
        else run_parallel(std::move(input), finished);

        Decomposition out;
        for (const auto& s : finished) out.systems.push_back(SimpleSystem{s.relations()});
        std::sort(out.systems.begin(), out.systems.end(), SimpleSystemLess{});
        out.stats = {iterations_.load(), splits_.load(), discarded_.load()};
        return out;
    }

    const Policy& policy() const { return policy_; }

private:
    struct Sink {
        std::vector<System> pending;
        std::vector<System> finished;
    };

    Policy policy_;
    DecomposeOptions opt_;
    std::atomic<std::uint64_t> iterations_{0}, splits_{0}, discarded_{0};

    Polynomial red(const System& S, const Polynomial& p) const { return policy_.reduce(S, p); }

    /// Queues a system unless its smallest queued relation already is a
    /// constant contradiction.
    void push(Sink& sink, System s)
    {
        if (!s.Q.empty() && is_consistent_relation(*s.Q.begin()) == Verdict::discard_system) {
            ++discarded_;
            return;
        }
        sink.pending.push_back(std::move(s));
    }

    void branch(Sink& sink, System other)
    {
        ++splits_;
        push(sink, std::move(other));
    }

    /// One iteration of the main loop on S.
    void step(System S, Sink& sink)
    {
        if (++iterations_ > opt_.max_iterations)
            throw budget_exceeded("decomposition exceeded the iteration budget");
        if (S.Q.empty()) {
            sink.finished.push_back(std::move(S));
            return;
        }
        Relation q = *S.Q.begin();
        S.Q.erase(S.Q.begin());
        q.poly = red(S, q.poly);
        switch (is_consistent_relation(q)) {
        case Verdict::discard_system:
            ++discarded_;
            return;
        case Verdict::drop_relation:
            push(sink, std::move(S));
            return;
        case Verdict::process:
            break;
        }
        const Var x = *q.poly.leader();
        auto reducer = [this](const System& s, const Polynomial& p) { return red(s, p); };
        PrsCache* cache = opt_.cache.get();

        if (opt_.factor) {
            auto fs = factor(q.poly);
            if (fs.size() >= 2 || (fs.size() == 1 && fs.front() != normalize(q.poly))) {
                auto branches = factor_split(S, q, fs);
                splits_ += branches.size() - 1;
                for (auto it = branches.rbegin(); it != branches.rend(); ++it) push(sink, std::move(*it));
                return;
            }
        }

        if (q.is_equation()) {
            if (const Relation* t = S.equation_at(x)) {
                const Polynomial tx = t->poly;
                const Polynomial r0 = res(*prs_cached(cache, tx, q.poly, x), 0);
                if (red(S, r0).is_zero()) {
                    SplitOutcome o = res_split_gcd(S, q.poly, reducer, cache);
                    branch(sink, std::move(o.other));
                    S = std::move(o.kept);
                    policy_.insert_equation(S, content_free(*o.extra, x));
                } else {
                    S.enqueue(q);
                    S.enqueue(r0, Kind::equation);
                }
            } else {
                if (const Relation* t = S.inequation_at(x)) {
                    S.enqueue(*t);
                    S.T.erase(x);
                }
                auto [kept, other] = init_split(S, q);
                branch(sink, std::move(other));
                S = std::move(kept);
                Polynomial p = content_free(q.poly, x);
                if (p.rank() > 1) {
                    SplitOutcome o = res_split_squarefree(S, p, reducer, cache, Kind::equation);
                    branch(sink, std::move(o.other));
                    S = std::move(o.kept);
                    p = content_free(*o.extra, x);
                }
                policy_.insert_equation(S, p);
            }
        } else {
            if (const Relation* t = S.equation_at(x)) {
                const Polynomial tx = t->poly;
                SplitOutcome o = res_split_divide(S, tx, q.poly, reducer, cache, Kind::inequation);
                branch(sink, std::move(o.other));
                S = std::move(o.kept);
                policy_.insert_equation(S, content_free(*o.extra, x));
            } else {
                auto [kept, other] = init_split(S, q);
                branch(sink, std::move(other));
                S = std::move(kept);
                Polynomial p = content_free(q.poly, x);
                if (p.rank() > 1) {
                    SplitOutcome o = res_split_squarefree(S, p, reducer, cache, Kind::inequation);
                    branch(sink, std::move(o.other));
                    S = std::move(o.kept);
                    p = content_free(*o.extra, x);
                }
                if (const Relation* t = S.inequation_at(x)) {
                    const Polynomial tx = t->poly;
                    SplitOutcome o = res_split_divide(S, tx, p, reducer, cache, Kind::inequation);
                    branch(sink, std::move(o.other));
                    S = std::move(o.kept);
                    S.T.insert_or_assign(x, ineq(content_free(*o.extra * p, x)));
                } else {
                    S.T.insert_or_assign(x, ineq(p));
                }
            }
        }
        push(sink, std::move(S));
    }

    void run_serial(System input, std::vector<System>& finished)
    {
        Sink sink;
        sink.pending.push_back(std::move(input));
        while (!sink.pending.empty()) {
            if (opt_.observer) opt_.observer(sink.pending, sink.finished);
            System s = std::move(sink.pending.back());
            sink.pending.pop_back();
            step(std::move(s), sink);
        }
        if (opt_.observer) opt_.observer(sink.pending, sink.finished);
        finished = std::move(sink.finished);
    }

    void run_parallel(System input, std::vector<System>& finished)
    {
        std::mutex mu;
        std::condition_variable cv;
        std::vector<System> stack;
        stack.push_back(std::move(input));
        std::size_t busy = 0;
        bool stop = false;
        std::exception_ptr error;

        auto worker = [&] {
            while (true) {
                System s;
                {
                    std::unique_lock lock(mu);
                    cv.wait(lock, [&] { return stop || !stack.empty() || busy == 0; });
                    if (stop || (stack.empty() && busy == 0)) return;
                    s = std::move(stack.back());
                    stack.pop_back();
                    ++busy;
                }
                Sink sink;
                try {
                    step(std::move(s), sink);
                } catch (...) {
                    std::lock_guard lock(mu);
                    if (!error) error = std::current_exception();
                    stop = true;
                    --busy;
                    cv.notify_all();
                    return;
                }
                {
                    std::lock_guard lock(mu);
                    for (auto& p : sink.pending) stack.push_back(std::move(p));
                    for (auto& f : sink.finished) finished.push_back(std::move(f));
                    --busy;
                }
                cv.notify_all();
            }
        };
        std::vector<std::thread> threads;
        for (unsigned i = 0; i < opt_.jobs; ++i) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
        if (error) std::rethrow_exception(error);
    }
};

/// Algebraic Thomas decomposition of an input system (T must be empty).
inline Decomposition decompose(const System& input, const DecomposeOptions& options = {})
{
    if (!input.T.empty()) throw std::invalid_argument("decompose: input must have an empty triangular part");
    AlgebraicPolicy policy;
    policy.options.coefficient_reduction = options.coefficient_reduction;
    Engine<AlgebraicPolicy> engine(policy, options);
    return engine.run(input);
}

inline Decomposition decompose(const std::vector<Polynomial>& equations, const std::vector<Polynomial>& inequations,
                               const DecomposeOptions& options = {})
{
    return decompose(make_system(equations, inequations), options);
}

}  // namespace thomas

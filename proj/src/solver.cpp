#include "ctop/solver.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <limits>
#include <memory>
#include <stdexcept>
#include <utility>

namespace ctop {

const char* model_name(Model m) {
    switch (m) {
        case Model::Rank: return "rank";
        case Model::Vertex: return "vertex";
        case Model::Combined: return "combined";
    }
    return "unknown";
}

const char* status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Feasible: return "feasible";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Timeout: return "timeout";
    }
    return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

struct TimeoutSignal {};

std::size_t last_set(const Bits& b) {
    std::size_t last = b.find_first();
    for (std::size_t p = last; p != Bits::npos; p = b.find_next(p)) last = p;
    return last;
}

// Smallest |a - b| over the two value sets (both nonempty). Exact, so the
// conditional-precedence trigger is decided precisely once domains shrink.
int min_gap(const Bits& A, const Bits& B) {
    std::size_t a = A.find_first();
    std::size_t b = B.find_first();
    long best = std::numeric_limits<long>::max();
    while (a != Bits::npos && b != Bits::npos) {
        long diff = static_cast<long>(a) - static_cast<long>(b);
        best = std::min(best, diff < 0 ? -diff : diff);
        if (best == 0) break;
        if (a < b)
            a = A.find_next(a);
        else
            b = B.find_next(b);
    }
    return static_cast<int>(best);
}

class Engine;

struct Propagator {
    virtual ~Propagator() = default;
    // Filters domains through the engine; false signals a conflict.
    virtual bool propagate(Engine& e) = 0;
};

// Backtracking engine over bitset domains. Variables are rank variables
// (index v) and/or vertex-per-rank variables (index pos_base + i) depending
// on the model. The trail is a full domain snapshot per decision level;
// propagators re-enqueue through per-variable watcher lists.
class Engine {
public:
    Engine(const Instance& inst, const SolveOptions& opts, const PreprocessReport& prep);

    int n() const { return n_; }
    const Graph& graph() const { return inst_.graph; }
    int rank_var(Vertex v) const { return v; }
    int pos_var(int i) const { return pos_base_ + i; }
    const Bits& dom(int var) const { return dom_[static_cast<std::size_t>(var)]; }

    bool remove(int var, std::size_t val) {
        Bits& d = dom_[static_cast<std::size_t>(var)];
        if (!d.test(val)) return true;
        d.reset(val);
        touched(var);
        return d.any();
    }
    bool restrict_to(int var, const Bits& mask) {
        Bits& d = dom_[static_cast<std::size_t>(var)];
        Bits next = d & mask;
        if (next == d) return true;
        d = std::move(next);
        touched(var);
        return d.any();
    }

    void run(SolveResult& out, std::uint64_t limit, bool store,
             std::optional<Clock::time_point> deadline) {
        out_ = &out;
        limit_ = limit;
        store_ = store;
        deadline_ = deadline;
        if (!root_ok_) return;
        queue_.clear();
        std::fill(in_queue_.begin(), in_queue_.end(), char{1});
        for (std::size_t pid = 0; pid < props_.size(); ++pid)
            queue_.push_back(static_cast<int>(pid));
        if (!fixpoint()) {
            ++stats_.fails;
            return;
        }
        search();
    }

    SearchStats stats() const { return stats_; }

private:
    void add_prop(std::unique_ptr<Propagator> p, const std::vector<int>& watched) {
        int pid = static_cast<int>(props_.size());
        props_.push_back(std::move(p));
        for (int var : watched) watchers_[static_cast<std::size_t>(var)].push_back(pid);
    }

    void touched(int var) {
        for (int pid : watchers_[static_cast<std::size_t>(var)])
            if (!in_queue_[static_cast<std::size_t>(pid)]) {
                in_queue_[static_cast<std::size_t>(pid)] = 1;
                queue_.push_back(pid);
            }
    }

    bool fixpoint() {
        while (!queue_.empty()) {
            int pid = queue_.front();
            queue_.pop_front();
            in_queue_[static_cast<std::size_t>(pid)] = 0;
            if (!props_[static_cast<std::size_t>(pid)]->propagate(*this)) {
                queue_.clear();
                std::fill(in_queue_.begin(), in_queue_.end(), char{0});
                return false;
            }
        }
        return true;
    }

    // Rank model: smallest domain first. Position-based models: fill ranks
    // left to right, which keeps enumeration order lexicographic.
    int pick_var() const {
        if (min_domain_) {
            int best = -1;
            std::size_t best_size = 0;
            for (std::size_t var = 0; var < dom_.size(); ++var) {
                std::size_t c = dom_[var].count();
                if (c <= 1) continue;
                if (best < 0 || c < best_size) {
                    best = static_cast<int>(var);
                    best_size = c;
                }
            }
            return best;
        }
        for (int i = 0; i < n_; ++i)
            if (dom_[static_cast<std::size_t>(pos_var(i))].count() > 1) return pos_var(i);
        return -1;
    }

    // Returns true when the solution limit asks the search to stop.
    bool search() {
        int var = pick_var();
        if (var < 0) return record_solution();
        const std::vector<Bits> saved = dom_;
        const Bits vals = dom_[static_cast<std::size_t>(var)];
        Bits single(static_cast<std::size_t>(n_));
        for (std::size_t val = vals.find_first(); val != Bits::npos; val = vals.find_next(val)) {
            ++stats_.choice_points;
            if ((stats_.choice_points & 1023u) == 0 && deadline_ && Clock::now() >= *deadline_)
                throw TimeoutSignal{};
            single.reset();
            single.set(val);
            bool ok = restrict_to(var, single);
            if (ok) ok = fixpoint();
            if (!ok) {
                ++stats_.fails;
            } else if (search()) {
                return true;
            }
            dom_ = saved;
            queue_.clear();
            std::fill(in_queue_.begin(), in_queue_.end(), char{0});
        }
        return false;
    }

    bool record_solution() {
        Order order = extract();
        if (!verify_order(inst_, order))
            throw std::logic_error("solver: model admitted an invalid order");
        std::vector<int> rk = ranks_of(order);
        for (const auto& c : sym_)
            if (!satisfies(c, rk, inst_.k))
                throw std::logic_error("solver: leaf violates a symmetry constraint");
        for (const auto& c : vis_)
            if (!satisfies(c, rk, inst_.k))
                throw std::logic_error("solver: leaf violates a separation constraint");
        ++out_->count;
        if (!out_->order) out_->order = order;
        if (store_) out_->orders.push_back(std::move(order));
        if (out_->count >= limit_) {
            out_->truncated = true;
            return true;
        }
        return false;
    }

    Order extract() const {
        Order order(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) {
            int var = has_positions_ ? pos_var(i) : rank_var(i);
            const Bits& d = dom_[static_cast<std::size_t>(var)];
            if (d.count() != 1) throw std::logic_error("solver: unassigned variable at a leaf");
            if (has_positions_)
                order[static_cast<std::size_t>(i)] = static_cast<Vertex>(d.find_first());
            else
                order[d.find_first()] = i;  // rank of vertex i
        }
        return order;
    }

    const Instance& inst_;
    int n_;
    bool has_ranks_ = false;
    bool has_positions_ = false;
    bool min_domain_ = false;
    int pos_base_ = 0;
    bool root_ok_ = true;

    std::vector<Bits> dom_;
    std::vector<std::unique_ptr<Propagator>> props_;
    std::vector<std::vector<int>> watchers_;
    std::deque<int> queue_;
    std::vector<char> in_queue_;

    std::vector<SymConstraint> sym_;          // re-checked at every leaf
    std::vector<SeparationConstraint> vis_;

    SearchStats stats_;
    SolveResult* out_ = nullptr;
    std::uint64_t limit_ = kNoLimit;
    bool store_ = false;
    std::optional<Clock::time_point> deadline_;
};

struct AllDifferentProp : Propagator {
    std::vector<int> vars;
    bool hall;
    AllDifferentProp(std::vector<int> v, bool h) : vars(std::move(v)), hall(h) {}

    bool propagate(Engine& e) override {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int v : vars) {
                const Bits& d = e.dom(v);
                if (d.count() != 1) continue;
                std::size_t val = d.find_first();
                for (int u : vars) {
                    if (u == v || !e.dom(u).test(val)) continue;
                    if (!e.remove(u, val)) return false;
                    changed = true;
                }
            }
        }
        return !hall || prune_hall(e);
    }

    // Hall intervals: when exactly b-a+1 variables live inside the value
    // interval [a,b] they consume it, so everyone else drops those values;
    // more than b-a+1 such variables is a conflict.
    bool prune_hall(Engine& e) {
        std::size_t width = e.dom(vars[0]).size();
        for (std::size_t a = 0; a < width; ++a) {
            Bits window(width);
            for (std::size_t b = a; b < width; ++b) {
                window.set(b);
                std::size_t span = b - a + 1;
                std::size_t inside = 0;
                for (int v : vars)
                    if (e.dom(v).is_subset_of(window)) ++inside;
                if (inside > span) return false;
                if (inside < span) continue;
                Bits keep = ~window;
                for (int v : vars) {
                    if (e.dom(v).is_subset_of(window)) continue;
                    if (!e.restrict_to(v, keep)) return false;
                }
            }
        }
        return true;
    }
};

// |value(x) - value(y)| >= gap, arc consistent via the other side's bounds.
struct SeparationPairProp : Propagator {
    int x, y, gap;
    SeparationPairProp(int x_, int y_, int gap_) : x(x_), y(y_), gap(gap_) {}

    bool propagate(Engine& e) override { return revise(e, x, y) && revise(e, y, x); }

    bool revise(Engine& e, int a, int b) const {
        const Bits& db = e.dom(b);
        long lo = static_cast<long>(db.find_first());
        long hi = static_cast<long>(last_set(db));
        Bits keep(db.size());
        for (std::size_t p = 0; p < keep.size(); ++p) {
            long v = static_cast<long>(p);
            if (v <= hi - gap || v >= lo + gap) keep.set(p);
        }
        return e.restrict_to(a, keep);
    }
};

// Ranks i and j sit within a window, so their vertices must be adjacent.
struct WindowPairProp : Propagator {
    int pi, pj;
    WindowPairProp(int pi_, int pj_) : pi(pi_), pj(pj_) {}

    bool propagate(Engine& e) override { return revise(e, pi, pj) && revise(e, pj, pi); }

    bool revise(Engine& e, int a, int b) const {
        const Bits& db = e.dom(b);
        Bits keep(db.size());
        const Bits da = e.dom(a);
        for (std::size_t u = da.find_first(); u != Bits::npos; u = da.find_next(u))
            if (e.graph().neighbor_bits(static_cast<Vertex>(u)).intersects(db)) keep.set(u);
        return e.restrict_to(a, keep);
    }
};

// Keeps rank and position domains mirror images of each other.
struct ChannelProp : Propagator {
    bool propagate(Engine& e) override {
        int n = e.n();
        for (Vertex u = 0; u < n; ++u) {
            for (int j = 0; j < n; ++j) {
                bool in_rank = e.dom(e.rank_var(u)).test(static_cast<std::size_t>(j));
                bool in_pos = e.dom(e.pos_var(j)).test(static_cast<std::size_t>(u));
                if (in_rank == in_pos) continue;
                if (in_rank) {
                    if (!e.remove(e.rank_var(u), static_cast<std::size_t>(j))) return false;
                } else {
                    if (!e.remove(e.pos_var(j), static_cast<std::size_t>(u))) return false;
                }
            }
        }
        return true;
    }
};

// value(va) < value(vb), bounds consistent.
struct PrecedeProp : Propagator {
    int va, vb;
    PrecedeProp(int va_, int vb_) : va(va_), vb(vb_) {}

    bool propagate(Engine& e) override { return apply(e, va, vb); }

    static bool apply(Engine& e, int a, int b) {
        std::size_t amin = e.dom(a).find_first();
        std::size_t bmax = last_set(e.dom(b));
        Bits keep_a(e.dom(a).size());
        for (std::size_t p = 0; p < bmax; ++p) keep_a.set(p);
        if (!e.restrict_to(a, keep_a)) return false;
        Bits keep_b(e.dom(b).size());
        for (std::size_t p = amin + 1; p < keep_b.size(); ++p) keep_b.set(p);
        return e.restrict_to(b, keep_b);
    }
};

// Once |rank(v) - rank(w)| >= k+1 is certain, v must precede u. The trigger
// test uses the exact minimum gap, so it is decided precisely at leaves.
struct CondPrecedeProp : Propagator {
    int vv, vw, vu, k;
    CondPrecedeProp(int vv_, int vw_, int vu_, int k_) : vv(vv_), vw(vw_), vu(vu_), k(k_) {}

    bool propagate(Engine& e) override {
        if (min_gap(e.dom(vv), e.dom(vw)) < k + 1) return true;
        return PrecedeProp::apply(e, vv, vu);
    }
};

// max(rank) - min(rank) >= span across the member vertices.
struct SpanAtLeastProp : Propagator {
    std::vector<int> vars;
    int span;
    SpanAtLeastProp(std::vector<int> v, int s) : vars(std::move(v)), span(s) {}

    bool propagate(Engine& e) override {
        long max1 = -1, max2 = -1, min1 = std::numeric_limits<long>::max(), min2 = min1;
        int max_owner = -1, min_owner = -1;
        for (int v : vars) {
            long lo = static_cast<long>(e.dom(v).find_first());
            long hi = static_cast<long>(last_set(e.dom(v)));
            if (hi > max1) {
                max2 = max1;
                max1 = hi;
                max_owner = v;
            } else if (hi > max2) {
                max2 = hi;
            }
            if (lo < min1) {
                min2 = min1;
                min1 = lo;
                min_owner = v;
            } else if (lo < min2) {
                min2 = lo;
            }
        }
        if (max1 - min1 < span) return false;
        for (int v : vars) {
            long other_hi = v == max_owner ? max2 : max1;
            long other_lo = v == min_owner ? min2 : min1;
            Bits keep(e.dom(v).size());
            for (std::size_t p = 0; p < keep.size(); ++p) {
                long d = static_cast<long>(p);
                if (std::max(other_hi, d) - std::min(other_lo, d) >= span) keep.set(p);
            }
            if (!e.restrict_to(v, keep)) return false;
        }
        return true;
    }
};

Engine::Engine(const Instance& inst, const SolveOptions& opts, const PreprocessReport& prep)
    : inst_(inst), n_(inst.n()) {
    has_ranks_ = opts.model != Model::Vertex;
    has_positions_ = opts.model != Model::Rank;
    min_domain_ = opts.model == Model::Rank;
    pos_base_ = has_ranks_ ? n_ : 0;

    Bits full(static_cast<std::size_t>(n_));
    full.set();
    std::size_t var_count =
        static_cast<std::size_t>((has_ranks_ ? n_ : 0) + (has_positions_ ? n_ : 0));
    dom_.assign(var_count, full);
    watchers_.assign(var_count, {});

    int k = inst.k;
    if (has_ranks_) {
        for (Vertex v = 0; v < n_; ++v) {
            dom_[static_cast<std::size_t>(rank_var(v))] = prep.rank_domains[static_cast<std::size_t>(v)];
            if (dom_[static_cast<std::size_t>(rank_var(v))].none()) root_ok_ = false;
        }
        std::vector<int> rvars;
        for (Vertex v = 0; v < n_; ++v) rvars.push_back(rank_var(v));
        add_prop(std::make_unique<AllDifferentProp>(rvars, opts.hall_intervals), rvars);
        for (Vertex u = 0; u < n_; ++u)
            for (Vertex v = u + 1; v < n_; ++v)
                if (!inst.graph.adjacent(u, v))
                    add_prop(std::make_unique<SeparationPairProp>(rank_var(u), rank_var(v), k + 1),
                             {rank_var(u), rank_var(v)});
    }
    if (has_positions_) {
        std::vector<int> pvars;
        for (int i = 0; i < n_; ++i) pvars.push_back(pos_var(i));
        add_prop(std::make_unique<AllDifferentProp>(pvars, opts.hall_intervals), pvars);
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_ && j - i <= k; ++j)
                add_prop(std::make_unique<WindowPairProp>(pos_var(i), pos_var(j)),
                         {pos_var(i), pos_var(j)});
    }
    if (has_ranks_ && has_positions_) {
        std::vector<int> all;
        for (std::size_t var = 0; var < var_count; ++var) all.push_back(static_cast<int>(var));
        add_prop(std::make_unique<ChannelProp>(), all);
    }

    std::vector<const FixRank*> fixes;
    if (has_ranks_) {
        for (const SymConstraint& c : prep.symmetry.constraints) {
            if (const auto* fix = std::get_if<FixRank>(&c)) {
                fixes.push_back(fix);
            } else if (const auto* pre = std::get_if<Precede>(&c)) {
                add_prop(std::make_unique<PrecedeProp>(rank_var(pre->before), rank_var(pre->after)),
                         {rank_var(pre->before), rank_var(pre->after)});
            } else if (const auto* cond = std::get_if<ConditionalPrecede>(&c)) {
                add_prop(std::make_unique<CondPrecedeProp>(rank_var(cond->v), rank_var(cond->w),
                                                           rank_var(cond->u), k),
                         {rank_var(cond->v), rank_var(cond->w), rank_var(cond->u)});
            }
        }
        sym_ = prep.symmetry.constraints;
        for (const SeparationConstraint& c : prep.inequalities) {
            std::vector<int> mvars;
            for (Vertex v : c.members) mvars.push_back(rank_var(v));
            if (c.pairwise) {
                for (std::size_t i = 0; i < mvars.size(); ++i)
                    for (std::size_t j = i + 1; j < mvars.size(); ++j)
                        add_prop(std::make_unique<SeparationPairProp>(mvars[i], mvars[j], k + 1),
                                 {mvars[i], mvars[j]});
            } else if (mvars.size() == 2) {
                add_prop(std::make_unique<SeparationPairProp>(mvars[0], mvars[1], c.min_span),
                         {mvars[0], mvars[1]});
            } else {
                add_prop(std::make_unique<SpanAtLeastProp>(mvars, c.min_span), mvars);
            }
        }
        vis_ = prep.inequalities;
    }
    in_queue_.assign(props_.size(), 0);
    for (const FixRank* fix : fixes) {
        Bits single(static_cast<std::size_t>(n_));
        single.set(static_cast<std::size_t>(fix->rank));
        if (!restrict_to(rank_var(fix->v), single)) root_ok_ = false;
    }
}

SolveResult run_solver(const Instance& inst, const SolveOptions& opts, std::uint64_t limit,
                       bool store) {
    auto t0 = Clock::now();
    SolveResult res;
    PreprocessReport prep = preprocess(inst, opts.prep);
    if (prep.verdict) {
        res.status = SolveStatus::Infeasible;
        res.fired_check = prep.verdict;
    } else {
        Engine engine(inst, opts, prep);
        std::optional<Clock::time_point> deadline;
        if (opts.time_limit > 0.0)
            deadline = t0 + std::chrono::duration_cast<Clock::duration>(
                                std::chrono::duration<double>(opts.time_limit));
        try {
            engine.run(res, limit, store, deadline);
            res.status = res.count > 0 ? SolveStatus::Feasible : SolveStatus::Infeasible;
        } catch (const TimeoutSignal&) {
            res.status = SolveStatus::Timeout;
        }
        res.stats = engine.stats();
    }
    res.stats.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return res;
}

}  // namespace

SolveResult solve(const Instance& inst, const SolveOptions& opts) {
    return run_solver(inst, opts, 1, false);
}

SolveResult solve_all(const Instance& inst, std::uint64_t limit, const SolveOptions& opts) {
    return run_solver(inst, opts, limit == 0 ? kNoLimit : limit, true);
}

SolveResult count_all(const Instance& inst, const SolveOptions& opts) {
    return run_solver(inst, opts, kNoLimit, false);
}

}  // namespace ctop

#include "ctop/preprocess.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace ctop {

namespace {

// Distinct neighbors a vertex placed at rank p must have: everything within
// k positions on either side.
int rank_demand(int n, int k, int p) {
    return std::min(p, k) + std::min(n - 1 - p, k);
}

std::string vertex_list(const VertexSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0) out += ",";
        out += "v" + std::to_string(s[i]);
    }
    return out + "}";
}

std::string rank_set(const Bits& b) {
    std::string out = "{";
    bool first = true;
    for (std::size_t p = b.find_first(); p != Bits::npos; p = b.find_next(p)) {
        if (!first) out += ",";
        out += std::to_string(p);
        first = false;
    }
    return out + "}";
}

}  // namespace

std::string Rat::str() const {
    std::int64_t nm = num, dn = den;
    if (dn < 0) {
        nm = -nm;
        dn = -dn;
    }
    std::int64_t g = std::gcd(nm < 0 ? -nm : nm, dn);
    if (g > 1) {
        nm /= g;
        dn /= g;
    }
    if (dn == 1) return std::to_string(nm);
    std::int64_t rest = dn;
    int twos = 0, fives = 0;
    while (rest % 2 == 0) {
        rest /= 2;
        ++twos;
    }
    while (rest % 5 == 0) {
        rest /= 5;
        ++fives;
    }
    if (rest != 1) return std::to_string(nm) + "/" + std::to_string(dn);
    int digits = std::max(twos, fives);
    std::int64_t scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    bool neg = nm < 0;
    std::int64_t mag = (neg ? -nm : nm) * (scale / dn);
    std::string frac = std::to_string(mag % scale);
    frac.insert(frac.begin(), static_cast<std::size_t>(digits) - frac.size(), '0');
    return (neg ? "-" : "") + std::to_string(mag / scale) + "." + frac;
}

Bits feasible_ranks_for_degree(int n, int k, int degree) {
    Bits out(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p)
        if (rank_demand(n, k, p) <= degree) out.set(static_cast<std::size_t>(p));
    return out;
}

std::int64_t min_edges_bound(int n, int k) {
    if (n < 1 || k < 1) throw std::invalid_argument("min_edges_bound: need n >= 1 and k >= 1");
    std::int64_t total = 0;
    for (int p = 0; p < n; ++p) total += rank_demand(n, k, p);
    // Every edge serves two rank demands; the total is always even.
    return total / 2;
}

const char* check_name(Check c) {
    switch (c) {
        case Check::MinDegree: return "min-degree";
        case Check::MinEdges: return "min-edges";
        case Check::SmallDegreeClasses: return "small-degree-classes";
        case Check::LargeDegreeClasses: return "large-degree-classes";
        case Check::StableSet: return "stable-set";
    }
    return "unknown";
}

CheckOutcome check_min_degree(const Instance& inst) {
    CheckOutcome out{};
    out.check = Check::MinDegree;
    int n = inst.n();
    int need = std::min(inst.k, n - 1);
    out.bound = Rat{need};
    int lowest = n > 0 ? inst.graph.degree(0) : 0;
    for (Vertex v = 0; v < n; ++v) {
        int d = inst.graph.degree(v);
        lowest = std::min(lowest, d);
        if (d < need) out.witness.push_back(v);
    }
    out.observed = lowest;
    out.infeasible = !out.witness.empty();
    return out;
}

CheckOutcome check_min_edges(const Instance& inst) {
    CheckOutcome out{};
    out.check = Check::MinEdges;
    if (inst.n() == 0) return out;
    std::int64_t bound = min_edges_bound(inst.n(), inst.k);
    out.bound = Rat{bound};
    out.observed = inst.graph.edge_count();
    out.infeasible = out.observed < bound;
    return out;
}

CheckOutcome check_small_degree_classes(const Instance& inst) {
    CheckOutcome out{};
    out.check = Check::SmallDegreeClasses;
    int n = inst.n();
    int k = inst.k;
    for (int delta = 0; delta < k; ++delta) {
        VertexSet cls = degree_class(inst.graph, k, k + delta);
        int size = static_cast<int>(cls.size());
        int avail = static_cast<int>(feasible_ranks_for_degree(n, k, k + delta).count());
        bool certifies = size > avail;
        // 2*delta + 3 is the classic trigger; it coincides with the exact
        // position count whenever n >= k + delta + 2 but can overshoot on
        // very small graphs, so only the exact comparison decides.
        if (certifies || size >= 2 * delta + 3)
            out.trigger_deltas.push_back({delta, size, avail, certifies});
        if (certifies && !out.infeasible) {
            out.infeasible = true;
            out.witness = std::move(cls);
            out.bound = Rat{avail + 1};
            out.observed = size;
        }
    }
    if (!out.infeasible && !out.trigger_deltas.empty()) {
        out.bound = Rat{out.trigger_deltas.front().available + 1};
        out.observed = out.trigger_deltas.front().class_size;
    }
    return out;
}

CheckOutcome check_large_degree_classes(const Instance& inst) {
    CheckOutcome out{};
    out.check = Check::LargeDegreeClasses;
    int n = inst.n();
    int k = inst.k;
    if (n < 2 * k + 1) {
        out.applicable = false;
        return out;
    }
    out.witness = degree_class(inst.graph, 2 * k, n - 1);
    out.observed = static_cast<std::int64_t>(out.witness.size());
    // Ranks k .. n-1-k each demand 2k distinct neighbors.
    out.bound = Rat{n - 2 * k};
    out.infeasible = out.observed < out.bound;
    return out;
}

CheckOutcome check_max_stable_set(const Instance& inst, std::size_t cap) {
    CheckOutcome out{};
    out.check = Check::StableSet;
    int n = inst.n();
    int k = inst.k;
    out.bound = Rat{static_cast<std::int64_t>(n) + k + 1, static_cast<std::int64_t>(k) + 1};
    if (n == 0) return out;
    StableSetEnumeration enumr = maximal_stable_sets(inst.graph, cap);
    out.truncated = enumr.truncated;
    const VertexSet* best = nullptr;
    for (const auto& s : enumr.sets)
        if (best == nullptr || s.size() > best->size()) best = &s;
    if (best != nullptr) {
        out.witness = *best;
        out.observed = static_cast<std::int64_t>(best->size());
    }
    out.infeasible = out.observed >= out.bound;
    return out;
}

std::optional<CheckOutcome> run_checks(const Instance& inst, std::size_t cap) {
    if (auto c = check_min_degree(inst); c.infeasible) return c;
    if (auto c = check_min_edges(inst); c.infeasible) return c;
    if (auto c = check_small_degree_classes(inst); c.infeasible) return c;
    if (auto c = check_large_degree_classes(inst); c.infeasible) return c;
    if (auto c = check_max_stable_set(inst, cap); c.infeasible) return c;
    return std::nullopt;
}

DomainReduction reduce_domains(const Instance& inst) {
    const Graph& g = inst.graph;
    int n = inst.n();
    int k = inst.k;
    int need = std::min(k, n - 1);
    for (Vertex v = 0; v < n; ++v)
        if (g.degree(v) < need)
            throw std::invalid_argument("reduce_domains: a vertex has degree below min(k, n-1)");

    DomainReduction out;
    Bits full(static_cast<std::size_t>(n));
    full.set();
    out.domains.assign(static_cast<std::size_t>(n), full);

    // Rule 1: a vertex only fits ranks whose window demand its degree covers.
    for (Vertex v = 0; v < n; ++v) {
        int d = g.degree(v);
        if (d >= 2 * k) continue;  // mask would be all ranks
        Bits next = out.domains[static_cast<std::size_t>(v)] & feasible_ranks_for_degree(n, k, d);
        if (next != out.domains[static_cast<std::size_t>(v)]) {
            out.rule1_applied = true;
            out.domains[static_cast<std::size_t>(v)] = std::move(next);
        }
    }

    // Rule 2: a vertex of degree exactly k sits at rank 0 or n-1 (rule 1),
    // and its window covers precisely its k neighbors, so those neighbors
    // live in the first or last k+1 ranks. Larger low-degree vertices admit
    // interior placements once n is small enough, so only degree == k is cut.
    if (n >= 2 * k + 1) {
        Bits ends(static_cast<std::size_t>(n));
        for (int p = 0; p <= k; ++p) ends.set(static_cast<std::size_t>(p));
        for (int p = n - 1 - k; p < n; ++p) ends.set(static_cast<std::size_t>(p));
        for (Vertex v = 0; v < n; ++v) {
            if (g.degree(v) != k) continue;
            for (Vertex u : g.neighbors(v)) {
                Bits next = out.domains[static_cast<std::size_t>(u)] & ends;
                if (next != out.domains[static_cast<std::size_t>(u)]) {
                    out.rule2_applied = true;
                    out.domains[static_cast<std::size_t>(u)] = std::move(next);
                }
            }
        }
    }

    for (const auto& d : out.domains)
        if (d.none()) out.empty_domain = true;
    return out;
}

bool satisfies(const SymConstraint& c, const std::vector<int>& ranks, int k) {
    return std::visit(
        [&](const auto& cc) -> bool {
            using T = std::decay_t<decltype(cc)>;
            if constexpr (std::is_same_v<T, FixRank>) {
                return ranks[static_cast<std::size_t>(cc.v)] == cc.rank;
            } else if constexpr (std::is_same_v<T, Precede>) {
                return ranks[static_cast<std::size_t>(cc.before)] <
                       ranks[static_cast<std::size_t>(cc.after)];
            } else {
                int gap = std::abs(ranks[static_cast<std::size_t>(cc.v)] -
                                   ranks[static_cast<std::size_t>(cc.w)]);
                return gap <= k || ranks[static_cast<std::size_t>(cc.v)] <
                                       ranks[static_cast<std::size_t>(cc.u)];
            }
        },
        c);
}

std::string describe(const SymConstraint& c, int k) {
    std::ostringstream os;
    std::visit(
        [&](const auto& cc) {
            using T = std::decay_t<decltype(cc)>;
            if constexpr (std::is_same_v<T, FixRank>) {
                os << "r(v" << cc.v << ") = " << cc.rank;
            } else if constexpr (std::is_same_v<T, Precede>) {
                os << "r(v" << cc.before << ") < r(v" << cc.after << ")";
            } else {
                os << "|r(v" << cc.v << ") - r(v" << cc.w << ")| > " << k << " -> r(v" << cc.v
                   << ") < r(v" << cc.u << ")";
            }
        },
        c);
    return os.str();
}

namespace {

// Static consistency guard over the emitted constraints: fixed ranks must not
// clash and precedences must stay acyclic and compatible with the fixes.
// Conditional precedences carry no static obligation.
struct SymGuard {
    int n;
    std::map<Vertex, int> fixed;
    std::map<int, Vertex> at_rank;
    std::vector<std::vector<Vertex>> succ;
    std::vector<std::vector<Vertex>> pred;

    explicit SymGuard(int n_)
        : n(n_), succ(static_cast<std::size_t>(n_)), pred(static_cast<std::size_t>(n_)) {}

    bool reaches(Vertex from, Vertex to) const {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::vector<Vertex> stack{from};
        seen[static_cast<std::size_t>(from)] = 1;
        while (!stack.empty()) {
            Vertex cur = stack.back();
            stack.pop_back();
            if (cur == to) return true;
            for (Vertex nxt : succ[static_cast<std::size_t>(cur)])
                if (!seen[static_cast<std::size_t>(nxt)]) {
                    seen[static_cast<std::size_t>(nxt)] = 1;
                    stack.push_back(nxt);
                }
        }
        return false;
    }

    bool admits(const FixRank& c) const {
        auto it = fixed.find(c.v);
        if (it != fixed.end()) return it->second == c.rank;
        auto at = at_rank.find(c.rank);
        if (at != at_rank.end()) return false;
        if (c.rank == 0 && !pred[static_cast<std::size_t>(c.v)].empty()) return false;
        if (c.rank == n - 1 && !succ[static_cast<std::size_t>(c.v)].empty()) return false;
        for (Vertex u : pred[static_cast<std::size_t>(c.v)]) {
            auto f = fixed.find(u);
            if (f != fixed.end() && f->second >= c.rank) return false;
        }
        for (Vertex w : succ[static_cast<std::size_t>(c.v)]) {
            auto f = fixed.find(w);
            if (f != fixed.end() && f->second <= c.rank) return false;
        }
        return true;
    }

    bool admits(const Precede& c) const {
        if (c.before == c.after) return false;
        auto fb = fixed.find(c.before);
        auto fa = fixed.find(c.after);
        if (fb != fixed.end() && fa != fixed.end() && fb->second >= fa->second) return false;
        if (fa != fixed.end() && fa->second == 0) return false;
        if (fb != fixed.end() && fb->second == n - 1) return false;
        return !reaches(c.after, c.before);
    }

    bool admits(const ConditionalPrecede&) const { return true; }

    void apply(const FixRank& c) {
        fixed[c.v] = c.rank;
        at_rank[c.rank] = c.v;
    }
    void apply(const Precede& c) {
        succ[static_cast<std::size_t>(c.before)].push_back(c.after);
        pred[static_cast<std::size_t>(c.after)].push_back(c.before);
    }
    void apply(const ConditionalPrecede&) {}
};

// Vertices sharing identical neighborhoods (open or closed), grouped. Only
// groups of two or more are returned, ordered by their lowest member, each
// ascending inside.
std::vector<VertexSet> twin_groups(const Graph& g, bool closed) {
    std::map<Bits, VertexSet> by_nbhd;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        Bits key = g.neighbor_bits(v);
        if (closed) key.set(static_cast<std::size_t>(v));
        by_nbhd[key].push_back(v);
    }
    std::vector<VertexSet> groups;
    for (auto& [key, members] : by_nbhd)
        if (members.size() >= 2) groups.push_back(std::move(members));
    std::sort(groups.begin(), groups.end());
    return groups;
}

}  // namespace

SymmetryBreaking detect_symmetry_breaking(const Instance& inst) {
    const Graph& g = inst.graph;
    int n = inst.n();
    int k = inst.k;
    SymmetryBreaking out;
    if (n == 0) return out;

    SymGuard guard(n);
    std::set<int> used;
    auto push = [&](SymConstraint c, int condition) {
        bool ok = std::visit([&](const auto& cc) { return guard.admits(cc); }, c);
        if (!ok) {
            ++out.dropped_conflicts;
            return;
        }
        std::visit([&](const auto& cc) { guard.apply(cc); }, c);
        out.constraints.push_back(std::move(c));
        used.insert(condition);
    };

    // Interchangeable vertices: identical open neighborhoods (a stable set of
    // twins) or identical closed neighborhoods (a clique of twins) can be
    // permuted freely, so chain each group in ascending order. Clique twin
    // chains beyond three members add nothing the first three do not.
    std::vector<VertexSet> open_groups = twin_groups(g, false);
    std::vector<VertexSet> closed_full = twin_groups(g, true);
    for (const auto& grp : open_groups)
        for (std::size_t i = 0; i + 1 < grp.size(); ++i)
            push(Precede{grp[i], grp[i + 1]}, 2);
    std::vector<VertexSet> closed_groups;
    for (const auto& grp : closed_full) {
        VertexSet t(grp.begin(), grp.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(grp.size(), 3)));
        for (std::size_t i = 0; i + 1 < t.size(); ++i) push(Precede{t[i], t[i + 1]}, 3);
        closed_groups.push_back(std::move(t));
    }

    // A vertex v one neighbor w short of joining a twin stable set becomes
    // interchangeable with its members whenever w lands out of v's window, so
    // conditionally order v before the group minimum u.
    struct StableBase {
        Bits members;
        Bits nbrs;
        Vertex rep;
    };
    std::vector<StableBase> stable_bases;
    Bits in_open(static_cast<std::size_t>(n));
    for (const auto& grp : open_groups) {
        Bits mem(static_cast<std::size_t>(n));
        for (Vertex v : grp) {
            mem.set(static_cast<std::size_t>(v));
            in_open.set(static_cast<std::size_t>(v));
        }
        stable_bases.push_back({std::move(mem), g.neighbor_bits(grp.front()), grp.front()});
    }
    for (Vertex u = 0; u < n; ++u) {
        if (in_open.test(static_cast<std::size_t>(u))) continue;
        Bits mem(static_cast<std::size_t>(n));
        mem.set(static_cast<std::size_t>(u));
        stable_bases.push_back({std::move(mem), g.neighbor_bits(u), u});
    }
    for (const auto& base : stable_bases) {
        for (Vertex v = 0; v < n; ++v) {
            if (base.members.test(static_cast<std::size_t>(v)) ||
                base.nbrs.test(static_cast<std::size_t>(v)))
                continue;
            const Bits& nv = g.neighbor_bits(v);
            if ((base.nbrs & ~nv).any()) continue;
            Bits extra = nv & ~base.nbrs;
            if (extra.count() != 1) continue;
            push(ConditionalPrecede{v, static_cast<Vertex>(extra.find_first()), base.rep}, 4);
        }
    }

    // Same idea against twin cliques: v adjacent to the clique whose closed
    // neighborhood exceeds the clique's by exactly one vertex w.
    struct CliqueBase {
        Bits members;
        Bits closed;
        Vertex rep;
    };
    std::vector<CliqueBase> clique_bases;
    Bits in_closed(static_cast<std::size_t>(n));
    for (const auto& grp : closed_full)
        for (Vertex v : grp) in_closed.set(static_cast<std::size_t>(v));
    for (const auto& t : closed_groups) {
        Bits mem(static_cast<std::size_t>(n));
        for (Vertex v : t) mem.set(static_cast<std::size_t>(v));
        Bits closed = g.neighbor_bits(t.front());
        closed.set(static_cast<std::size_t>(t.front()));
        clique_bases.push_back({std::move(mem), std::move(closed), t.front()});
    }
    for (Vertex u = 0; u < n; ++u) {
        if (in_closed.test(static_cast<std::size_t>(u))) continue;
        Bits mem(static_cast<std::size_t>(n));
        mem.set(static_cast<std::size_t>(u));
        Bits closed = g.neighbor_bits(u);
        closed.set(static_cast<std::size_t>(u));
        clique_bases.push_back({std::move(mem), std::move(closed), u});
    }
    for (const auto& base : clique_bases) {
        for (Vertex v = 0; v < n; ++v) {
            if (base.members.test(static_cast<std::size_t>(v)) ||
                !base.closed.test(static_cast<std::size_t>(v)))
                continue;
            Bits nv = g.neighbor_bits(v);
            nv.set(static_cast<std::size_t>(v));
            if ((base.closed & ~nv).any()) continue;
            Bits extra = nv & ~base.closed;
            if (extra.count() != 1) continue;
            push(ConditionalPrecede{v, static_cast<Vertex>(extra.find_first()), base.rep}, 5);
        }
    }

    // Degree-k vertices only fit the first or last rank; pin the lowest to
    // rank 0 and, when a second exists, pin it to rank n-1. Any further ones
    // make the instance infeasible, which the checks report separately.
    VertexSet deg_k = degree_class(g, k, k);
    if (deg_k.size() == 1) {
        push(FixRank{deg_k[0], 0}, 1);
    } else if (deg_k.size() >= 2) {
        push(FixRank{deg_k[0], 0}, 1);
        push(FixRank{deg_k[1], n - 1}, 1);
    }

    // Reversal symmetry always allows ordering some pair; emit a fallback
    // only when nothing above fired.
    if (out.constraints.empty() && n >= 2) push(Precede{0, 1}, 6);

    out.conditions_used.assign(used.begin(), used.end());
    return out;
}

bool satisfies_all(const SymmetryBreaking& sym, const Order& order, int k) {
    std::vector<int> ranks = ranks_of(order);
    for (const auto& c : sym.constraints)
        if (!satisfies(c, ranks, k)) return false;
    return true;
}

bool satisfies(const SeparationConstraint& c, const std::vector<int>& ranks, int k) {
    if (c.pairwise) {
        for (std::size_t i = 0; i < c.members.size(); ++i)
            for (std::size_t j = i + 1; j < c.members.size(); ++j) {
                int gap = std::abs(ranks[static_cast<std::size_t>(c.members[i])] -
                                   ranks[static_cast<std::size_t>(c.members[j])]);
                if (gap <= k) return false;
            }
        return true;
    }
    int lo = ranks[static_cast<std::size_t>(c.members.front())];
    int hi = lo;
    for (Vertex v : c.members) {
        lo = std::min(lo, ranks[static_cast<std::size_t>(v)]);
        hi = std::max(hi, ranks[static_cast<std::size_t>(v)]);
    }
    return hi - lo >= c.min_span;
}

std::string describe(const SeparationConstraint& c, int k) {
    std::ostringstream os;
    if (c.pairwise)
        os << "pairwise" << vertex_list(c.members) << " gaps > " << k;
    else
        os << "span" << vertex_list(c.members) << " >= " << c.min_span;
    return os.str();
}

std::vector<SeparationConstraint> generate_valid_inequalities(const Instance& inst,
                                                              const std::vector<VertexSet>& sets,
                                                              ViForm form, ViRhs rhs) {
    const Graph& g = inst.graph;
    int k = inst.k;
    std::vector<SeparationConstraint> out;
    for (const auto& raw : sets) {
        VertexSet s(raw);
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (Vertex v : s)
            if (v < 0 || v >= inst.n())
                throw std::invalid_argument("valid inequalities: vertex out of range");
        if (s.size() < 2) continue;

        bool stable = is_stable_set(g, s);
        if (form == ViForm::Pairwise && !stable)
            throw std::invalid_argument("valid inequalities: pairwise form needs a stable set");
        bool stable_rhs;
        switch (rhs) {
            case ViRhs::Auto: stable_rhs = stable; break;
            case ViRhs::Stable:
                if (!stable)
                    throw std::invalid_argument(
                        "valid inequalities: stable bound needs a stable set");
                stable_rhs = true;
                break;
            case ViRhs::General:
            default: stable_rhs = false; break;
        }

        int size = static_cast<int>(s.size());
        int span = stable_rhs ? (size - 1) * (k + 1)
                              : std::max(size, max_missing_degree(g, s) + k);
        out.push_back({std::move(s), span, form == ViForm::Pairwise});
    }
    return out;
}

PreprocessReport preprocess(const Instance& inst, const PreprocessOptions& opts) {
    PreprocessReport rep;
    int n = inst.n();
    Bits full(static_cast<std::size_t>(n));
    full.set();
    rep.rank_domains.assign(static_cast<std::size_t>(n), full);

    if (opts.use_checks) {
        rep.verdict = run_checks(inst, opts.stable_cap);
        if (rep.verdict) {
            if (rep.verdict->check == Check::StableSet)
                rep.stable_sets_truncated = rep.verdict->truncated;
            return rep;
        }
    }

    if (opts.use_domain_reduction && n > 0) {
        int need = std::min(inst.k, n - 1);
        bool reducible = true;
        for (Vertex v = 0; v < n; ++v)
            if (inst.graph.degree(v) < need) {
                reducible = false;
                break;
            }
        if (!reducible) {
            // Only reachable with checks disabled; leave full domains rather
            // than reduce on a premise check 1 already refutes.
            rep.domain_reduction_skipped = true;
        } else {
            DomainReduction dr = reduce_domains(inst);
            rep.rank_domains = std::move(dr.domains);
            rep.rule1_applied = dr.rule1_applied;
            rep.rule2_applied = dr.rule2_applied;
        }
    }

    if (opts.use_symmetry) rep.symmetry = detect_symmetry_breaking(inst);

    if (opts.use_inequalities) {
        StableSetEnumeration enumr = maximal_stable_sets(inst.graph, opts.stable_cap);
        rep.stable_sets_truncated = enumr.truncated;
        std::vector<VertexSet> sets;
        for (auto& s : enumr.sets)
            if (s.size() >= 2) sets.push_back(std::move(s));
        rep.inequalities = generate_valid_inequalities(inst, sets, opts.vi_form, ViRhs::Stable);
    }
    return rep;
}

std::string PreprocessReport::text(const Instance& inst) const {
    std::ostringstream os;
    os << "n=" << inst.n() << " m=" << inst.graph.edge_count() << " k=" << inst.k << "\n";
    if (verdict) {
        os << "verdict: infeasible by " << check_name(verdict->check) << " (observed "
           << verdict->observed << ", bound " << verdict->bound.str() << ")";
        if (verdict->check == Check::SmallDegreeClasses) {
            for (const auto& t : verdict->trigger_deltas)
                if (t.certifies) {
                    os << " delta " << t.delta;
                    break;
                }
        }
        if (!verdict->witness.empty()) os << " witness " << vertex_list(verdict->witness);
        os << "\n";
        return os.str();
    }

    os << "domains:";
    bool any = false;
    for (std::size_t v = 0; v < rank_domains.size(); ++v) {
        if (rank_domains[v].all()) continue;
        os << " v" << v << " " << rank_set(rank_domains[v]) << ";";
        any = true;
    }
    if (!any) os << " full";
    if (domain_reduction_skipped) os << " (reduction skipped: degree below k)";
    os << "\n";

    os << "symmetry: " << symmetry.constraints.size() << " constraints";
    if (!symmetry.conditions_used.empty()) {
        os << " (conditions";
        for (int c : symmetry.conditions_used) os << " " << c;
        os << ")";
    }
    if (symmetry.dropped_conflicts > 0) os << ", " << symmetry.dropped_conflicts << " dropped";
    os << "\n";
    for (const auto& c : symmetry.constraints) os << "  " << describe(c, inst.k) << "\n";

    os << "inequalities: " << inequalities.size() << "\n";
    for (const auto& c : inequalities) os << "  " << describe(c, inst.k) << "\n";
    return os.str();
}

}  // namespace ctop

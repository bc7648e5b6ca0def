#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ctop/graph.hpp"
#include "ctop/instance.hpp"

namespace ctop {

// Exact rational (den > 0) for check thresholds. Comparisons against integer
// counts cross-multiply, so verdicts never touch floating point.
struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    // Exact decimal when the reduced denominator is a product of 2s and 5s
    // ("9", "2.75"), otherwise "num/den".
    std::string str() const;

    friend bool operator==(Rat a, Rat b) { return a.num * b.den == b.num * a.den; }
    friend bool operator<(std::int64_t a, Rat b) { return a * b.den < b.num; }
    friend bool operator>(std::int64_t a, Rat b) { return a * b.den > b.num; }
    friend bool operator<=(std::int64_t a, Rat b) { return !(a > b); }
    friend bool operator>=(std::int64_t a, Rat b) { return !(a < b); }
    friend bool operator==(std::int64_t a, Rat b) { return a * b.den == b.num; }
};

// A vertex of degree d can only take ranks whose window demands at most d
// distinct neighbors: min(p, k) + min(n-1-p, k) <= d. Several checks and the
// domain rules derive from this mask.
Bits feasible_ranks_for_degree(int n, int k, int degree);

// Fewest edges an n-vertex instance can have and still admit a valid order:
// half the sum of the per-rank neighbor demands. Equals k(2n-1-k)/2 whenever
// n > k, and n(n-1)/2 (complete graph) below that.
std::int64_t min_edges_bound(int n, int k);

enum class Check {
    MinDegree = 1,
    MinEdges = 2,
    SmallDegreeClasses = 3,
    LargeDegreeClasses = 4,
    StableSet = 5,
};

// Short stable identifier ("min-degree", ...) used in reports and CSV.
const char* check_name(Check c);

// One delta whose degree class V^{d[k,k+delta]} is large. Entries appear when
// the class meets the textbook threshold 2*delta+3 or outgrows the exact
// admissible-position count for this n; only the latter (certifies=true) is a
// sound infeasibility certificate, and the two agree whenever n >= k+delta+2.
struct DeltaTrigger {
    int delta = 0;
    int class_size = 0;
    int available = 0;  // admissible ranks for degree k+delta
    bool certifies = false;
};

struct CheckOutcome {
    Check check;
    bool infeasible = false;
    bool applicable = true;  // false when a structural precondition fails
    // Certificate vertices; meaning depends on the check (see each function).
    VertexSet witness;
    std::vector<DeltaTrigger> trigger_deltas;  // SmallDegreeClasses only
    Rat bound;                                 // threshold compared against
    std::int64_t observed = 0;                 // measured quantity
    bool truncated = false;  // StableSet only: enumeration hit its cap
};

// Check 1: some vertex has fewer than min(k, n-1) neighbors. Witness lists
// every such vertex ascending; observed is the minimum degree.
CheckOutcome check_min_degree(const Instance& inst);

// Check 2: edge count below min_edges_bound. Observed is m.
CheckOutcome check_min_edges(const Instance& inst);

// Check 3: for some delta in [0, k-1] the class V^{d[k,k+delta]} holds more
// vertices than there are ranks admitting degree k+delta. Witness is the
// class of the first certifying delta; trigger_deltas records every delta of
// interest (see DeltaTrigger).
CheckOutcome check_small_degree_classes(const Instance& inst);

// Check 4: with n >= 2k+1, the n-2k middle ranks each demand a vertex of
// degree >= 2k, so |V^{d[2k,n-1]}| <= n-(2k+1) is infeasible. Witness is the
// large-degree class; not applicable below 2k+1 vertices.
CheckOutcome check_large_degree_classes(const Instance& inst);

// Check 5: a stable set of size s forces pairwise rank gaps of k+1, hence
// span (s-1)(k+1) > n-1. Fires iff s >= n/(k+1) + 1 (exact rationals) for the
// largest maximal stable set found within cap; witness is that set.
CheckOutcome check_max_stable_set(const Instance& inst,
                                  std::size_t cap = kDefaultStableSetCap);

// Cheapest-first scan (1..5); returns the first check that proves
// infeasibility, nullopt when none does.
std::optional<CheckOutcome> run_checks(const Instance& inst,
                                       std::size_t cap = kDefaultStableSetCap);

struct DomainReduction {
    std::vector<Bits> domains;  // rank domain per vertex
    bool rule1_applied = false; // small-degree rule shrank some domain
    bool rule2_applied = false; // neighbor-of-degree-k rule shrank some domain
    bool empty_domain = false;  // defensive; unreachable when min degree >= k
};

// Intersects every applicable reduction into per-vertex rank domains:
// rule 1 confines each vertex to feasible_ranks_for_degree(its degree);
// rule 2 (n >= 2k+1 only) confines neighbors of every degree-exactly-k vertex
// v* to [0, k] or [n-1-k, n-1], the two windows v* can head or tail.
// Requires min degree >= min(k, n-1) (run check_min_degree first); throws
// std::invalid_argument otherwise.
DomainReduction reduce_domains(const Instance& inst);

struct FixRank {
    Vertex v;
    int rank;
};
struct Precede {
    Vertex before;
    Vertex after;
};
// |r_v - r_w| >= k+1 forces r_v < r_u.
struct ConditionalPrecede {
    Vertex v;
    Vertex w;
    Vertex u;
};
using SymConstraint = std::variant<FixRank, Precede, ConditionalPrecede>;

bool satisfies(const SymConstraint& c, const std::vector<int>& ranks, int k);
std::string describe(const SymConstraint& c, int k);

struct SymmetryBreaking {
    std::vector<SymConstraint> constraints;
    std::vector<int> conditions_used;  // ascending subset of 1..6
    int dropped_conflicts = 0;         // discarded by the consistency guard
};

// Emits rank constraints that cut symmetric orders while keeping at least one
// order of every feasible instance:
//   - twin chains: vertices with identical open (resp. closed) neighborhoods
//     are interchangeable and get an ascending Precede chain; closed-twin
//     cliques are chained three members at most;
//   - conditional extensions: a vertex v whose neighborhood matches a twin
//     group's up to one extra vertex w behaves like a group member whenever w
//     ends up more than k positions away, giving ConditionalPrecede(v, w, u)
//     against the group minimum u;
//   - degree-k pinning: a unique degree-k vertex goes to rank 0, a second one
//     to rank n-1;
//   - fallback: an arbitrary Precede on the two lowest vertices when nothing
//     else fired.
// A consistency guard drops any later constraint that would contradict
// earlier ones (rank clashes or precedence cycles). Output is deterministic.
SymmetryBreaking detect_symmetry_breaking(const Instance& inst);

bool satisfies_all(const SymmetryBreaking& sym, const Order& order, int k);

enum class ViForm { Span, Pairwise };
enum class ViRhs { Auto, General, Stable };

struct SeparationConstraint {
    VertexSet members;  // at least two vertices, ascending
    int min_span = 0;   // r_max - r_min >= min_span
    bool pairwise = false;  // enforce every pair >= k+1 apart instead
};

bool satisfies(const SeparationConstraint& c, const std::vector<int>& ranks, int k);
std::string describe(const SeparationConstraint& c, int k);

// One constraint per input set; singletons are skipped. The stable right-hand
// side (|S|-1)(k+1) requires an independent set; the general right-hand side
// max(|S|, delta_miss + k) trusts the caller that the induced subgraph admits
// no valid order. Auto picks the stable form exactly for independent sets.
// The pairwise form also requires independent sets. Violations throw
// std::invalid_argument.
std::vector<SeparationConstraint> generate_valid_inequalities(
    const Instance& inst, const std::vector<VertexSet>& sets,
    ViForm form = ViForm::Span, ViRhs rhs = ViRhs::Auto);

struct PreprocessOptions {
    bool use_checks = true;
    bool use_domain_reduction = true;
    bool use_symmetry = true;
    bool use_inequalities = false;
    ViForm vi_form = ViForm::Span;
    std::size_t stable_cap = kDefaultStableSetCap;
};

struct PreprocessReport {
    // Set iff some check certified infeasibility; everything else is then
    // left untouched (full domains, no constraints).
    std::optional<CheckOutcome> verdict;
    std::vector<Bits> rank_domains;  // always n entries, nonempty sets
    bool rule1_applied = false;
    bool rule2_applied = false;
    // Reduction precondition failed while checks were off; domains left full.
    bool domain_reduction_skipped = false;
    SymmetryBreaking symmetry;
    std::vector<SeparationConstraint> inequalities;
    bool stable_sets_truncated = false;

    std::string text(const Instance& inst) const;  // human-readable summary
};

// Runs the enabled stages in order: checks (first hit wins), domain
// reduction, symmetry breaking, then valid inequalities over every maximal
// stable set of size >= 2 (up to stable_cap).
PreprocessReport preprocess(const Instance& inst, const PreprocessOptions& opts = {});

}  // namespace ctop

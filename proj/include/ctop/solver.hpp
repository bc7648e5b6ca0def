#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ctop/instance.hpp"
#include "ctop/oracle.hpp"
#include "ctop/preprocess.hpp"

namespace ctop {

// How the constraint engine views an instance.
//   Rank: one rank variable per vertex; alldifferent plus a k+1 separation
//         for every non-adjacent pair.
//   Vertex: one vertex variable per rank; alldifferent plus an adjacency
//         support constraint for every pair of ranks at distance <= k.
//   Combined: both variable families channelled into each other.
// Reduced domains, symmetry constraints and inequalities act on rank
// variables, so the vertex model runs them only through the feasibility
// checks of the preprocessing pipeline.
enum class Model { Rank, Vertex, Combined };
const char* model_name(Model m);

enum class SolveStatus { Feasible, Infeasible, Timeout };
const char* status_name(SolveStatus s);

struct SolveOptions {
    Model model = Model::Combined;
    PreprocessOptions prep;
    double time_limit = 0.0;      // seconds; <= 0 runs unbounded
    bool hall_intervals = false;  // stronger alldifferent pruning, usually
                                  // not worth the overhead at these sizes
};

struct SearchStats {
    std::uint64_t choice_points = 0;  // value assignments tried
    std::uint64_t fails = 0;          // propagation conflicts
    double seconds = 0.0;             // wall time including preprocessing
};

// count covers the solutions found before the search stopped; it is exact
// when the search ran to completion (no truncation, no timeout). Orders are
// solutions of the compiled model: with symmetry breaking or inequalities
// enabled, symmetric orders they exclude are not produced.
struct SolveResult {
    SolveStatus status = SolveStatus::Infeasible;
    std::optional<Order> order;  // first solution found
    std::vector<Order> orders;   // all stored solutions (solve_all)
    std::uint64_t count = 0;
    bool truncated = false;  // stopped at the solution limit
    std::optional<CheckOutcome> fired_check;  // set when a check decided
    SearchStats stats;
};

// Stops at the first solution.
SolveResult solve(const Instance& inst, const SolveOptions& opts = {});

// Enumerates solutions in deterministic search order, at most limit of them.
SolveResult solve_all(const Instance& inst, std::uint64_t limit = kNoLimit,
                      const SolveOptions& opts = {});

// Counts solutions without storing them.
SolveResult count_all(const Instance& inst, const SolveOptions& opts = {});

}  // namespace ctop

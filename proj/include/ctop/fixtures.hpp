#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctop/graph.hpp"

namespace ctop {

// What the named fixture should do at a given k. pipeline_check is the
// infeasibility check (1..5) the preprocessing pipeline's cost-ordered,
// first-hit scan reports, when the verdict comes from a check at all.
struct FixtureExpectation {
    int k = 0;
    bool feasible = false;
    std::optional<std::uint64_t> order_count;
    std::optional<int> pipeline_check;
};

struct Fixture {
    std::string name;
    Graph graph;
    std::vector<FixtureExpectation> expect;
};

// Small named instances used across the tests and shipped under fixtures/ as
// .ctop files with .expect sidecars. Note fig3a, fig6 and fig9 are the same
// labeled graph; they are kept as separate entries because each carries its
// own expectations.
const std::vector<Fixture>& fixtures();
const Fixture& fixture(const std::string& name);

// Sidecar grammar, one expectation per line ('#' starts a comment):
//   k <K> <feasible|infeasible> [count <N>] [check <1-5>]
// Throws std::runtime_error on malformed input.
std::vector<FixtureExpectation> parse_expect(const std::string& text);
std::string serialize_expect(const std::vector<FixtureExpectation>& expect);

}  // namespace ctop

#pragma once

#include <cstdint>
#include <limits>

#include "ctop/instance.hpp"

namespace ctop {

// True iff order is a valid contiguous ordering of inst: every two positions
// at distance <= k hold adjacent vertices. For n <= k+1 this degenerates to
// "the graph is complete" (our reading of the short-instance boundary case).
// Throws std::invalid_argument when order is not a permutation of 0..n-1.
bool verify_order(const Instance& inst, const Order& order);

inline constexpr std::uint64_t kNoLimit = std::numeric_limits<std::uint64_t>::max();

struct OrderEnumeration {
    std::vector<Order> orders;  // lexicographic by vertex sequence
    bool truncated = false;     // stopped at limit
    std::uint64_t count = 0;    // exact iff !truncated
    bool oversize = false;      // n > 10: correct but factorial-slow
};

// Backtracking enumeration of every valid order, pruning on the last k
// positions of the prefix. Intended as ground truth on small instances.
OrderEnumeration enumerate_orders(const Instance& inst, std::uint64_t limit = kNoLimit);

// Same walk without storing orders.
std::uint64_t count_orders(const Instance& inst);

}  // namespace ctop

#include "ctop/instance.hpp"

#include <stdexcept>
#include <utility>

namespace ctop {

Instance::Instance(Graph g, int k_) : graph(std::move(g)), k(k_) {
    if (k < 1) throw std::invalid_argument("instance: k must be at least 1");
}

bool is_permutation(const Order& order, int n) {
    if (static_cast<int>(order.size()) != n) return false;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (Vertex v : order) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

std::vector<int> ranks_of(const Order& order) {
    int n = static_cast<int>(order.size());
    if (!is_permutation(order, n))
        throw std::invalid_argument("ranks_of: order is not a permutation");
    std::vector<int> ranks(order.size());
    for (int pos = 0; pos < n; ++pos) ranks[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] = pos;
    return ranks;
}

}  // namespace ctop

#include "ctop/oracle.hpp"

#include <stdexcept>

namespace ctop {

bool verify_order(const Instance& inst, const Order& order) {
    int n = inst.n();
    if (!is_permutation(order, n))
        throw std::invalid_argument("verify_order: order is not a permutation of the vertices");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n && j - i <= inst.k; ++j)
            if (!inst.graph.adjacent(order[static_cast<std::size_t>(i)],
                                     order[static_cast<std::size_t>(j)]))
                return false;
    return true;
}

namespace {

// Shared walk for enumerate/count. Vertices are tried in ascending order at
// every position, so stored orders come out lexicographic.
struct OracleWalk {
    const Instance& inst;
    std::uint64_t limit;
    bool store;

    Order prefix;
    Bits used;
    OrderEnumeration result;

    OracleWalk(const Instance& i, std::uint64_t lim, bool st)
        : inst(i), limit(lim), store(st), used(static_cast<std::size_t>(i.n())) {}

    bool extendable(Vertex v) const {
        int pos = static_cast<int>(prefix.size());
        for (int back = 1; back <= inst.k && pos - back >= 0; ++back)
            if (!inst.graph.adjacent(prefix[static_cast<std::size_t>(pos - back)], v))
                return false;
        return true;
    }

    // Returns false when the limit cut the walk short.
    bool walk() {
        int n = inst.n();
        if (static_cast<int>(prefix.size()) == n) {
            if (store) {
                if (result.orders.size() >= limit) {
                    result.truncated = true;
                    return false;
                }
                result.orders.push_back(prefix);
            }
            ++result.count;
            return true;
        }
        for (Vertex v = 0; v < n; ++v) {
            if (used.test(static_cast<std::size_t>(v)) || !extendable(v)) continue;
            used.set(static_cast<std::size_t>(v));
            prefix.push_back(v);
            bool go = walk();
            prefix.pop_back();
            used.reset(static_cast<std::size_t>(v));
            if (!go) return false;
        }
        return true;
    }
};

}  // namespace

OrderEnumeration enumerate_orders(const Instance& inst, std::uint64_t limit) {
    OracleWalk walk(inst, limit, true);
    walk.walk();
    walk.result.oversize = inst.n() > 10;
    return std::move(walk.result);
}

std::uint64_t count_orders(const Instance& inst) {
    OracleWalk walk(inst, kNoLimit, false);
    walk.walk();
    return walk.result.count;
}

}  // namespace ctop

#include "ctop/generate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace ctop {

std::uint64_t SplitMix64::next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
        std::uint64_t x = next();
        if (x < limit) return x % bound;
    }
}

std::int64_t edges_for_density(int n, double density) {
    if (n < 1) throw std::invalid_argument("edges_for_density: n must be at least 1");
    if (!(density > 0.0) || density > 1.0)
        throw std::invalid_argument("edges_for_density: density must be in (0, 1]");
    double pairs = static_cast<double>(n) * (n - 1) / 2.0;
    return std::llround(density * pairs);  // llround: halves away from zero
}

namespace {

// Pair index <-> vertex pair, lower-triangle order: {0,1}=0, {0,2}=1, {1,2}=2,
// {0,3}=3, ... i.e. index({u,v}) = v(v-1)/2 + u for u < v.
std::pair<Vertex, Vertex> pair_of_index(std::int64_t idx) {
    // v is the largest integer with v(v-1)/2 <= idx.
    auto below = [](std::int64_t v) { return v * (v - 1) / 2; };
    std::int64_t v = static_cast<std::int64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(idx))) / 2.0);
    while (below(v) > idx) --v;
    while (below(v + 1) <= idx) ++v;
    std::int64_t u = idx - below(v);
    return {static_cast<Vertex>(u), static_cast<Vertex>(v)};
}

}  // namespace

Graph gen_random(const GenSpec& spec) {
    if (spec.n < 2) throw std::invalid_argument("gen_random: n must be at least 2");
    if (spec.density.has_value() == spec.edge_count.has_value())
        throw std::invalid_argument("gen_random: set exactly one of density and edge_count");
    std::int64_t total = static_cast<std::int64_t>(spec.n) * (spec.n - 1) / 2;
    std::int64_t m = spec.density ? edges_for_density(spec.n, *spec.density) : *spec.edge_count;
    if (m < 0 || m > total)
        throw std::invalid_argument("gen_random: edge count " + std::to_string(m) +
                                    " outside [0," + std::to_string(total) + "]");

    // Partial Fisher-Yates over the C(n,2) pair indices. Only displaced slots
    // are stored, so memory is O(m) regardless of n.
    SplitMix64 rng(spec.seed);
    std::unordered_map<std::int64_t, std::int64_t> slot;
    auto value_at = [&](std::int64_t i) {
        auto it = slot.find(i);
        return it == slot.end() ? i : it->second;
    };

    Graph g(spec.n);
    for (std::int64_t i = 0; i < m; ++i) {
        std::int64_t j = i + static_cast<std::int64_t>(
                                 rng.next_below(static_cast<std::uint64_t>(total - i)));
        std::int64_t picked = value_at(j);
        slot[j] = value_at(i);
        auto [u, v] = pair_of_index(picked);
        g.add_edge(u, v);
    }
    return g;
}

Graph gen_wheel(int n) {
    if (n < 4) throw std::invalid_argument("gen_wheel: n must be at least 4");
    Graph g(n);
    for (Vertex v = 1; v < n; ++v) g.add_edge(0, v);
    for (Vertex v = 1; v + 1 < n; ++v) g.add_edge(v, v + 1);
    g.add_edge(n - 1, 1);
    return g;
}

}  // namespace ctop

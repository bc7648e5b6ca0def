#pragma once

#include <cstdint>
#include <optional>

#include "ctop/graph.hpp"

namespace ctop {

// splitmix64: a 64-bit shift/multiply generator with a single word of state.
// Chosen because it is trivial to reimplement bit-for-bit anywhere, which
// keeps generated instances stable across platforms and toolchains.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound); rejection sampling, so no modulo bias.
    std::uint64_t next_below(std::uint64_t bound);

private:
    std::uint64_t state_;
};

struct GenSpec {
    int n = 0;
    std::optional<double> density;          // in (0, 1]; converted via edges_for_density
    std::optional<std::int64_t> edge_count; // exact m; exactly one of the two must be set
    std::uint64_t seed = 0;
};

// m = round(density * n(n-1)/2), rounding halves away from zero.
std::int64_t edges_for_density(int n, double density);

// G(n, m): exactly m edges drawn uniformly without replacement from the
// C(n,2) vertex pairs, via a sparse partial Fisher-Yates shuffle of the pair
// indices. Same spec members -> identical graph, independent of platform.
// Connectivity is not enforced.
Graph gen_random(const GenSpec& spec);

// Wheel: vertex 0 is the hub, adjacent to every rim vertex; the rim 1..n-1
// forms a cycle. Requires n >= 4; has 2(n-1) edges.
Graph gen_wheel(int n);

}  // namespace ctop

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace ctop {

using Vertex = int;
using VertexSet = std::vector<Vertex>;  // ascending, no duplicates
using Bits = boost::dynamic_bitset<std::uint64_t>;

// Simple undirected graph on vertices 0..n-1: no self-loops, no parallel
// edges, isolated vertices allowed. Adjacency is kept both as a sorted edge
// list (u < v) and as one bitset per vertex.
class Graph {
public:
    explicit Graph(int n);
    Graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edges);

    int vertex_count() const { return n_; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }

    // Throws std::invalid_argument on self-loops, out-of-range endpoints or
    // duplicate edges. Either endpoint order is accepted.
    void add_edge(Vertex u, Vertex v);

    bool adjacent(Vertex u, Vertex v) const;
    int degree(Vertex v) const;

    const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
    const Bits& neighbor_bits(Vertex v) const;
    VertexSet neighbors(Vertex v) const;

    bool operator==(const Graph& other) const;

private:
    void check_vertex(Vertex v) const;

    int n_ = 0;
    std::vector<std::pair<Vertex, Vertex>> edges_;  // kept sorted
    std::vector<Bits> adj_;
};

// Vertices v with lo <= degree(v) <= hi, ascending. Empty when lo > hi.
VertexSet degree_class(const Graph& g, int lo, int hi);

// Subgraph induced by s, relabeled to 0..|s|-1. label[i] is the original
// vertex behind new vertex i.
struct InducedSubgraph {
    Graph graph;
    VertexSet label;
};
InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s);

// How many members of s (v itself excluded) are not adjacent to v.
// v must be a member of s.
int missing_degree(const Graph& g, const VertexSet& s, Vertex v);
// Largest missing_degree over the members of s. Zero for empty s.
int max_missing_degree(const Graph& g, const VertexSet& s);

bool is_clique(const Graph& g, const VertexSet& s);
bool is_stable_set(const Graph& g, const VertexSet& s);

inline constexpr std::size_t kDefaultStableSetCap = 10000;

struct StableSetEnumeration {
    std::vector<VertexSet> sets;  // each ascending; emission order reproducible
    bool truncated = false;       // hit the cap before finishing
};

// All maximal stable sets (maximal independent sets) of g, at most cap of
// them. Bron-Kerbosch with pivoting, run on the complement adjacency;
// candidates are visited in ascending vertex order, so results and their
// order are reproducible.
StableSetEnumeration maximal_stable_sets(const Graph& g,
                                         std::size_t cap = kDefaultStableSetCap);

}  // namespace ctop

#pragma once

#include <vector>

#include "ctop/graph.hpp"

namespace ctop {

// An ordering instance: the graph plus the window width k (>= 1). A valid
// order is a permutation of the vertices in which any two vertices at most k
// positions apart are adjacent.
struct Instance {
    Graph graph;
    int k = 1;

    Instance(Graph g, int k_);
    int n() const { return graph.vertex_count(); }
};

// An order is the permutation itself: order[position] = vertex.
using Order = std::vector<Vertex>;

bool is_permutation(const Order& order, int n);

// Inverse permutation: ranks[vertex] = position. Throws if not a permutation.
std::vector<int> ranks_of(const Order& order);

}  // namespace ctop

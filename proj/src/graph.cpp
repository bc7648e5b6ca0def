#include "ctop/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ctop {

namespace {

VertexSet canonical(VertexSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

}  // namespace

Graph::Graph(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("graph: vertex count must be non-negative");
    adj_.assign(static_cast<std::size_t>(n), Bits(static_cast<std::size_t>(n)));
}

Graph::Graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) : Graph(n) {
    for (const auto& [u, v] : edges) add_edge(u, v);
}

void Graph::check_vertex(Vertex v) const {
    if (v < 0 || v >= n_)
        throw std::invalid_argument("graph: vertex " + std::to_string(v) +
                                    " out of range [0," + std::to_string(n_ - 1) + "]");
}

void Graph::add_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("graph: self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (adj_[u].test(static_cast<std::size_t>(v)))
        throw std::invalid_argument("graph: duplicate edge {" + std::to_string(u) + "," +
                                    std::to_string(v) + "}");
    adj_[u].set(static_cast<std::size_t>(v));
    adj_[v].set(static_cast<std::size_t>(u));
    auto e = std::make_pair(u, v);
    edges_.insert(std::upper_bound(edges_.begin(), edges_.end(), e), e);
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    return u != v && adj_[u].test(static_cast<std::size_t>(v));
}

int Graph::degree(Vertex v) const {
    check_vertex(v);
    return static_cast<int>(adj_[v].count());
}

const Bits& Graph::neighbor_bits(Vertex v) const {
    check_vertex(v);
    return adj_[v];
}

VertexSet Graph::neighbors(Vertex v) const {
    check_vertex(v);
    VertexSet out;
    for (std::size_t u = adj_[v].find_first(); u != Bits::npos; u = adj_[v].find_next(u))
        out.push_back(static_cast<Vertex>(u));
    return out;
}

bool Graph::operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
}

VertexSet degree_class(const Graph& g, int lo, int hi) {
    VertexSet out;
    if (lo > hi) return out;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        int d = g.degree(v);
        if (d >= lo && d <= hi) out.push_back(v);
    }
    return out;
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
    VertexSet label = canonical(s);
    for (Vertex v : label)
        if (v < 0 || v >= g.vertex_count())
            throw std::invalid_argument("induced_subgraph: vertex out of range");
    Graph sub(static_cast<int>(label.size()));
    for (std::size_t i = 0; i < label.size(); ++i)
        for (std::size_t j = i + 1; j < label.size(); ++j)
            if (g.adjacent(label[i], label[j]))
                sub.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    return {std::move(sub), std::move(label)};
}

int missing_degree(const Graph& g, const VertexSet& s, Vertex v) {
    VertexSet set = canonical(s);
    if (!std::binary_search(set.begin(), set.end(), v))
        throw std::invalid_argument("missing_degree: vertex is not a member of the set");
    int miss = 0;
    for (Vertex u : set)
        if (u != v && !g.adjacent(u, v)) ++miss;
    return miss;
}

int max_missing_degree(const Graph& g, const VertexSet& s) {
    VertexSet set = canonical(s);
    int best = 0;
    for (Vertex v : set) best = std::max(best, missing_degree(g, set, v));
    return best;
}

bool is_clique(const Graph& g, const VertexSet& s) {
    VertexSet set = canonical(s);
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            if (!g.adjacent(set[i], set[j])) return false;
    return true;
}

bool is_stable_set(const Graph& g, const VertexSet& s) {
    VertexSet set = canonical(s);
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            if (g.adjacent(set[i], set[j])) return false;
    return true;
}

namespace {

// Bron-Kerbosch with pivoting over the complement adjacency. Candidates are
// scanned in ascending order both for the pivot choice and the branching, so
// the emission sequence is a pure function of the graph.
class StableSetSearch {
public:
    StableSetSearch(const Graph& g, std::size_t cap) : cap_(cap) {
        int n = g.vertex_count();
        non_adj_.reserve(static_cast<std::size_t>(n));
        for (Vertex v = 0; v < n; ++v) {
            Bits row = ~g.neighbor_bits(v);
            row.reset(static_cast<std::size_t>(v));
            non_adj_.push_back(std::move(row));
        }
        n_ = n;
    }

    StableSetEnumeration run() {
        Bits r(static_cast<std::size_t>(n_)), p(static_cast<std::size_t>(n_)),
            x(static_cast<std::size_t>(n_));
        p.set();
        expand(r, p, x);
        return {std::move(out_), truncated_};
    }

private:
    void expand(Bits& r, Bits p, Bits x) {
        if (truncated_) return;
        if (p.none() && x.none()) {
            if (out_.size() >= cap_) {
                truncated_ = true;
                return;
            }
            VertexSet set;
            for (std::size_t v = r.find_first(); v != Bits::npos; v = r.find_next(v))
                set.push_back(static_cast<Vertex>(v));
            out_.push_back(std::move(set));
            return;
        }
        std::size_t pivot = choose_pivot(p, x);
        Bits candidates = p & ~non_adj_[pivot];
        for (std::size_t v = candidates.find_first(); v != Bits::npos;
             v = candidates.find_next(v)) {
            r.set(v);
            expand(r, p & non_adj_[v], x & non_adj_[v]);
            r.reset(v);
            if (truncated_) return;
            p.reset(v);
            x.set(v);
        }
    }

    std::size_t choose_pivot(const Bits& p, const Bits& x) const {
        std::size_t best = Bits::npos;
        std::size_t best_count = 0;
        Bits both = p | x;
        for (std::size_t u = both.find_first(); u != Bits::npos; u = both.find_next(u)) {
            std::size_t c = (p & non_adj_[u]).count();
            if (best == Bits::npos || c > best_count) {
                best = u;
                best_count = c;
            }
        }
        return best;
    }

    int n_ = 0;
    std::size_t cap_;
    std::vector<Bits> non_adj_;
    std::vector<VertexSet> out_;
    bool truncated_ = false;
};

}  // namespace

StableSetEnumeration maximal_stable_sets(const Graph& g, std::size_t cap) {
    if (g.vertex_count() == 0) return {{}, false};
    return StableSetSearch(g, cap).run();
}

}  // namespace ctop

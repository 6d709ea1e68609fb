#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fpp/graph.hpp"
#include "fpp/rng.hpp"

namespace fpp {

// Multigraph plus one i.i.d. Exp(1) weight per edge, immutable once built.
// Carries a CSR adjacency for path computations; self-loops are kept in the
// edge list but left out of the adjacency since they can never shorten a
// path. Parallel edges keep independent weights.
struct WeightedGraph {
    RegularMultigraph graph;
    std::vector<double> weights;  // one per graph.edges entry

    // CSR over non-loop edges; each edge appears in both endpoint rows.
    std::vector<std::int64_t> adj_offsets;
    std::vector<Vertex> adj_vertex;
    std::vector<EdgeId> adj_edge;

    Vertex n() const { return graph.n; }
};

namespace detail {

inline void build_adjacency(WeightedGraph& wg) {
    const auto n = static_cast<std::size_t>(wg.graph.n);
    wg.adj_offsets.assign(n + 1, 0);
    for (const Edge& e : wg.graph.edges) {
        if (e.u == e.v) continue;
        ++wg.adj_offsets[static_cast<std::size_t>(e.u) + 1];
        ++wg.adj_offsets[static_cast<std::size_t>(e.v) + 1];
    }
    for (std::size_t i = 1; i <= n; ++i) wg.adj_offsets[i] += wg.adj_offsets[i - 1];
    wg.adj_vertex.resize(static_cast<std::size_t>(wg.adj_offsets[n]));
    wg.adj_edge.resize(wg.adj_vertex.size());
    std::vector<std::int64_t> cursor(wg.adj_offsets.begin(), wg.adj_offsets.end() - 1);
    for (std::size_t e = 0; e < wg.graph.edges.size(); ++e) {
        const Edge& ed = wg.graph.edges[e];
        if (ed.u == ed.v) continue;
        auto slot_u = static_cast<std::size_t>(cursor[static_cast<std::size_t>(ed.u)]++);
        wg.adj_vertex[slot_u] = ed.v;
        wg.adj_edge[slot_u] = static_cast<EdgeId>(e);
        auto slot_v = static_cast<std::size_t>(cursor[static_cast<std::size_t>(ed.v)]++);
        wg.adj_vertex[slot_v] = ed.u;
        wg.adj_edge[slot_v] = static_cast<EdgeId>(e);
    }
}

}  // namespace detail

// Draw one Exp(1) weight per edge, in edge-list order.
template <typename Rng>
WeightedGraph assign_weights(RegularMultigraph g, Rng& rng) {
    WeightedGraph wg;
    wg.graph = std::move(g);
    wg.weights.resize(wg.graph.edges.size());
    for (double& w : wg.weights) w = exp1(rng);
    detail::build_adjacency(wg);
    return wg;
}

// Total weight of a path given as a sequence of edge ids; empty path is 0.
inline double path_weight(const WeightedGraph& wg, std::span<const EdgeId> path) {
    double total = 0.0;
    for (const EdgeId e : path) {
        if (e < 0 || static_cast<std::size_t>(e) >= wg.weights.size())
            throw std::invalid_argument("path_weight: edge " + std::to_string(e) + " not in graph");
        total += wg.weights[static_cast<std::size_t>(e)];
    }
    return total;
}

}  // namespace fpp

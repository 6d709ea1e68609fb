#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "fpp/weights.hpp"

namespace fpp {

inline constexpr double kUnreachedDist = std::numeric_limits<double>::infinity();
inline constexpr Vertex kNoVertex = -1;
inline constexpr EdgeId kNoEdge = -1;

// Single-source shortest-weight tree. dist is the weighted distance, hops the
// edge count of the optimal path, parent/parent_edge the tree structure.
// Unreached vertices carry dist = +inf, hops = -1, parent = -1.
//
// Equal weighted distances are a measure-zero event for continuous weights,
// but floating point needs a rule: candidates compare by (dist, hops,
// parent id), smaller wins. Comparisons are exact, no epsilon.
struct ShortestPathTree {
    Vertex source = 0;
    std::vector<double> dist;
    std::vector<std::int32_t> hops;
    std::vector<Vertex> parent;
    std::vector<EdgeId> parent_edge;
    std::int64_t unreached = 0;
};

struct FloodStats {
    std::int32_t max_hops = 0;   // max_j |pi(source, j)|
    double weighted_ecc = 0.0;   // max_j dist_w(source, j)
    std::int64_t unreached = 0;
};

struct DiameterStats {
    std::int32_t hop_diameter = 0;
    double weighted_diameter = 0.0;
    FloodStats source0;  // flooding view of the first source, from the same run
};

struct PairStats {
    std::int32_t hops = 0;
    double dist = 0.0;
    bool reached = false;
};

// Per-trial statistics bundle with provenance.
struct FloodDiameterStats {
    std::int32_t max_hops_from_source = 0;
    std::int32_t hop_diameter = 0;
    double weighted_ecc = 0.0;
    double weighted_diameter = 0.0;
    std::int32_t pair_hops = 0;
    double pair_dist = 0.0;
    std::int64_t n = 0;
    std::int32_t d = 0;
    std::uint64_t seed = 0;
};

namespace detail {

struct HeapEntry {
    double dist;
    std::int32_t hops;
    Vertex parent;
    Vertex vertex;
};

inline bool heap_after(const HeapEntry& a, const HeapEntry& b) {
    if (a.dist != b.dist) return a.dist > b.dist;
    if (a.hops != b.hops) return a.hops > b.hops;
    if (a.parent != b.parent) return a.parent > b.parent;
    return a.vertex > b.vertex;
}

struct HeapCompare {
    bool operator()(const HeapEntry& a, const HeapEntry& b) const { return heap_after(a, b); }
};

inline bool improves(double d, std::int32_t h, Vertex p, const ShortestPathTree& t, Vertex v) {
    const auto i = static_cast<std::size_t>(v);
    if (d != t.dist[i]) return d < t.dist[i];
    if (h != t.hops[i]) return h < t.hops[i];
    return p < t.parent[i];
}

// Dijkstra with lazy deletion. settle_limit bounds the number of settled
// vertices (0 = no bound); target, when valid, stops the run at its pop.
// settled_order, when given, receives vertices in settle order.
inline ShortestPathTree dijkstra(const WeightedGraph& wg, Vertex source, Vertex target,
                                 std::int64_t settle_limit,
                                 std::vector<Vertex>* settled_order = nullptr) {
    const auto n = static_cast<std::size_t>(wg.n());
    if (source < 0 || static_cast<std::size_t>(source) >= n)
        throw std::invalid_argument("sssp: source out of range");

    ShortestPathTree t;
    t.source = source;
    t.dist.assign(n, kUnreachedDist);
    t.hops.assign(n, -1);
    t.parent.assign(n, kNoVertex);
    t.parent_edge.assign(n, kNoEdge);

    std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapCompare> heap;
    std::vector<char> settled(n, 0);
    t.dist[static_cast<std::size_t>(source)] = 0.0;
    t.hops[static_cast<std::size_t>(source)] = 0;
    heap.push({0.0, 0, kNoVertex, source});

    std::int64_t settled_count = 0;
    while (!heap.empty()) {
        const HeapEntry top = heap.top();
        heap.pop();
        const auto vi = static_cast<std::size_t>(top.vertex);
        if (settled[vi]) continue;
        if (top.dist != t.dist[vi] || top.hops != t.hops[vi] || top.parent != t.parent[vi])
            continue;  // stale
        settled[vi] = 1;
        ++settled_count;
        if (settled_order) settled_order->push_back(top.vertex);
        if (top.vertex == target) break;
        if (settle_limit > 0 && settled_count >= settle_limit) break;

        const std::int32_t next_hops = top.hops + 1;
        for (std::int64_t i = wg.adj_offsets[vi]; i < wg.adj_offsets[vi + 1]; ++i) {
            const Vertex w = wg.adj_vertex[static_cast<std::size_t>(i)];
            if (settled[static_cast<std::size_t>(w)]) continue;
            const EdgeId e = wg.adj_edge[static_cast<std::size_t>(i)];
            const double cand = top.dist + wg.weights[static_cast<std::size_t>(e)];
            if (improves(cand, next_hops, top.vertex, t, w)) {
                const auto wi = static_cast<std::size_t>(w);
                t.dist[wi] = cand;
                t.hops[wi] = next_hops;
                t.parent[wi] = top.vertex;
                t.parent_edge[wi] = e;
                heap.push({cand, next_hops, top.vertex, w});
            }
        }
    }

    if (target < 0 && settle_limit <= 0) {
        for (std::size_t i = 0; i < n; ++i)
            if (t.dist[i] == kUnreachedDist) ++t.unreached;
    }
    return t;
}

}  // namespace detail

// Exact single-source shortest weighted paths with hop tracking.
inline ShortestPathTree sssp(const WeightedGraph& wg, Vertex source) {
    return detail::dijkstra(wg, source, kNoVertex, 0);
}

inline FloodStats flood_stats(const WeightedGraph& wg, Vertex source) {
    const ShortestPathTree t = sssp(wg, source);
    FloodStats s;
    s.unreached = t.unreached;
    for (std::size_t i = 0; i < t.dist.size(); ++i) {
        if (t.dist[i] == kUnreachedDist) continue;
        if (t.hops[i] > s.max_hops) s.max_hops = t.hops[i];
        if (t.dist[i] > s.weighted_ecc) s.weighted_ecc = t.dist[i];
    }
    return s;
}

// Exact maxima over all ordered pairs; one Dijkstra per source, so cost is
// n * (n + m) log n. Refuses n above the cap to guard desk-scale runs.
inline DiameterStats hop_diameter(const WeightedGraph& wg, std::int64_t all_pairs_cap = 20000) {
    if (wg.n() > all_pairs_cap)
        throw std::invalid_argument("hop_diameter: n=" + std::to_string(wg.n()) +
                                    " above all-pairs cap " + std::to_string(all_pairs_cap) +
                                    " (raise the cap to override)");
    DiameterStats out;
    for (Vertex s = 0; s < wg.n(); ++s) {
        const FloodStats f = flood_stats(wg, s);
        if (s == 0) out.source0 = f;
        if (f.max_hops > out.hop_diameter) out.hop_diameter = f.max_hops;
        if (f.weighted_ecc > out.weighted_diameter) out.weighted_diameter = f.weighted_ecc;
    }
    return out;
}

// Hopcount and weighted distance for one pair; stops as soon as v settles.
inline PairStats pair_stats(const WeightedGraph& wg, Vertex u, Vertex v) {
    if (u == v) throw std::invalid_argument("pair_stats: endpoints must differ");
    if (v < 0 || v >= wg.n()) throw std::invalid_argument("pair_stats: target out of range");
    const ShortestPathTree t = detail::dijkstra(wg, u, v, 0);
    PairStats p;
    p.reached = t.dist[static_cast<std::size_t>(v)] != kUnreachedDist;
    if (p.reached) {
        p.hops = t.hops[static_cast<std::size_t>(v)];
        p.dist = t.dist[static_cast<std::size_t>(v)];
    }
    return p;
}

// Hopcounts of the k nearest non-source vertices, in order of weighted
// distance: entry j is |pi(source, v_{j+1})| for the (j+1)-th closest vertex.
// Returns fewer than k entries when the component runs out.
inline std::vector<std::int32_t> ball_hops(const WeightedGraph& wg, Vertex source, std::int32_t k) {
    std::vector<Vertex> order;
    order.reserve(static_cast<std::size_t>(k) + 1);
    const ShortestPathTree t = detail::dijkstra(wg, source, kNoVertex, k + 1, &order);
    std::vector<std::int32_t> hops;
    hops.reserve(static_cast<std::size_t>(k));
    for (const Vertex v : order)
        if (v != source) hops.push_back(t.hops[static_cast<std::size_t>(v)]);
    return hops;
}

// Edge ids along the tree path from the source to v, source end first.
inline std::vector<EdgeId> tree_path_edges(const ShortestPathTree& t, Vertex v) {
    std::vector<EdgeId> path;
    while (v != t.source) {
        const auto vi = static_cast<std::size_t>(v);
        if (t.parent[vi] == kNoVertex) throw std::invalid_argument("tree_path_edges: vertex unreached");
        path.push_back(t.parent_edge[vi]);
        v = t.parent[vi];
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace fpp

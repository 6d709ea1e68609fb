#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpp/rng.hpp"

namespace fpp {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;

struct Edge {
    Vertex u;
    Vertex v;
};

// d-regular multigraph realized as a perfect matching on the n*d half-edges.
// Half-edge h belongs to vertex h / d. Self-loops and parallel edges are
// allowed; edges[e] is the pair matched at the e-th smallest half-edge index.
struct RegularMultigraph {
    Vertex n = 0;
    std::int32_t d = 0;
    std::vector<std::int32_t> pairing;  // fixed-point-free involution, length n*d
    std::vector<Edge> edges;            // n*d/2 entries

    Vertex vertex_of(std::int32_t half_edge) const { return half_edge / d; }
    std::int64_t half_edge_count() const { return static_cast<std::int64_t>(n) * d; }
};

inline void check_regular_params(std::int64_t n, std::int64_t d) {
    if (n < 2) throw std::invalid_argument("regular graph: need n >= 2");
    if (d < 3) throw std::invalid_argument("regular graph: need d >= 3");
    if ((n * d) % 2 != 0)
        throw std::invalid_argument("regular graph: n*d must be even, got n=" +
                                    std::to_string(n) + " d=" + std::to_string(d));
}

// Uniform perfect matching on the half-edges: shuffle all half-edge indices
// and pair them off consecutively.
template <typename Rng>
RegularMultigraph sample_pairing(Vertex n, std::int32_t d, Rng& rng) {
    check_regular_params(n, d);
    const std::int64_t h = static_cast<std::int64_t>(n) * d;

    std::vector<std::int32_t> perm(static_cast<std::size_t>(h));
    std::iota(perm.begin(), perm.end(), 0);
    for (std::int64_t i = h - 1; i > 0; --i) {
        const auto j = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(i + 1)));
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }

    RegularMultigraph g;
    g.n = n;
    g.d = d;
    g.pairing.assign(static_cast<std::size_t>(h), -1);
    for (std::int64_t i = 0; i < h; i += 2) {
        const std::int32_t a = perm[static_cast<std::size_t>(i)];
        const std::int32_t b = perm[static_cast<std::size_t>(i + 1)];
        g.pairing[static_cast<std::size_t>(a)] = b;
        g.pairing[static_cast<std::size_t>(b)] = a;
    }
    g.edges.reserve(static_cast<std::size_t>(h / 2));
    for (std::int32_t he = 0; he < h; ++he) {
        const std::int32_t mate = g.pairing[static_cast<std::size_t>(he)];
        if (he < mate) g.edges.push_back({he / d, mate / d});
    }
    return g;
}

// No self-loop and no parallel edge.
inline bool is_simple(const RegularMultigraph& g) {
    std::vector<std::uint64_t> keys;
    keys.reserve(g.edges.size());
    for (const Edge& e : g.edges) {
        if (e.u == e.v) return false;
        const auto a = static_cast<std::uint64_t>(std::min(e.u, e.v));
        const auto b = static_cast<std::uint64_t>(std::max(e.u, e.v));
        keys.push_back((a << 32) | b);
    }
    std::sort(keys.begin(), keys.end());
    return std::adjacent_find(keys.begin(), keys.end()) == keys.end();
}

// BFS reachability from vertex 0 over the multigraph.
inline bool is_connected(const RegularMultigraph& g) {
    if (g.n <= 1) return true;
    std::vector<std::int32_t> offsets(static_cast<std::size_t>(g.n) + 1, 0);
    for (const Edge& e : g.edges) {
        ++offsets[static_cast<std::size_t>(e.u) + 1];
        if (e.u != e.v) ++offsets[static_cast<std::size_t>(e.v) + 1];
    }
    for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
    std::vector<Vertex> adj(static_cast<std::size_t>(offsets.back()));
    std::vector<std::int32_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const Edge& e : g.edges) {
        adj[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.u)]++)] = e.v;
        if (e.u != e.v) adj[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.v)]++)] = e.u;
    }
    std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    Vertex reached = 1;
    while (!stack.empty()) {
        const Vertex u = stack.back();
        stack.pop_back();
        for (std::int32_t i = offsets[static_cast<std::size_t>(u)];
             i < offsets[static_cast<std::size_t>(u) + 1]; ++i) {
            const Vertex w = adj[static_cast<std::size_t>(i)];
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == g.n;
}

// Rejection sampling ran out of attempts: acceptance probability decays like
// exp((1-d^2)/4), so large d needs the multigraph fallback instead.
struct RejectionExhausted : std::runtime_error {
    explicit RejectionExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct SimpleSample {
    RegularMultigraph graph;
    std::int32_t attempts = 0;
};

// Repeat sample_pairing until the result is simple; uniform over simple
// d-regular graphs on n vertices.
template <typename Rng>
SimpleSample sample_simple(Vertex n, std::int32_t d, Rng& rng, std::int32_t max_attempts = 1000) {
    check_regular_params(n, d);
    if (max_attempts < 1) throw std::invalid_argument("sample_simple: max_attempts must be positive");
    for (std::int32_t attempt = 1; attempt <= max_attempts; ++attempt) {
        RegularMultigraph g = sample_pairing(n, d, rng);
        if (is_simple(g)) return {std::move(g), attempt};
    }
    throw RejectionExhausted("no simple pairing within " + std::to_string(max_attempts) +
                             " attempts at n=" + std::to_string(n) + " d=" + std::to_string(d));
}

// Edge-list dump: header "n d simple_flag seed", then one "u v [weight]" line
// per edge. weights (if given) must be indexed like g.edges.
inline void dump_edge_list(std::ostream& os, const RegularMultigraph& g, std::uint64_t seed,
                           const std::vector<double>* weights = nullptr) {
    os << g.n << ' ' << g.d << ' ' << (is_simple(g) ? 1 : 0) << ' ' << seed << '\n';
    char buf[64];
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        os << g.edges[e].u << ' ' << g.edges[e].v;
        if (weights) {
            std::snprintf(buf, sizeof(buf), " %.17g", (*weights)[e]);
            os << buf;
        }
        os << '\n';
    }
}

}  // namespace fpp

#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpp/rng.hpp"

namespace fpp {

// One run of the continuous-time exploration that grows the weighted ball and
// the half-edge matching together. Entry k describes the ball holding k+1
// vertices: times[k] is the hitting time T_k, boundary[k] the open half-edge
// count S_k, excess[k] the tree excess X_k and hops[k] the generation H_k of
// the k-th added vertex (0 for the source). added[k] is the discovery index.
//
// The identity S_k = d + (d-2)k - 2 X_k holds at every step by construction:
// each step consumes one open half-edge, adds d-1 candidates, and every
// back-edge match turns two candidates-or-open entries into one excess edge.
struct ExplorationTrace {
    std::int64_t source = 0;
    std::vector<double> times;
    std::vector<std::int32_t> boundary;
    std::vector<std::int32_t> excess;
    std::vector<std::int32_t> hops;
    std::vector<std::int32_t> added;

    std::size_t steps() const { return times.empty() ? 0 : times.size() - 1; }
};

namespace detail {

// Sequentially decide the fate of one fresh half-edge of a newly revealed
// vertex: with probability |open| / (unmatched - 1) it matches a uniform open
// half-edge (a back edge, weight revealed immediately), otherwise it joins
// the open list. open entries store the generation a vertex discovered
// through them would get.
template <typename Rng>
void settle_fresh_half_edge(std::vector<std::int32_t>& open, std::int64_t& unmatched,
                            std::int32_t& excess, std::int32_t label, Rng& rng) {
    const auto l = static_cast<double>(open.size());
    if (uniform01(rng) * static_cast<double>(unmatched - 1) < l) {
        const auto victim = static_cast<std::size_t>(uniform_below(rng, open.size()));
        open[victim] = open.back();
        open.pop_back();
        unmatched -= 2;
        ++excess;
        (void)exp1(rng);  // weight of the revealed back edge
    } else {
        open.push_back(label);
    }
}

}  // namespace detail

// Explore from a single source in a fresh configuration model on n vertices
// of degree d, for at most k_max vertex additions. Stops early if the open
// list empties (the source component is exhausted).
template <typename Rng>
ExplorationTrace explore(std::int64_t n, std::int32_t d, Rng& rng, std::int64_t k_max) {
    if (n < 2 || d < 3 || (n * d) % 2 != 0)
        throw std::invalid_argument("explore: need n >= 2, d >= 3, n*d even");
    if (k_max < 0 || k_max > n - 1)
        throw std::invalid_argument("explore: need 0 <= k_max <= n-1");

    std::vector<std::int32_t> open;
    open.reserve(static_cast<std::size_t>(d) + static_cast<std::size_t>(k_max) *
                                                  static_cast<std::size_t>(d - 2));
    std::int64_t unmatched = n * d;
    std::int64_t unexplored = n - 1;
    std::int32_t excess = 0;

    ExplorationTrace trace;
    trace.times.reserve(static_cast<std::size_t>(k_max) + 1);

    // Source setup: its d half-edges either pair among themselves (self-loops,
    // counted in the excess) or join the open list with generation label 1.
    for (std::int32_t i = 0; i < d; ++i)
        detail::settle_fresh_half_edge(open, unmatched, excess, 1, rng);
    trace.times.push_back(0.0);
    trace.boundary.push_back(static_cast<std::int32_t>(open.size()));
    trace.excess.push_back(excess);
    trace.hops.push_back(0);
    trace.added.push_back(0);

    double t = 0.0;
    for (std::int64_t k = 1; k <= k_max && !open.empty() && unexplored > 0; ++k) {
        // Minimum of |open| rate-one clocks.
        t += exp1(rng) / static_cast<double>(open.size());

        const auto pick = static_cast<std::size_t>(uniform_below(rng, open.size()));
        const std::int32_t generation = open[pick];
        open[pick] = open.back();
        open.pop_back();

        // Matched to a uniform unmatched half-edge outside the open list; all
        // of those sit on unexplored vertices, so a new vertex appears.
        --unexplored;
        unmatched -= 2;
        for (std::int32_t i = 0; i < d - 1; ++i)
            detail::settle_fresh_half_edge(open, unmatched, excess, generation + 1, rng);

        trace.times.push_back(t);
        trace.boundary.push_back(static_cast<std::int32_t>(open.size()));
        trace.excess.push_back(excess);
        trace.hops.push_back(generation);
        trace.added.push_back(static_cast<std::int32_t>(k));
    }
    return trace;
}

// Sample the hopcount of the k-th discovered vertex given the boundary sizes
// of a trace (boundary[i] = S_i, boundary[0] = S_0). The first discovery is a
// neighbor of the source, and each later boundary stage adds one more hop
// with probability (d-1)/S_i, independently:
//
//   H_k  =d  1 + sum_{i=1}^{k-1} Bernoulli((d-1)/S_i),   H_0 = 0.
template <typename Rng>
std::int32_t coupled_hopcount_sample(std::int32_t d, std::int64_t k,
                                     std::span<const std::int32_t> boundary, Rng& rng) {
    if (k == 0) return 0;
    if (k < 0 || boundary.size() < static_cast<std::size_t>(k))
        throw std::invalid_argument("coupled_hopcount_sample: trace shorter than k");
    std::int32_t h = 1;
    for (std::int64_t i = 1; i < k; ++i) {
        const std::int32_t s = boundary[static_cast<std::size_t>(i)];
        if (s < d - 1)
            throw std::invalid_argument("coupled_hopcount_sample: boundary " + std::to_string(s) +
                                        " below d-1 at step " + std::to_string(i));
        if (bernoulli(rng, static_cast<double>(d - 1) / static_cast<double>(s)))
            ++h;
    }
    return h;
}

// Generation of the k-th chosen alive vertex in an increasing tree where the
// vertex dying at step i births degrees[i-1] children: a sum of independent
// Bernoulli(d_i / s_i) with s_i = d_1 + ... + d_i - (i-1).
template <typename Rng>
std::int32_t increasing_tree_generation(std::span<const std::int32_t> degrees, Rng& rng) {
    std::int32_t generation = 0;
    std::int64_t alive = 1;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        const std::int32_t deg = degrees[i];
        if (deg < 1) throw std::invalid_argument("increasing_tree_generation: degrees must be >= 1");
        alive += deg - 1;  // s_i
        if (bernoulli(rng, static_cast<double>(deg) / static_cast<double>(alive)))
            ++generation;
    }
    return generation;
}

// Trace export, one row per recorded step.
inline void write_trace_csv(std::ostream& os, const ExplorationTrace& trace,
                            bool with_header = true) {
    if (with_header) os << "k,T_k,S_k,X_k,H_k\n";
    char buf[64];
    for (std::size_t k = 0; k < trace.times.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,", k, trace.times[k]);
        os << buf << trace.boundary[k] << ',' << trace.excess[k] << ',' << trace.hops[k] << '\n';
    }
}

}  // namespace fpp

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fpp/constants.hpp"

namespace fpp {

// Finite-support offspring distribution: pmf[k] = P(Z = k).
struct ProgenyDistribution {
    std::vector<double> pmf;

    explicit ProgenyDistribution(std::vector<double> probabilities) : pmf(std::move(probabilities)) {
        if (pmf.empty()) throw std::invalid_argument("progeny: empty pmf");
        double total = 0.0;
        for (const double p : pmf) {
            if (!(p >= 0.0)) throw std::invalid_argument("progeny: negative mass");
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw std::invalid_argument("progeny: pmf must sum to 1");
    }

    double mean() const {
        double m = 0.0;
        for (std::size_t k = 1; k < pmf.size(); ++k) m += static_cast<double>(k) * pmf[k];
        return m;
    }
};

// Generating function E s^Z on [0, 1], by Horner from the top coefficient.
inline double pgf(const ProgenyDistribution& dist, double s) {
    if (!(s >= 0.0) || !(s <= 1.0)) throw std::invalid_argument("pgf: need s in [0, 1]");
    double value = 0.0;
    for (std::size_t k = dist.pmf.size(); k-- > 0;) value = value * s + dist.pmf[k];
    return value;
}

// Probability the branching process survives at least k generations:
// P_0 = 1, P_{j+1} = 1 - pgf(1 - P_j).
inline double survival_probability(const ProgenyDistribution& dist, std::int64_t k) {
    if (k < 0) throw std::invalid_argument("survival_probability: need k >= 0");
    double p = 1.0;
    for (std::int64_t j = 0; j < k; ++j) p = 1.0 - pgf(dist, 1.0 - p);
    return p;
}

// log P(Po(t) >= ell). Both branches accumulate a series of positive terms
// anchored at its largest element in log space, so there is no cancellation
// and no under- or overflow for any (ell, t).
inline double log_poisson_tail(std::int64_t ell, double t) {
    if (ell < 0) throw std::invalid_argument("poisson_tail: need ell >= 0");
    if (!(t >= 0.0)) throw std::invalid_argument("poisson_tail: need t >= 0");
    if (ell == 0) return 0.0;
    if (t == 0.0) return -std::numeric_limits<double>::infinity();

    if (static_cast<double>(ell) > t) {
        // P(Po >= ell) = pmf(ell) * (1 + t/(ell+1) + t^2/((ell+1)(ell+2)) + ...),
        // a convergent series with ratio < t/ell < 1.
        const double log_first = -t + static_cast<double>(ell) * std::log(t) -
                                 std::lgamma(static_cast<double>(ell) + 1.0);
        double series = 1.0;
        double term = 1.0;
        for (std::int64_t j = ell + 1; ; ++j) {
            term *= t / static_cast<double>(j);
            series += term;
            if (term < series * 1e-18) break;
        }
        return log_first + std::log(series);
    }

    // Here the tail is order one; evaluate the complement
    // P(Po <= ell-1) = pmf(ell-1) * (1 + (ell-1)/t + (ell-1)(ell-2)/t^2 + ...)
    // downward from its largest term, ratio < ell/t <= 1.
    const auto m = static_cast<double>(ell - 1);
    const double log_first = -t + m * std::log(t) - std::lgamma(m + 1.0);
    double series = 1.0;
    double term = 1.0;
    for (std::int64_t j = ell - 1; j > 0; --j) {
        term *= static_cast<double>(j) / t;
        series += term;
        if (term < series * 1e-18) break;
    }
    const double below = std::exp(log_first + std::log(series));
    return std::log1p(-std::min(below, std::nextafter(1.0, 0.0)));
}

// P(Po(t) >= ell); always at least exp(-t) t^ell / ell!.
inline double poisson_tail(std::int64_t ell, double t) {
    return std::exp(log_poisson_tail(ell, t));
}

// log of (d-1)^ell * P(Po(tau) >= ell) with tau = ell (1-eps) / ((d-2) alpha):
// the offspring mean of the light-path branching process, kept in log space
// because (d-1)^ell overflows doubles near ell ~ 700 already at d = 3.
inline double log_good_vertex_mean(std::int32_t d, std::int64_t ell, double alpha, double eps) {
    detail::check_degree(d);
    if (ell < 1) throw std::invalid_argument("good_vertex_mean: need ell >= 1");
    if (!(alpha > static_cast<double>(d - 1) / (d - 2)))
        throw std::invalid_argument("good_vertex_mean: need alpha > (d-1)/(d-2)");
    if (!(eps > 0.0) || eps >= 1.0)
        throw std::invalid_argument("good_vertex_mean: need eps in (0, 1)");
    const double tau = static_cast<double>(ell) * (1.0 - eps) / ((d - 2) * alpha);
    return static_cast<double>(ell) * std::log(static_cast<double>(d - 1)) +
           log_poisson_tail(ell, tau);
}

inline double good_vertex_mean(std::int32_t d, std::int64_t ell, double alpha, double eps) {
    return std::exp(log_good_vertex_mean(d, ell, alpha, eps));
}

}  // namespace fpp

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fpp {

// Threshold constants for degree d: gamma is the hopcount rate between two
// uniform vertices, alpha_star / alpha_hat the flooding and diameter hopcount
// rates, and the *_weight_const the weighted flooding / diameter rates.
struct ThresholdConstants {
    std::int32_t d = 0;
    double gamma = 0.0;             // (d-1)/(d-2)
    double alpha_star = 0.0;        // rate_function = 0
    double alpha_hat = 0.0;         // rate_function = 1
    double flood_weight_const = 0.0;  // 1/(d-2) + 1/d
    double diam_weight_const = 0.0;   // 1/(d-2) + 2/d
};

namespace detail {

inline void check_degree(std::int32_t d) {
    if (d < 3) throw std::invalid_argument("constants: need d >= 3, got " + std::to_string(d));
}

inline void check_alpha(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("constants: need alpha > 0");
}

inline void check_eps(double eps) {
    if (!(eps >= 0.0) || eps >= 1.0)
        throw std::invalid_argument("constants: need eps in [0, 1)");
}

}  // namespace detail

// rate_function(alpha) = alpha * log((d-2)/(d-1) * alpha) - alpha + 1/(d-2).
// Strictly convex on (0, inf): value -1 and slope 0 at alpha = (d-1)/(d-2),
// increasing without bound to the right of it.
inline double rate_function(double alpha, std::int32_t d) {
    detail::check_alpha(alpha);
    detail::check_degree(d);
    const double dm2 = static_cast<double>(d - 2);
    const double dm1 = static_cast<double>(d - 1);
    return alpha * std::log(dm2 / dm1 * alpha) - alpha + 1.0 / dm2;
}

inline double rate_function_prime(double alpha, std::int32_t d) {
    detail::check_alpha(alpha);
    detail::check_degree(d);
    return std::log(static_cast<double>(d - 2) / static_cast<double>(d - 1) * alpha);
}

// Tilted rate function rate_function(alpha) + alpha * (eps - log(1 - eps)).
// eps = 0 recovers rate_function exactly.
inline double rate_function_eps(double alpha, std::int32_t d, double eps) {
    detail::check_eps(eps);
    return rate_function(alpha, d) + alpha * (eps - std::log1p(-eps));
}

// Unique root of rate_function_eps(., d, eps) = level to the right of its
// minimum at (d-1)(1-eps)/(d-2). Brackets first (the function is -? at the
// minimum, grows without bound), then safeguarded Newton: a step leaving the
// bracket falls back to bisection, since the slope vanishes at the left end.
inline double solve_threshold_eps(std::int32_t d, double level, double eps) {
    detail::check_degree(d);
    detail::check_eps(eps);
    if (!(level >= 0.0)) throw std::invalid_argument("solve_threshold: need level >= 0");

    const auto value = [&](double a) { return rate_function_eps(a, d, eps) - level; };
    const double tilt = eps - std::log1p(-eps);
    const auto slope = [&](double a) { return rate_function_prime(a, d) + tilt; };

    const double arg_min = static_cast<double>(d - 1) / (d - 2) * (1.0 - eps);
    double lo = arg_min * (1.0 + 1e-9);
    if (value(lo) >= 0.0)
        throw std::invalid_argument("solve_threshold: no root above the minimum (eps too large)");
    double hi = lo * 2.0;
    while (value(hi) < 0.0) hi *= 2.0;

    double x = hi;
    for (int iter = 0; iter < 200; ++iter) {
        const double fx = value(x);
        if (fx > 0.0) hi = x; else lo = x;
        const double step = fx / slope(x);
        double next = x - step;
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        if (next == x) break;
        x = next;
        if (std::abs(value(x)) <= 1e-13 && hi - lo <= 1e-9 * x) break;
    }
    return x;
}

// level 0 gives alpha_star, level 1 alpha_hat.
inline double solve_threshold(std::int32_t d, double level) {
    return solve_threshold_eps(d, level, 0.0);
}

inline ThresholdConstants theory_constants(std::int32_t d) {
    detail::check_degree(d);
    ThresholdConstants c;
    c.d = d;
    c.gamma = static_cast<double>(d - 1) / (d - 2);
    c.alpha_star = solve_threshold(d, 0.0);
    c.alpha_hat = solve_threshold(d, 1.0);
    c.flood_weight_const = 1.0 / (d - 2) + 1.0 / d;
    c.diam_weight_const = 1.0 / (d - 2) + 2.0 / d;
    return c;
}

}  // namespace fpp

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "harris/error.hpp"
#include "harris/random.hpp"

namespace harris {

/// Parameters (a, k) of the Harris counting distribution and of the
/// parametrization schemes built on its generating function.
///
/// The schemes accept any a > 0; the counting distribution itself exists
/// only for a > 1. With a = 1/alpha and k = 1 the schemes reduce to the
/// Marshall-Olkin family.
struct HarrisParams {
    double a = 1.0;
    int k = 1;
};

namespace detail {

inline void validate_scheme(const HarrisParams& hp) {
    require_param(std::isfinite(hp.a) && hp.a > 0.0, "a", hp.a, "finite and > 0");
    require_param(hp.k >= 1, "k", hp.k, "an integer >= 1");
}

inline void validate_counting(const HarrisParams& hp) {
    validate_scheme(hp);
    require_param(hp.a > 1.0, "a", hp.a, "> 1 for the Harris counting distribution");
}

} // namespace detail

/// Generating function E[s^N] = (s^k / (a - (a-1) s^k))^(1/k), s in [0,1].
inline double harris_pgf(const HarrisParams& hp, double s) {
    detail::validate_counting(hp);
    detail::require_probability(s, "s");
    const double sk = std::pow(s, hp.k);
    return std::pow(sk / (hp.a - (hp.a - 1.0) * sk), 1.0 / hp.k);
}

/// P(N = n). The support is {1 + j k : j >= 0}; with r = 1/k,
///
///   P(N = 1 + j k) = a^-r * Gamma(r + j) / (Gamma(r) j!) * ((a-1)/a)^j,
///
/// i.e. (N - 1)/k is negative binomial with size r and success probability
/// 1/a. Evaluated in log space.
inline double harris_pmf(const HarrisParams& hp, std::int64_t n) {
    detail::validate_counting(hp);
    if (n < 1 || (n - 1) % hp.k != 0) return 0.0;
    const double j = static_cast<double>((n - 1) / hp.k);
    const double a = hp.a;
    if (hp.k == 1) return (1.0 / a) * std::pow(1.0 - 1.0 / a, j);
    const double r = 1.0 / hp.k;
    const double log_p = -r * std::log(a) + std::lgamma(r + j) - std::lgamma(r) -
                         std::lgamma(j + 1.0) + j * std::log1p(-1.0 / a);
    return std::exp(log_p);
}

/// E[N]; the derivative of the generating function at s = 1 is exactly a.
inline double harris_mean(const HarrisParams& hp) {
    detail::validate_counting(hp);
    return hp.a;
}

/// Exact sampler: N = 1 + k M with M | L ~ Poisson(L), L ~ Gamma(1/k, a - 1).
inline std::int64_t harris_draw(const HarrisParams& hp, Rng& rng) {
    detail::validate_counting(hp);
    std::gamma_distribution<double> mixing(1.0 / hp.k, hp.a - 1.0);
    const double lambda = mixing(rng);
    if (!(lambda > 0.0)) return 1;
    std::poisson_distribution<std::int64_t> count(lambda);
    return 1 + static_cast<std::int64_t>(hp.k) * count(rng);
}

} // namespace harris

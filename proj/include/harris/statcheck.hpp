#pragma once

// Statistical and analytical oracles. Nothing here depends on the transform
// or process code; the acceptance suite checks those against these.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "harris/error.hpp"
#include "harris/harris_discrete.hpp"

namespace harris::stat {

// Asymptotic 1% point of the Kolmogorov distribution.
inline constexpr double kKs1pct = 1.628;

struct KSReport {
    double statistic = 0.0;
    std::size_t n = 0;
    std::size_t m = 0; // zero for the one-sample test
    double critical_value_1pct = 0.0;
    bool pass = false;
};

struct ChiSquareReport {
    double statistic = 0.0;
    std::size_t degrees_of_freedom = 0;
    double critical_value_1pct = 0.0;
    bool pass = false;
};

namespace detail {
inline void require_nonempty(std::span<const double> s, const char* what) {
    if (s.empty()) throw harris::domain_error(what, std::string(what) + ": empty sample");
}
} // namespace detail

/// Fraction of samples <= x.
inline double empirical_cdf(std::span<const double> samples, double x) {
    detail::require_nonempty(samples, "samples");
    const auto count = std::count_if(samples.begin(), samples.end(), [x](double s) { return s <= x; });
    return static_cast<double>(count) / static_cast<double>(samples.size());
}

/// sup_x |F_n(x) - F(x)|, both one-sided gaps at every sample point.
template <typename Cdf>
KSReport ks_one_sample(std::span<const double> samples, Cdf&& cdf_eval) {
    detail::require_nonempty(samples, "samples");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf_eval(sorted[i]);
        const double di = static_cast<double>(i);
        d = std::max({d, (di + 1.0) / n - f, f - di / n});
    }
    KSReport r;
    r.statistic = d;
    r.n = sorted.size();
    r.critical_value_1pct = kKs1pct / std::sqrt(n);
    r.pass = d < r.critical_value_1pct;
    return r;
}

/// sup_x |F_n(x) - G_m(x)|.
inline KSReport ks_two_sample(std::span<const double> s1, std::span<const double> s2) {
    detail::require_nonempty(s1, "s1");
    detail::require_nonempty(s2, "s2");
    std::vector<double> a(s1.begin(), s1.end());
    std::vector<double> b(s2.begin(), s2.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double n = static_cast<double>(a.size());
    const double m = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    KSReport r;
    r.statistic = d;
    r.n = a.size();
    r.m = b.size();
    r.critical_value_1pct = kKs1pct * std::sqrt((n + m) / (n * m));
    r.pass = d < r.critical_value_1pct;
    return r;
}

/// Pearson statistic of `observed` counts against cell probabilities
/// `expected` (which should sum to one); dof = cells - 1.
inline ChiSquareReport chi_square(std::span<const std::int64_t> observed,
                                  std::span<const double> expected) {
    if (observed.size() != expected.size() || observed.size() < 2) {
        throw harris::domain_error("observed", "chi_square: need matching cell vectors of size >= 2");
    }
    double total = 0.0;
    for (auto o : observed) total += static_cast<double>(o);
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double e = total * expected[i];
        const double diff = static_cast<double>(observed[i]) - e;
        stat += diff * diff / e;
    }
    ChiSquareReport r;
    r.statistic = stat;
    r.degrees_of_freedom = observed.size() - 1;
    const boost::math::chi_squared_distribution<double> law(static_cast<double>(r.degrees_of_freedom));
    r.critical_value_1pct = boost::math::quantile(law, 0.99);
    r.pass = stat < r.critical_value_1pct;
    return r;
}

/// Mean and standard error of the mean.
inline std::pair<double, double> mean_and_stderr(std::span<const double> xs) {
    detail::require_nonempty(xs, "samples");
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t n = 0;
    for (double x : xs) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    const double var = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

/// j-th Taylor coefficient at 0 of s (a - (a-1) s^k)^(-1/k), from the
/// trapezoidal rule on the Cauchy integral over |s| = radius:
///
///   c_j ~ radius^-j / M * sum_m f(radius w^m) w^(-j m),  w = exp(2 pi i / M).
///
/// For radius < 1 the base a - (a-1) s^k keeps a positive real part on the
/// disk, so the principal power is analytic there. The aliasing error is of
/// order c_{j+M} radius^M; rounding error grows like radius^-j.
inline double pgf_coeff_oracle(const HarrisParams& hp, int j, int m_points = 2048,
                               double radius = 0.9) {
    harris::detail::require_param(std::isfinite(hp.a) && hp.a > 1.0, "a", hp.a, "> 1");
    harris::detail::require_param(hp.k >= 1, "k", hp.k, "an integer >= 1");
    harris::detail::require_domain(radius > 0.0 && radius < 1.0, "radius", radius, "in (0, 1)");
    harris::detail::require_param(m_points > j, "m_points", m_points, "> j");
    if (j < 0) return 0.0;

    using cplx = std::complex<double>;
    const double two_pi = 2.0 * std::acos(-1.0);
    const cplx a(hp.a, 0.0);
    const cplx a1(hp.a - 1.0, 0.0);
    const double power = -1.0 / hp.k;
    double acc = 0.0;
    for (int m = 0; m < m_points; ++m) {
        const double angle = two_pi * m / m_points;
        const cplx s = std::polar(radius, angle);
        const cplx f = s * std::pow(a - a1 * std::pow(s, hp.k), power);
        const long long idx = (static_cast<long long>(j) * m) % m_points;
        const cplx twiddle = std::polar(1.0, -two_pi * static_cast<double>(idx) / m_points);
        acc += (f * twiddle).real();
    }
    return acc / m_points * std::pow(radius, -j);
}

} // namespace harris::stat

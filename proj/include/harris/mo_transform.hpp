#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>

#include "harris/dist_core.hpp"
#include "harris/error.hpp"
#include "harris/harris_discrete.hpp"
#include "harris/random.hpp"

namespace harris {

// ---------------------------------------------------------------------------
// Scalar kernels
// ---------------------------------------------------------------------------

/// u -> (u^k / (a - (a-1) u^k))^(1/k). Maps [0,1] onto [0,1] monotonically
/// for every a > 0. Applied to a d.f it is the Harris-maximum scheme, applied
/// to a survival function the Harris-minimum scheme.
inline double harris_kernel(double u, double a, int k) {
    const double uk = std::pow(u, k);
    return std::pow(uk / (a - (a - 1.0) * uk), 1.0 / k);
}

/// Inverse of harris_kernel in its first argument.
inline double harris_kernel_inverse(double v, double a, int k) {
    const double vk = std::pow(v, k);
    return std::pow(a * vk / (1.0 + (a - 1.0) * vk), 1.0 / k);
}

// ---------------------------------------------------------------------------
// Point evaluators
// ---------------------------------------------------------------------------

/// Marshall-Olkin survival function alpha S / (1 - (1 - alpha) S).
template <ContinuousDistribution D>
double mo_sf(const D& base, double alpha, double x) {
    detail::require_param(std::isfinite(alpha) && alpha > 0.0, "alpha", alpha, "finite and > 0");
    const double s = base.sf(x);
    return alpha * s / (1.0 - (1.0 - alpha) * s);
}

/// Harris-minimum survival function: the kernel applied to the base s.f.
template <ContinuousDistribution D>
double harris_min_sf(const D& base, const HarrisParams& hp, double x) {
    detail::validate_scheme(hp);
    return harris_kernel(base.sf(x), hp.a, hp.k);
}

/// Harris-maximum distribution function: the kernel applied to the base d.f.
/// For a > 1 this is the law of the maximum of a Harris(a,k) number of
/// independent base variates.
template <ContinuousDistribution D>
double harris_max_cdf(const D& base, const HarrisParams& hp, double x) {
    detail::validate_scheme(hp);
    return harris_kernel(base.cdf(x), hp.a, hp.k);
}

template <ContinuousDistribution D>
double harris_max_quantile(const D& base, const HarrisParams& hp, double q) {
    detail::validate_scheme(hp);
    detail::require_probability(q);
    return base.quantile(harris_kernel_inverse(q, hp.a, hp.k));
}

// ---------------------------------------------------------------------------
// Transformed distributions
// ---------------------------------------------------------------------------

enum class Scheme { MarshallOlkin, HarrisMin, HarrisMax };

/// A base distribution pushed through one of the parametrization schemes.
/// Base may itself be a Transformed<...>, so schemes compose.
template <ContinuousDistribution Base>
class Transformed {
public:
    Transformed(Base base, Scheme scheme, HarrisParams hp)
        : base_(std::move(base)), scheme_(scheme), hp_(hp) {
        detail::validate_scheme(hp_);
        if (scheme_ == Scheme::MarshallOlkin) {
            detail::require_param(hp_.k == 1, "k", hp_.k, "1 for the Marshall-Olkin scheme");
        }
    }

    const Base& base() const noexcept { return base_; }
    Scheme scheme() const noexcept { return scheme_; }
    const HarrisParams& params() const noexcept { return hp_; }
    // Marshall-Olkin alpha; the reciprocal of a.
    double alpha() const noexcept { return 1.0 / hp_.a; }

    Interval support() const { return base_.support(); }

    double cdf(double x) const {
        switch (scheme_) {
        case Scheme::HarrisMax: return harris_kernel(base_.cdf(x), hp_.a, hp_.k);
        case Scheme::HarrisMin: return 1.0 - harris_kernel(base_.sf(x), hp_.a, hp_.k);
        case Scheme::MarshallOlkin: return 1.0 - mo_sf(base_, alpha(), x);
        }
        return 0.0;
    }

    double sf(double x) const {
        switch (scheme_) {
        case Scheme::HarrisMax: return 1.0 - harris_kernel(base_.cdf(x), hp_.a, hp_.k);
        case Scheme::HarrisMin: return harris_kernel(base_.sf(x), hp_.a, hp_.k);
        case Scheme::MarshallOlkin: return mo_sf(base_, alpha(), x);
        }
        return 1.0;
    }

    double quantile(double q) const {
        detail::require_probability(q);
        switch (scheme_) {
        case Scheme::HarrisMax:
            return base_.quantile(harris_kernel_inverse(q, hp_.a, hp_.k));
        case Scheme::HarrisMin:
            return base_.quantile(1.0 - harris_kernel_inverse(1.0 - q, hp_.a, hp_.k));
        case Scheme::MarshallOlkin: {
            const double v = 1.0 - q;
            const double s = v / (alpha() + (1.0 - alpha()) * v);
            return base_.quantile(1.0 - s);
        }
        }
        return base_.support().lower;
    }

private:
    Base base_;
    Scheme scheme_;
    HarrisParams hp_;
};

using TransformedDistribution = Transformed<AnyDistribution>;

template <ContinuousDistribution D>
Transformed<D> mo_transform(D base, double alpha) {
    detail::require_param(std::isfinite(alpha) && alpha > 0.0, "alpha", alpha, "finite and > 0");
    return {std::move(base), Scheme::MarshallOlkin, HarrisParams{1.0 / alpha, 1}};
}

template <ContinuousDistribution D>
Transformed<D> harris_min_transform(D base, const HarrisParams& hp) {
    return {std::move(base), Scheme::HarrisMin, hp};
}

template <ContinuousDistribution D>
Transformed<D> harris_max_transform(D base, const HarrisParams& hp) {
    return {std::move(base), Scheme::HarrisMax, hp};
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

/// Inverse-transform draw from the Harris-maximum law; valid for every a > 0.
template <ContinuousDistribution D>
double harris_max_draw_quantile(const D& base, const HarrisParams& hp, Rng& rng) {
    return harris_max_quantile(base, hp, uniform_open(rng));
}

/// For a > 1, the maximum of N ~ Harris(a,k) independent base draws. For
/// a <= 1 the law is still a d.f but has no random-maximum representation,
/// so the draw falls back to inversion.
template <ContinuousDistribution D>
double harris_max_draw(const D& base, const HarrisParams& hp, Rng& rng) {
    detail::validate_scheme(hp);
    if (hp.a <= 1.0) return harris_max_draw_quantile(base, hp, rng);
    const std::int64_t n = harris_draw(hp, rng);
    double m = -kInf;
    for (std::int64_t i = 0; i < n; ++i) m = std::max(m, draw_one(base, rng));
    return m;
}

// ---------------------------------------------------------------------------
// psi construction
// ---------------------------------------------------------------------------

/// psi(x) = scale * x^-theta * (1 + epsilon * sin(2 pi ln x / ln c)), x > 0.
///
/// Non-negative and non-increasing for admissible parameters; 1/(1+psi) is
/// then a d.f on (0, inf). The sine factor is periodic in ln x with period
/// ln c, which is what makes the semi-stable functional equation hold.
class PsiFunction {
public:
    PsiFunction(double theta, double epsilon, double c_scale, double scale = 1.0)
        : theta_(theta), epsilon_(epsilon), c_(c_scale), scale_(scale) {
        detail::require_param(std::isfinite(theta) && theta > 0.0, "theta", theta,
                              "finite and > 0");
        detail::require_param(epsilon >= 0.0 && epsilon < 1.0, "epsilon", epsilon, "in [0, 1)");
        detail::require_param(std::isfinite(c_scale) && c_scale > 1.0, "c", c_scale,
                              "finite and > 1");
        detail::require_param(std::isfinite(scale) && scale > 0.0, "psi_scale", scale,
                              "finite and > 0");
        if (epsilon_ > 0.0 && !monotone_over_one_period()) {
            throw parameter_error("epsilon", "invalid parameter epsilon = " +
                                                 detail::fmt_value(epsilon_) +
                                                 ": psi is not non-increasing (theta = " +
                                                 detail::fmt_value(theta_) + ", c = " +
                                                 detail::fmt_value(c_) + ")");
        }
    }

    double theta() const noexcept { return theta_; }
    double epsilon() const noexcept { return epsilon_; }
    double c_scale() const noexcept { return c_; }
    double scale() const noexcept { return scale_; }
    Interval domain() const noexcept { return {0.0, kInf}; }

    double operator()(double x) const {
        detail::require_domain(x > 0.0, "x", x, "> 0");
        if (x == kInf) return 0.0;
        const double power = scale_ * std::pow(x, -theta_);
        return epsilon_ == 0.0 ? power : power * periodic_factor(std::log(x));
    }

    /// The x with psi(x) = y, for y in [0, inf].
    double inverse(double y) const {
        detail::require_domain(y >= 0.0, "y", y, ">= 0");
        if (y == 0.0) return kInf;
        if (y == kInf) return 0.0;
        const double guess = -std::log(y / scale_) / theta_;
        if (epsilon_ == 0.0) return std::exp(guess);
        // psi is within a factor (1 +- epsilon) of the pure power, which
        // brackets ln x. Newton on log psi(e^L) - log y, falling back to
        // bisection whenever a step leaves the bracket.
        double lo = guess + std::log1p(-epsilon_) / theta_;
        double hi = guess + std::log1p(epsilon_) / theta_;
        const double target = std::log(y);
        const double omega = 2.0 * std::numbers::pi / std::log(c_);
        double lx = guess;
        for (int i = 0; i < 100; ++i) {
            const double phase = omega * lx;
            const double factor = 1.0 + epsilon_ * std::sin(phase);
            const double g = std::log(scale_) - theta_ * lx + std::log(factor) - target;
            if (g > 0.0) lo = lx; else hi = lx;
            const double slope = -theta_ + epsilon_ * omega * std::cos(phase) / factor;
            double next = slope < 0.0 ? lx - g / slope : 0.5 * (lo + hi);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            const bool done = std::abs(next - lx) <= 1e-15 * std::max(1.0, std::abs(lx));
            lx = next;
            if (done || hi - lo <= 1e-15 * std::max(1.0, std::abs(hi))) break;
        }
        return std::exp(lx);
    }

    /// Replace scale by scale * factor.
    PsiFunction scaled(double factor) const {
        return PsiFunction(theta_, epsilon_, c_, scale_ * factor);
    }

private:
    double periodic_factor(double lx) const {
        if (epsilon_ == 0.0) return 1.0;
        double phase = lx / std::log(c_);
        phase -= std::floor(phase);
        return 1.0 + epsilon_ * std::sin(2.0 * std::numbers::pi * phase);
    }

    // psi(x) x^theta is log-periodic, so one period decides monotonicity.
    bool monotone_over_one_period() const {
        constexpr int kGrid = 10000;
        const double period = std::log(c_);
        double prev = kInf;
        for (int i = 0; i <= kGrid; ++i) {
            const double lx = period * static_cast<double>(i) / kGrid;
            const double v = -theta_ * lx + std::log(periodic_factor(lx));
            if (v > prev) return false;
            prev = v;
        }
        return true;
    }

    double theta_;
    double epsilon_;
    double c_;
    double scale_;
};

/// Pure power psi(x) = scale * x^-theta.
inline PsiFunction power_psi(double theta, double scale = 1.0) {
    return PsiFunction(theta, 0.0, std::numbers::e, scale);
}

/// psi with psi(x) = a psi(c x), the generator of Harris-max-semi-stable
/// laws. Requires c > 1 so that theta = ln a / ln c is positive; with c < 1
/// no non-increasing, non-degenerate solution exists.
inline PsiFunction make_semistable_psi(double a, double c, double epsilon) {
    detail::require_param(std::isfinite(a) && a > 1.0, "a", a, "finite and > 1");
    detail::require_param(std::isfinite(c) && c > 0.0 && c != 1.0, "c", c, "finite, > 0 and != 1");
    detail::require_param(epsilon >= 0.0 && epsilon < 1.0, "epsilon", epsilon, "in [0, 1)");
    const double theta = std::log(a) / std::log(c);
    if (!(theta > 0.0)) {
        throw parameter_error(
            "c", "invalid parameter c = " + detail::fmt_value(c) +
                     ": psi(x) = a psi(c x) with a > 1 has a non-increasing, non-degenerate "
                     "solution only for c > 1 (theta = ln a / ln c = " +
                     detail::fmt_value(theta) + " <= 0)");
    }
    return PsiFunction(theta, epsilon, c);
}

/// (1 / (1 + a psi(x)))^(1/k).
template <typename Psi>
double psi_cdf(const Psi& psi, const HarrisParams& hp, double x) {
    detail::validate_scheme(hp);
    const double v = psi(x);
    if (v == kInf) return 0.0;
    return std::pow(1.0 / (1.0 + hp.a * v), 1.0 / hp.k);
}

/// psi(x) = -log F(x) on {F > 0}.
template <ContinuousDistribution D>
class LogCdfPsi {
public:
    explicit LogCdfPsi(D base) : base_(std::move(base)) {}
    Interval domain() const { return base_.support(); }
    double operator()(double x) const {
        const double f = base_.cdf(x);
        return f > 0.0 ? -std::log(f) : kInf;
    }
    double inverse(double y) const { return base_.quantile(std::exp(-y)); }

private:
    D base_;
};

/// psi(x) = S(x) / F(x); 1/(1+psi) recovers F.
template <ContinuousDistribution D>
class OddsPsi {
public:
    explicit OddsPsi(D base) : base_(std::move(base)) {}
    Interval domain() const { return base_.support(); }
    double operator()(double x) const {
        const double f = base_.cdf(x);
        return f > 0.0 ? base_.sf(x) / f : kInf;
    }
    double inverse(double y) const { return base_.quantile(1.0 / (1.0 + y)); }

private:
    D base_;
};

/// The d.f psi_cdf(psi, hp, .) as a distribution object.
template <typename Psi>
class PsiDistribution {
public:
    PsiDistribution(Psi psi, HarrisParams hp) : psi_(std::move(psi)), hp_(hp) {
        detail::validate_scheme(hp_);
    }

    const Psi& psi() const noexcept { return psi_; }
    const HarrisParams& params() const noexcept { return hp_; }
    Interval support() const { return psi_.domain(); }

    double cdf(double x) const {
        const auto [lo, hi] = psi_.domain();
        if (x <= lo) return 0.0;
        if (x >= hi) return 1.0;
        return psi_cdf(psi_, hp_, x);
    }

    double sf(double x) const { return 1.0 - cdf(x); }

    double quantile(double q) const {
        detail::require_probability(q);
        const auto [lo, hi] = psi_.domain();
        if (q == 0.0) return lo;
        if (q == 1.0) return hi;
        // (1 + a psi)^(-1/k) = q  <=>  psi = (q^-k - 1) / a
        const double y = std::expm1(-hp_.k * std::log(q)) / hp_.a;
        return psi_.inverse(y);
    }

private:
    Psi psi_;
    HarrisParams hp_;
};

} // namespace harris

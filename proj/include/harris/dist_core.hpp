#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <memory>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "harris/error.hpp"
#include "harris/random.hpp"

namespace harris {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
    double lower = -kInf;
    double upper = kInf;
};

// Anything with a distribution function, its complement and an inverse.
// All transforms and simulators are written against this.
template <typename D>
concept ContinuousDistribution = requires(const D& d, double x) {
    { d.cdf(x) } -> std::convertible_to<double>;
    { d.sf(x) } -> std::convertible_to<double>;
    { d.quantile(x) } -> std::convertible_to<double>;
    { d.support() } -> std::convertible_to<Interval>;
};

enum class Family { Exponential, Weibull, Pareto, Frechet, Uniform };

constexpr std::string_view to_string(Family f) noexcept {
    switch (f) {
    case Family::Exponential: return "exponential";
    case Family::Weibull: return "weibull";
    case Family::Pareto: return "pareto";
    case Family::Frechet: return "frechet";
    case Family::Uniform: return "uniform";
    }
    return "unknown";
}

/// A member of one of five closed-form continuous families.
///
/// Parameters, by family:
///   Exponential  rate
///   Weibull      shape, scale
///   Pareto       shape, minimum
///   Frechet      shape, scale
///   Uniform      lower, upper
///
/// Use the named factories below; they validate the parameters.
class BaseDistribution {
public:
    Family family() const noexcept { return family_; }
    double first() const noexcept { return p1_; }
    double second() const noexcept { return p2_; }

    Interval support() const noexcept {
        switch (family_) {
        case Family::Pareto: return {p2_, kInf};
        case Family::Uniform: return {p1_, p2_};
        default: return {0.0, kInf};
        }
    }

    double cdf(double x) const noexcept {
        if (std::isnan(x)) return x;
        switch (family_) {
        case Family::Exponential:
            return x <= 0.0 ? 0.0 : -std::expm1(-p1_ * x);
        case Family::Weibull:
            return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x / p2_, p1_));
        case Family::Pareto:
            return x <= p2_ ? 0.0 : -std::expm1(p1_ * std::log(p2_ / x));
        case Family::Frechet:
            return x <= 0.0 ? 0.0 : std::exp(-std::pow(x / p2_, -p1_));
        case Family::Uniform:
            if (x <= p1_) return 0.0;
            if (x >= p2_) return 1.0;
            return (x - p1_) / (p2_ - p1_);
        }
        return 0.0;
    }

    double sf(double x) const noexcept {
        if (std::isnan(x)) return x;
        switch (family_) {
        case Family::Exponential:
            return x <= 0.0 ? 1.0 : std::exp(-p1_ * x);
        case Family::Weibull:
            return x <= 0.0 ? 1.0 : std::exp(-std::pow(x / p2_, p1_));
        case Family::Pareto:
            return x <= p2_ ? 1.0 : std::exp(p1_ * std::log(p2_ / x));
        case Family::Frechet:
            return x <= 0.0 ? 1.0 : -std::expm1(-std::pow(x / p2_, -p1_));
        case Family::Uniform:
            if (x <= p1_) return 1.0;
            if (x >= p2_) return 0.0;
            return (p2_ - x) / (p2_ - p1_);
        }
        return 1.0;
    }

    // Smallest x with cdf(x) >= q.
    double quantile(double q) const {
        detail::require_probability(q);
        const auto [lo, hi] = support();
        if (q == 0.0) return lo;
        if (q == 1.0) return hi;
        switch (family_) {
        case Family::Exponential:
            return -std::log1p(-q) / p1_;
        case Family::Weibull:
            return p2_ * std::pow(-std::log1p(-q), 1.0 / p1_);
        case Family::Pareto:
            return p2_ * std::exp(-std::log1p(-q) / p1_);
        case Family::Frechet:
            return p2_ * std::pow(-std::log(q), -1.0 / p1_);
        case Family::Uniform:
            return p1_ + q * (p2_ - p1_);
        }
        return lo;
    }

    friend BaseDistribution exponential(double rate);
    friend BaseDistribution weibull(double shape, double scale);
    friend BaseDistribution pareto(double shape, double minimum);
    friend BaseDistribution frechet(double shape, double scale);
    friend BaseDistribution uniform(double lower, double upper);

private:
    BaseDistribution(Family f, double p1, double p2) noexcept : family_(f), p1_(p1), p2_(p2) {}

    Family family_;
    double p1_;
    double p2_;
};

namespace detail {
inline bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }
} // namespace detail

inline BaseDistribution exponential(double rate) {
    detail::require_param(detail::positive_finite(rate), "rate", rate, "finite and > 0");
    return {Family::Exponential, rate, 0.0};
}

inline BaseDistribution weibull(double shape, double scale) {
    detail::require_param(detail::positive_finite(shape), "shape", shape, "finite and > 0");
    detail::require_param(detail::positive_finite(scale), "scale", scale, "finite and > 0");
    return {Family::Weibull, shape, scale};
}

inline BaseDistribution pareto(double shape, double minimum) {
    detail::require_param(detail::positive_finite(shape), "shape", shape, "finite and > 0");
    detail::require_param(detail::positive_finite(minimum), "minimum", minimum, "finite and > 0");
    return {Family::Pareto, shape, minimum};
}

inline BaseDistribution frechet(double shape, double scale) {
    detail::require_param(detail::positive_finite(shape), "shape", shape, "finite and > 0");
    detail::require_param(detail::positive_finite(scale), "scale", scale, "finite and > 0");
    return {Family::Frechet, shape, scale};
}

inline BaseDistribution uniform(double lower, double upper) {
    detail::require_param(std::isfinite(lower), "lower", lower, "finite");
    detail::require_param(std::isfinite(upper) && upper > lower, "upper", upper,
                          "finite and > lower");
    return {Family::Uniform, lower, upper};
}

template <ContinuousDistribution D>
double eval_cdf(const D& dist, double x) {
    return dist.cdf(x);
}

template <ContinuousDistribution D>
double eval_quantile(const D& dist, double q) {
    return dist.quantile(q);
}

// Inverse-transform variates; consumes exactly n uniforms from rng.
template <ContinuousDistribution D>
std::vector<double> draw(const D& dist, Rng& rng, std::size_t n) {
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(dist.quantile(uniform_open(rng)));
    return out;
}

template <ContinuousDistribution D>
double draw_one(const D& dist, Rng& rng) {
    return dist.quantile(uniform_open(rng));
}

/// Type-erased ContinuousDistribution. Copies share the (immutable) model.
class AnyDistribution {
public:
    template <ContinuousDistribution D>
        requires(!std::same_as<std::remove_cvref_t<D>, AnyDistribution>)
    AnyDistribution(D dist) // NOLINT(google-explicit-constructor)
        : self_(std::make_shared<Model<D>>(std::move(dist))) {}

    double cdf(double x) const { return self_->cdf(x); }
    double sf(double x) const { return self_->sf(x); }
    double quantile(double q) const { return self_->quantile(q); }
    Interval support() const { return self_->support(); }

private:
    struct Concept {
        virtual ~Concept() = default;
        virtual double cdf(double) const = 0;
        virtual double sf(double) const = 0;
        virtual double quantile(double) const = 0;
        virtual Interval support() const = 0;
    };

    template <typename D>
    struct Model final : Concept {
        explicit Model(D d) : dist(std::move(d)) {}
        double cdf(double x) const override { return dist.cdf(x); }
        double sf(double x) const override { return dist.sf(x); }
        double quantile(double q) const override { return dist.quantile(q); }
        Interval support() const override { return dist.support(); }
        D dist;
    };

    std::shared_ptr<const Concept> self_;
};

} // namespace harris

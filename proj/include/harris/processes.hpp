#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <thread>
#include <utility>
#include <vector>

#include "harris/dist_core.hpp"
#include "harris/error.hpp"
#include "harris/mo_transform.hpp"
#include "harris/random.hpp"

namespace harris {

/// One simulated trajectory. `times` holds step indices for the AR schemes
/// and grid times for the extremal process; `clock` is the gamma time T(t)
/// (extremal process only, empty otherwise).
struct SamplePath {
    std::uint64_t path_id = 0;
    std::uint64_t master_seed = 0;
    std::uint64_t seed = 0;
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> clock;
};

/// Configuration of the max-AR(1) recursions on S_n, the maximum of the k
/// coordinates Y_{1,n}, ..., Y_{k,n}.
///
/// `component` is the law of the Y_{i,0}. `innovation` is the law of the
/// eps_{i,n}; when absent it equals `component`. With c_scale absent the
/// reset scheme runs, with c_scale present the scaled scheme.
struct ARConfig {
    double p = 0.5;
    int k = 1;
    std::optional<double> c_scale;
    std::size_t horizon = 1;
    std::size_t n_paths = 1;
    AnyDistribution component = exponential(1.0);
    std::optional<AnyDistribution> innovation;
};

namespace detail {

inline void validate(const ARConfig& cfg) {
    require_param(cfg.p > 0.0 && cfg.p <= 1.0, "p", cfg.p, "in (0, 1]");
    require_param(cfg.k >= 1, "k", cfg.k, "an integer >= 1");
    require_param(cfg.horizon >= 1, "horizon", static_cast<double>(cfg.horizon), ">= 1");
    require_param(cfg.n_paths >= 1, "n_paths", static_cast<double>(cfg.n_paths), ">= 1");
    if (cfg.c_scale) {
        require_param(std::isfinite(*cfg.c_scale) && *cfg.c_scale > 0.0, "c", *cfg.c_scale,
                      "finite and > 0");
    }
}

// Runs body(i) for i in [0, n) on up to `threads` workers. Each index is
// handled by exactly one worker, so results depend only on i.
template <typename Body>
void for_each_path(std::size_t n, unsigned threads, Body&& body) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        const std::size_t begin = n * w / threads;
        const std::size_t end = n * (w + 1) / threads;
        workers.emplace_back([&body, begin, end] {
            for (std::size_t i = begin; i < end; ++i) body(i);
        });
    }
}

template <ContinuousDistribution D>
double max_of_draws(const D& dist, int k, Rng& rng) {
    double m = -kInf;
    for (int i = 0; i < k; ++i) m = std::max(m, draw_one(dist, rng));
    return m;
}

inline std::vector<SamplePath> simulate_ar(const ARConfig& cfg, std::uint64_t master_seed,
                                           unsigned threads) {
    validate(cfg);
    const AnyDistribution& innovation = cfg.innovation ? *cfg.innovation : cfg.component;
    const double inv_c = cfg.c_scale ? 1.0 / *cfg.c_scale : 1.0;
    std::vector<SamplePath> paths(cfg.n_paths);
    for_each_path(cfg.n_paths, threads, [&](std::size_t i) {
        SamplePath& path = paths[i];
        path.path_id = i;
        path.master_seed = master_seed;
        path.seed = path_seed(master_seed, i);
        path.times.resize(cfg.horizon + 1);
        path.values.resize(cfg.horizon + 1);
        Rng rng = make_rng(path.seed);

        double s = max_of_draws(cfg.component, cfg.k, rng);
        path.times[0] = 0.0;
        path.values[0] = s;
        for (std::size_t n = 1; n <= cfg.horizon; ++n) {
            const bool keep_branch = uniform_open(rng) < cfg.p;
            if (cfg.c_scale) {
                s *= inv_c;
                if (!keep_branch) s = std::max(s, max_of_draws(innovation, cfg.k, rng));
            } else {
                const double e = max_of_draws(innovation, cfg.k, rng);
                s = keep_branch ? e : std::max(s, e);
            }
            path.times[n] = static_cast<double>(n);
            path.values[n] = s;
        }
    });
    return paths;
}

} // namespace detail

/// Reset scheme: with probability p, S_n = E_n, otherwise
/// S_n = max(S_{n-1}, E_n), where E_n is the maximum of k innovations.
/// Stationary when the component law is the Harris(1/p, k)-maximum of the
/// innovation law. Path i uses the stream seeded by path_seed(master_seed, i).
inline std::vector<SamplePath> simulate_ar1(const ARConfig& cfg, std::uint64_t master_seed,
                                            unsigned threads = 1) {
    if (cfg.c_scale) {
        throw parameter_error("c", "simulate_ar1: c_scale must be absent (use simulate_ar1_scaled)");
    }
    return detail::simulate_ar(cfg, master_seed, threads);
}

/// Scaled scheme: with probability p, S_n = S_{n-1} / c, otherwise
/// S_n = max(S_{n-1} / c, E_n). Innovations default to the component law.
inline std::vector<SamplePath> simulate_ar1_scaled(const ARConfig& cfg,
                                                   std::uint64_t master_seed,
                                                   unsigned threads = 1) {
    if (!cfg.c_scale) {
        throw parameter_error("c", "simulate_ar1_scaled: c_scale is required");
    }
    return detail::simulate_ar(cfg, master_seed, threads);
}

/// Innovation law under which `component` is stationary for the reset
/// scheme with probability p: the Harris(p, k) transform, whose
/// Harris(1/p, k)-maximum is `component` again.
template <ContinuousDistribution D>
Transformed<D> stationary_innovation(D component, double p, int k) {
    detail::require_param(p > 0.0 && p <= 1.0, "p", p, "in (0, 1]");
    return harris_max_transform(std::move(component), HarrisParams{p, k});
}

/// Values of every path at step/grid index `index`.
inline std::vector<double> marginal_at(const std::vector<SamplePath>& paths, std::size_t index) {
    std::vector<double> out;
    out.reserve(paths.size());
    for (const auto& p : paths) out.push_back(p.values.at(index));
    return out;
}

inline std::vector<double> clock_at(const std::vector<SamplePath>& paths, std::size_t index) {
    std::vector<double> out;
    out.reserve(paths.size());
    for (const auto& p : paths) out.push_back(p.clock.at(index));
    return out;
}

// ---------------------------------------------------------------------------
// Gamma-compounded extremal process
// ---------------------------------------------------------------------------

/// Exponent xi of a homogeneous extremal process with d.f exp(-t xi(x)).
/// xi is non-increasing on (bottom, inf) with xi -> 0 at infinity.
class ExponentFunction {
public:
    using Fn = std::function<double(double)>;

    // General xi; its inverse is found by bisection.
    ExponentFunction(Fn xi, double bottom) : xi_(std::move(xi)), bottom_(bottom) {
        detail::require_param(std::isfinite(bottom), "lambda", bottom, "finite");
    }

    ExponentFunction(Fn xi, Fn inverse, double bottom)
        : xi_(std::move(xi)), inverse_(std::move(inverse)), bottom_(bottom) {
        detail::require_param(std::isfinite(bottom), "lambda", bottom, "finite");
    }

    double bottom() const noexcept { return bottom_; }
    bool has_closed_form_inverse() const noexcept { return static_cast<bool>(inverse_); }

    double operator()(double x) const { return x <= bottom_ ? kInf : xi_(x); }

    /// x with xi(x) = y; y = inf maps to the bottom, y = 0 to infinity.
    double inverse(double y) const {
        if (y == kInf) return bottom_;
        if (y <= 0.0) return kInf;
        if (inverse_) return inverse_(y);
        return bisect(y);
    }

    double bisect(double y) const {
        double lo = bottom_;
        double width = 1.0;
        double hi = bottom_ + width;
        while (xi_(hi) > y) {
            lo = hi;
            width *= 2.0;
            hi = bottom_ + width;
            if (!std::isfinite(hi)) return kInf;
        }
        while (hi - lo > 1e-10 * std::max(1.0, std::abs(hi))) {
            const double mid = 0.5 * (lo + hi);
            if (xi_(mid) > y) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
    }

private:
    Fn xi_;
    Fn inverse_;
    double bottom_;
};

/// xi(x) = scale * x^-theta on (0, inf).
inline ExponentFunction power_exponent(double theta, double scale = 1.0) {
    detail::require_param(std::isfinite(theta) && theta > 0.0, "theta", theta, "finite and > 0");
    detail::require_param(std::isfinite(scale) && scale > 0.0, "xi_scale", scale, "finite and > 0");
    return ExponentFunction([=](double x) { return scale * std::pow(x, -theta); },
                            [=](double y) { return std::pow(y / scale, -1.0 / theta); }, 0.0);
}

/// xi = -log F for a base d.f F; exp(-xi) recovers F.
template <ContinuousDistribution D>
ExponentFunction exponent_from(D base) {
    const double bottom = base.support().lower;
    return ExponentFunction(
        [base](double x) {
            const double f = base.cdf(x);
            return f > 0.0 ? -std::log(f) : kInf;
        },
        [base](double y) { return base.quantile(std::exp(-y)); }, bottom);
}

/// Extremal process Y with d.f exp(-t xi) run on the clock of an
/// independent gamma process T with E[exp(-s T(t))] = (1 + alpha s)^(-beta t).
struct EPConfig {
    ExponentFunction xi = power_exponent(1.0);
    double alpha = 1.0;
    double beta = 1.0;
    std::vector<double> time_grid{1.0};
    std::size_t n_paths = 1;
};

namespace detail {

inline void validate(const EPConfig& cfg) {
    require_param(std::isfinite(cfg.alpha) && cfg.alpha > 0.0, "alpha", cfg.alpha, "finite and > 0");
    require_param(std::isfinite(cfg.beta) && cfg.beta > 0.0, "beta", cfg.beta, "finite and > 0");
    require_param(!cfg.time_grid.empty(), "times", 0.0, "non-empty");
    double prev = -1.0;
    for (double t : cfg.time_grid) {
        require_param(std::isfinite(t) && t >= 0.0 && t > prev, "times", t,
                      "finite, >= 0 and strictly increasing");
        prev = t;
    }
    require_param(cfg.n_paths >= 1, "n_paths", static_cast<double>(cfg.n_paths), ">= 1");
}

} // namespace detail

/// (1 / (1 + alpha xi(x)))^(beta t); zero at or below the bottom.
inline double ep_marginal_cdf(const EPConfig& cfg, double t, double x) {
    detail::require_domain(t >= 0.0, "t", t, ">= 0");
    if (x <= cfg.xi.bottom()) return 0.0;
    if (t == 0.0) return 1.0;
    return std::pow(1.0 + cfg.alpha * cfg.xi(x), -cfg.beta * t);
}

/// Max-increment over a cell in which the clock advanced by dT: its d.f is
/// exp(-dT xi(x)). dT = 0 leaves the process at the bottom.
inline double draw_max_increment(const ExponentFunction& xi, double dT, Rng& rng) {
    const double e = standard_exponential(rng);
    if (!(dT > 0.0)) return xi.bottom();
    return xi.inverse(e / dT);
}

/// Paths of X(t) = Y(T(t)) observed on cfg.time_grid. Every path is
/// non-decreasing and starts from the bottom.
inline std::vector<SamplePath> simulate_gamma_ep(const EPConfig& cfg, std::uint64_t master_seed,
                                                 unsigned threads = 1) {
    detail::validate(cfg);
    const std::size_t m = cfg.time_grid.size();
    std::vector<SamplePath> paths(cfg.n_paths);
    detail::for_each_path(cfg.n_paths, threads, [&](std::size_t i) {
        SamplePath& path = paths[i];
        path.path_id = i;
        path.master_seed = master_seed;
        path.seed = path_seed(master_seed, i);
        path.times = cfg.time_grid;
        path.values.resize(m);
        path.clock.resize(m);
        Rng rng = make_rng(path.seed);

        double clock = 0.0;
        double x = cfg.xi.bottom();
        double prev_t = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double shape = cfg.beta * (cfg.time_grid[j] - prev_t);
            double dT = 0.0;
            if (shape > 0.0) {
                std::gamma_distribution<double> increment(shape, cfg.alpha);
                dT = increment(rng);
            }
            clock += dT;
            x = std::max(x, draw_max_increment(cfg.xi, dT, rng));
            path.clock[j] = clock;
            path.values[j] = x;
            prev_t = cfg.time_grid[j];
        }
    });
    return paths;
}

} // namespace harris

// Sudden-death detection, separability preservation checks and parameter
// sweeps over (time, temperature, dissipation).
#ifndef GAUSSCORR_ANALYSIS_HPP
#define GAUSSCORR_ANALYSIS_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "gausscorr/core.hpp"
#include "gausscorr/dynamics.hpp"
#include "gausscorr/measures.hpp"

namespace gausscorr {

enum class Spacing { Linear, Log };

/// Sampled times on [t_min, t_max].
///
/// Log spacing needs a positive lower end; with t_min = 0 the grid is t = 0
/// followed by n - 1 log-spaced points on [log_floor * t_max, t_max].
struct TimeGrid {
    double t_min = 0.0;
    double t_max = 1.0;
    int n_points = 2;
    Spacing spacing = Spacing::Linear;
    double log_floor = 1e-5;

    void validate() const {
        detail::require_non_negative(t_min, "t_min");
        detail::require_finite(t_max, "t_max");
        if (n_points < 1) {
            throw std::invalid_argument("time grid needs at least one point");
        }
        if (n_points == 1 ? t_max != t_min : !(t_max > t_min)) {
            throw std::invalid_argument("time grid needs t_max > t_min (or t_max == t_min for one point)");
        }
        if (spacing == Spacing::Log && !(log_floor > 0.0 && log_floor < 1.0)) {
            throw std::invalid_argument("log_floor must lie in (0, 1)");
        }
    }

    std::vector<double> points() const {
        validate();
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(n_points));
        if (n_points == 1) {
            out.push_back(t_min);
            return out;
        }
        if (spacing == Spacing::Linear) {
            for (int i = 0; i < n_points; ++i) {
                out.push_back(i + 1 == n_points ? t_max : t_min + (t_max - t_min) * i / (n_points - 1));
            }
            return out;
        }
        int log_points = n_points;
        double lo = t_min;
        if (t_min == 0.0) {
            out.push_back(0.0);
            --log_points;
            lo = log_floor * t_max;
        }
        const double a = std::log(lo);
        const double b = std::log(t_max);
        for (int i = 0; i < log_points; ++i) {
            if (log_points == 1) {
                out.push_back(t_max);
            } else {
                out.push_back(i + 1 == log_points ? t_max : std::exp(a + (b - a) * i / (log_points - 1)));
            }
        }
        return out;
    }
};

struct SweepSpec {
    SystemParams sys;
    std::vector<double> temperatures;
    std::vector<double> lambdas;
    SqueezedThermalSpec initial;
    TimeGrid time;

    void validate() const {
        if (temperatures.empty() || lambdas.empty()) {
            throw std::invalid_argument("temperature and lambda grids must be non-empty");
        }
        for (double temperature : temperatures) {
            detail::require_non_negative(temperature, "temperature");
        }
        for (double lambda : lambdas) {
            detail::require_positive(lambda, "lambda");
        }
        time.validate();
    }

    std::size_t point_count() const {
        return temperatures.size() * lambdas.size() * static_cast<std::size_t>(time.n_points);
    }
};

struct SweepRow {
    double t = 0.0;
    double temperature = 0.0;
    double lambda = 0.0;
    /// Absent when a measure could not be evaluated; see error.
    std::optional<CorrelationReport<double>> report;
    std::string error;
};

struct SweepMetadata {
    std::string code_version;
    std::string scalar;
    unsigned threads = 1;
};

/// Rows are ordered temperature-major, then lambda, then time.
struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;
    SweepMetadata metadata;

    const SweepRow& at(std::size_t temperature_index, std::size_t lambda_index, std::size_t time_index) const {
        const std::size_t nt = static_cast<std::size_t>(spec.time.n_points);
        return rows.at((temperature_index * spec.lambdas.size() + lambda_index) * nt + time_index);
    }
};

inline constexpr const char* kCodeVersion = "1.0.0";

template <typename Scalar>
struct ScalarName {
    static constexpr const char* value = "custom";
};
template <>
struct ScalarName<double> {
    static constexpr const char* value = "double";
};

/// Evaluates the evolved state and every measure at each grid point. Points
/// are independent and are spread over `threads` workers; row order depends
/// only on the grid. Per-point failures are recorded in the row.
template <typename Scalar = double>
SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 1) {
    spec.validate();
    const std::vector<double> times = spec.time.points();
    const auto sigma0 = squeezed_thermal_covariance<Scalar>(spec.initial);

    std::vector<Evolver<Scalar>> evolvers;
    evolvers.reserve(spec.temperatures.size() * spec.lambdas.size());
    for (double temperature : spec.temperatures) {
        for (double lambda : spec.lambdas) {
            evolvers.emplace_back(spec.sys, BathParams(lambda, temperature));
        }
    }

    SweepResult result{spec, std::vector<SweepRow>(spec.point_count()),
                       {kCodeVersion, ScalarName<Scalar>::value, std::max(1u, threads)}};
    const std::size_t nt = times.size();

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < result.rows.size(); i = next++) {
            const auto& evolver = evolvers[i / nt];
            SweepRow& row = result.rows[i];
            row.t = times[i % nt];
            row.temperature = evolver.bath().temperature();
            row.lambda = evolver.bath().lambda();
            try {
                const Scalar t(row.t);
                row.report = correlation_report(evolver(sigma0, t), t).template cast<double>();
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(result.rows.size())));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
    }
    return result;
}

struct SuddenDeath {
    /// First time at which the logarithmic negativity vanishes, if any.
    std::optional<double> time;
    /// Later intervals on which entanglement is present again.
    std::vector<std::pair<double, double>> revivals;
    std::size_t samples = 0;
};

inline constexpr double kDeathTimeResolution = 1e-8;
inline constexpr std::size_t kDeathScanSamples = 1000;

namespace detail {

/// Shrinks [lo, hi] (pred(lo) != pred(hi)) to width <= resolution and returns
/// the end on which pred equals pred(hi).
template <typename Pred>
double bisect_boundary(Pred&& pred, double lo, double hi, double resolution) {
    const bool hi_value = pred(hi);
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (pred(mid) == hi_value) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

}  // namespace detail

/// Locates entanglement sudden death on (0, t_max].
///
/// The trajectory is sampled uniformly at max(1000, 2 t_max max(w)/pi + 1)
/// points (so each oscillation half-period holds at least two samples); the
/// first entangled -> separable transition is refined by bisection to 1e-8.
/// Any later re-entries into the entangled region are reported as revivals.
template <typename Scalar = double>
SuddenDeath sudden_death_time(const CovarianceMatrix<Scalar>& sigma0, const SystemParams& sys,
                              const BathParams& bath, double t_max) {
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        throw std::invalid_argument("sudden_death_time requires finite t_max > 0");
    }
    if (!(log_negativity(sigma0) > Scalar(0))) {
        throw std::invalid_argument("sudden_death_time requires an entangled initial state");
    }
    const Evolver<Scalar> evolver(sys, bath);
    auto entangled = [&](double t) { return log_negativity(evolver(sigma0, Scalar(t))) > Scalar(0); };

    const double max_omega = std::max(sys.omega1(), sys.omega2());
    const auto oscillation_samples = static_cast<std::size_t>(std::ceil(2.0 * t_max * max_omega / std::numbers::pi)) + 1;
    const std::size_t samples = std::max(kDeathScanSamples, oscillation_samples);

    SuddenDeath out;
    out.samples = samples;
    double prev_t = 0.0;
    bool prev = true;
    double revival_start = 0.0;
    for (std::size_t k = 1; k <= samples; ++k) {
        const double t = k == samples ? t_max : t_max * static_cast<double>(k) / static_cast<double>(samples);
        const bool now = entangled(t);
        if (prev && !now) {
            const double boundary = detail::bisect_boundary(entangled, prev_t, t, kDeathTimeResolution);
            if (!out.time) {
                out.time = boundary;
            } else {
                out.revivals.emplace_back(revival_start, boundary);
            }
        } else if (!prev && now) {
            revival_start = detail::bisect_boundary(entangled, prev_t, t, kDeathTimeResolution);
        }
        prev = now;
        prev_t = t;
    }
    if (out.time && prev) {
        out.revivals.emplace_back(revival_start, t_max);
    }
    return out;
}

/// True iff the logarithmic negativity stays zero at every sampled time.
/// Requires a separable initial state.
template <typename Scalar = double>
bool no_entanglement_generation_check(const CovarianceMatrix<Scalar>& sigma0, const SystemParams& sys,
                                      const BathParams& bath, std::span<const double> times) {
    if (log_negativity(sigma0) != Scalar(0)) {
        throw std::invalid_argument("no_entanglement_generation_check requires a separable initial state");
    }
    const Evolver<Scalar> evolver(sys, bath);
    return std::all_of(times.begin(), times.end(), [&](double t) {
        return log_negativity(evolver(sigma0, Scalar(t))) == Scalar(0);
    });
}

}  // namespace gausscorr

#endif  // GAUSSCORR_ANALYSIS_HPP

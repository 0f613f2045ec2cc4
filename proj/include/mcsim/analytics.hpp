#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mcsim {

/// RX counts on the observation grid t_k = k * t_ob, k = 1..n.
struct ObservationSeries {
    std::vector<double> times;
    std::vector<double> rx;
};

struct AggregateSeries {
    std::vector<double> times;
    std::vector<double> mean;
    std::vector<double> standard_error;
    std::size_t realizations = 0;
};

struct AnalyticParams {
    double molecules = 1e4;
    double rx_area = 1.0;
    double diffusion = 1.0;
    double distance = 7.0;
};

/// Expected RX count for an impulsive point release in an unbounded plane:
/// N A / (4 pi D t) * exp(-d^2 / (4 D t)). Zero at t = 0.
double expected_rx_impulse(const AnalyticParams& params, double t);

/// Time of the curve's maximum, d^2 / (4 D).
double expected_rx_peak_time(const AnalyticParams& params);

/// Pointwise mean and standard error (sample deviation / sqrt(n)).
AggregateSeries aggregate(std::span<const ObservationSeries> series);

struct CurveError {
    double max_abs = 0.0;
    double mean_abs = 0.0;
    double mean_stderr = 0.0; // average standard error over the window (0 if unknown)
    std::size_t points = 0;
};

/// Deviation of a mean series from the analytic curve over grid points with
/// t in [t_begin, t_end].
CurveError curve_error(const AggregateSeries& mean, const AnalyticParams& params, double t_begin, double t_end);

} // namespace mcsim

#include "mcsim/analytics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mcsim {

double expected_rx_impulse(const AnalyticParams& params, double t)
{
    if (t < 0.0)
        throw std::domain_error("expected_rx_impulse: negative time");
    if (t == 0.0)
        return 0.0;
    const double spread = 4.0 * params.diffusion * t;
    return params.molecules * params.rx_area / (std::numbers::pi * spread) *
           std::exp(-params.distance * params.distance / spread);
}

double expected_rx_peak_time(const AnalyticParams& params)
{
    return params.distance * params.distance / (4.0 * params.diffusion);
}

AggregateSeries aggregate(std::span<const ObservationSeries> series)
{
    if (series.empty())
        throw std::invalid_argument("aggregate: no series");
    const auto& grid = series.front().times;
    for (const auto& s : series)
        if (s.times != grid || s.rx.size() != grid.size())
            throw std::invalid_argument("aggregate: series do not share one observation grid");

    AggregateSeries out;
    out.times = grid;
    out.realizations = series.size();
    const double n = static_cast<double>(series.size());
    out.mean.resize(grid.size());
    out.standard_error.resize(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        // Integer-valued counts make these sums exact, hence order independent.
        double sum = 0.0;
        double sum_sq = 0.0;
        for (const auto& s : series) {
            sum += s.rx[k];
            sum_sq += s.rx[k] * s.rx[k];
        }
        const double mean = sum / n;
        out.mean[k] = mean;
        if (series.size() > 1) {
            const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
            out.standard_error[k] = std::sqrt(var / n);
        } else {
            out.standard_error[k] = 0.0;
        }
    }
    return out;
}

CurveError curve_error(const AggregateSeries& mean, const AnalyticParams& params, double t_begin, double t_end)
{
    CurveError err;
    double abs_sum = 0.0;
    double se_sum = 0.0;
    for (std::size_t k = 0; k < mean.times.size(); ++k) {
        const double t = mean.times[k];
        if (t < t_begin || t > t_end)
            continue;
        const double dev = std::abs(mean.mean[k] - expected_rx_impulse(params, t));
        err.max_abs = std::max(err.max_abs, dev);
        abs_sum += dev;
        if (k < mean.standard_error.size())
            se_sum += mean.standard_error[k];
        ++err.points;
    }
    if (err.points == 0)
        throw std::invalid_argument("curve_error: window contains no grid points");
    err.mean_abs = abs_sum / static_cast<double>(err.points);
    err.mean_stderr = se_sum / static_cast<double>(err.points);
    return err;
}

} // namespace mcsim

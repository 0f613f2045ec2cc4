#include "mcsim/analytics.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace mcsim;

namespace {

// Golden-section search for the maximum of f on [a, b].
template <class F>
double argmax(F f, double a, double b)
{
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    for (int i = 0; i < 200; ++i) {
        if (f(c) > f(d))
            b = d;
        else
            a = c;
        c = b - g * (b - a);
        d = a + g * (b - a);
    }
    return 0.5 * (a + b);
}

ObservationSeries series(std::vector<double> rx)
{
    ObservationSeries s;
    for (std::size_t i = 0; i < rx.size(); ++i)
        s.times.push_back(static_cast<double>(i + 1));
    s.rx = std::move(rx);
    return s;
}

} // namespace

TEST_CASE("point-source curve")
{
    const AnalyticParams p;
    const double t = 12.25;
    const double direct = 1e4 / (4.0 * std::numbers::pi * t) * std::exp(-49.0 / (4.0 * t));
    CHECK(expected_rx_impulse(p, t) == doctest::Approx(direct).epsilon(1e-14));
    CHECK(expected_rx_impulse(p, t) == doctest::Approx(23.90).epsilon(0.0005));

    const double peak = argmax([&](double x) { return expected_rx_impulse(p, x); }, 1.0, 100.0);
    CHECK(peak == doctest::Approx(12.25).epsilon(1e-6));
    CHECK(expected_rx_peak_time(p) == 12.25);

    CHECK(expected_rx_impulse(p, 0.0) == 0.0);
    CHECK(expected_rx_impulse({0.0, 1.0, 1.0, 7.0}, 5.0) == 0.0);
    CHECK_THROWS_AS(expected_rx_impulse(p, -1.0), std::domain_error);

    // Rises up to the peak, then falls.
    double prev = 0.0;
    for (double x = 0.25; x <= 100.0; x += 0.25) {
        const double v = expected_rx_impulse(p, x);
        if (x <= 12.25)
            CHECK(v > prev);
        else
            CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("curve scales with its parameters")
{
    const AnalyticParams base;
    AnalyticParams twice = base;
    twice.molecules = 2e4;
    twice.rx_area = 0.5;
    CHECK(expected_rx_impulse(twice, 7.0) == doctest::Approx(expected_rx_impulse(base, 7.0)));
    AnalyticParams fast = base;
    fast.diffusion = 2.0;
    CHECK(expected_rx_peak_time(fast) == 6.125);
    // D t is the only time scale: doubling D halves time and doubles density.
    CHECK(expected_rx_impulse(fast, 3.0) == doctest::Approx(expected_rx_impulse(base, 6.0)));
}

TEST_CASE("aggregate")
{
    const std::vector<ObservationSeries> two{series({4.0, 1.0}), series({6.0, 1.0})};
    const auto a = aggregate(two);
    CHECK(a.realizations == 2);
    CHECK(a.times == std::vector<double>{1.0, 2.0});
    CHECK(a.mean[0] == 5.0);
    CHECK(a.standard_error[0] == doctest::Approx(1.0));
    CHECK(a.mean[1] == 1.0);
    CHECK(a.standard_error[1] == 0.0);

    const std::vector<ObservationSeries> one{series({3.0, 2.0})};
    const auto b = aggregate(one);
    CHECK(b.mean == std::vector<double>{3.0, 2.0});
    CHECK(b.standard_error == std::vector<double>{0.0, 0.0});

    const std::vector<ObservationSeries> abc{series({1.0}), series({2.0}), series({9.0})};
    const std::vector<ObservationSeries> cab{series({9.0}), series({1.0}), series({2.0})};
    CHECK(aggregate(abc).mean[0] == doctest::Approx(aggregate(cab).mean[0]));
    CHECK(aggregate(abc).standard_error[0] == doctest::Approx(aggregate(cab).standard_error[0]));
    // Sample deviation of {1, 2, 9} is sqrt(19), divided by sqrt(3).
    CHECK(aggregate(abc).standard_error[0] == doctest::Approx(std::sqrt(19.0 / 3.0)));

    CHECK_THROWS_AS(aggregate(std::vector<ObservationSeries>{}), std::invalid_argument);
    const std::vector<ObservationSeries> ragged{series({1.0, 2.0}), series({1.0})};
    CHECK_THROWS_AS(aggregate(ragged), std::invalid_argument);
}

TEST_CASE("curve error")
{
    const AnalyticParams p;
    AggregateSeries exact;
    for (int k = 1; k <= 100; ++k) {
        exact.times.push_back(k);
        exact.mean.push_back(expected_rx_impulse(p, k));
        exact.standard_error.push_back(0.5);
    }
    exact.realizations = 10;
    const auto zero = curve_error(exact, p, 5.0, 75.0);
    CHECK(zero.points == 71);
    CHECK(zero.max_abs == 0.0);
    CHECK(zero.mean_abs == 0.0);
    CHECK(zero.mean_stderr == 0.5);

    auto shifted = exact;
    for (auto& v : shifted.mean)
        v += 1.0;
    const auto one = curve_error(shifted, p, 5.0, 75.0);
    CHECK(one.max_abs == doctest::Approx(1.0));
    CHECK(one.mean_abs == doctest::Approx(1.0));

    CHECK_THROWS_AS(curve_error(exact, p, 200.0, 300.0), std::invalid_argument);
}

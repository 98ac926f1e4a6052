#include "murphyes/variance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace murphyes {

namespace {

double mean_of(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

} // namespace

double newey_west_variance(std::span<const double> x, std::size_t lag) {
    if (x.size() < lag + 2) {
        throw std::invalid_argument("newey_west_variance: series must have at least lag + 2 elements");
    }
    const std::size_t n = x.size();
    const double m = mean_of(x);
    auto autocov = [&](std::size_t j) {
        double s = 0.0;
        for (std::size_t t = j; t < n; ++t) s += (x[t] - m) * (x[t - j] - m);
        return s / static_cast<double>(n);
    };
    double lrv = autocov(0);
    for (std::size_t j = 1; j <= lag; ++j) {
        const double w = 1.0 - static_cast<double>(j) / static_cast<double>(lag + 1);
        lrv += 2.0 * w * autocov(j);
    }
    return std::max(lrv, 0.0);
}

double mean_standard_error(std::span<const double> x, const VarianceEstimator& est) {
    const std::size_t n = x.size();
    if (n < 2) return 0.0;
    if (est.kind == VarianceEstimator::Kind::NeweyWest) {
        return std::sqrt(newey_west_variance(x, est.lag) / static_cast<double>(n));
    }
    const double m = mean_of(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

} // namespace murphyes

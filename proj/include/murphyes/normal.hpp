#pragma once

#include <cmath>
#include <numbers>

namespace murphyes {

// Standard normal CDF through the complementary error function. erfc keeps
// full relative precision in the lower tail, so the absolute error is at the
// level of double rounding (well below 1e-12) across the real line.
inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

/// Upper tail 1 - Phi(x), computed without cancellation.
inline double normal_sf(double x) {
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

inline double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

/// Inverse of normal_cdf. Throws std::invalid_argument outside (0, 1).
double normal_quantile(double p);

} // namespace murphyes

#pragma once

#include <cstddef>
#include <span>

namespace murphyes {

struct VarianceEstimator {
    enum class Kind { IID, NeweyWest };

    Kind kind = Kind::IID;
    std::size_t lag = 3; // used only by NeweyWest

    static VarianceEstimator iid() { return {Kind::IID, 0}; }
    static VarianceEstimator newey_west(std::size_t lag = 3) { return {Kind::NeweyWest, lag}; }
};

/// Bartlett-kernel long-run variance
///   gamma_0 + 2 * sum_{j=1..lag} (1 - j/(lag+1)) gamma_j,
/// with autocovariances gamma_j = (1/T) sum_{t>j} (x_t - mean)(x_{t-j} - mean).
///
/// Scaling: the result estimates Var(sqrt(T) * mean(x)), so the standard
/// error of the mean is sqrt(result / T). With lag = 0 this is the biased
/// (divide-by-T) sample variance. Negative estimates are floored at 0.
///
/// Requires x.size() >= lag + 2.
double newey_west_variance(std::span<const double> x, std::size_t lag);

/// Standard error of the sample mean of x under the chosen estimator.
/// IID uses the (T-1)-denominator sample standard deviation over sqrt(T).
/// Returns 0 when x has fewer than two elements.
double mean_standard_error(std::span<const double> x, const VarianceEstimator& est);

} // namespace murphyes

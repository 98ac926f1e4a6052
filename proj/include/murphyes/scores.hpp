#pragma once

#include "murphyes/common.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace murphyes {

/// A joint (VaR, ES) forecast. Construction enforces var >= es.
class JointForecast {
public:
    JointForecast(double var, double es);

    double var() const noexcept { return var_; }
    double es() const noexcept { return es_; }

    friend bool operator==(const JointForecast&, const JointForecast&) = default;

private:
    double var_;
    double es_;
};

/// Which family of elementary scores a threshold grid indexes.
enum class GridKind { V1, V2 };

/// Strictly increasing, nonempty set of thresholds.
class ThresholdGrid {
public:
    ThresholdGrid(std::vector<double> values, GridKind kind);

    const std::vector<double>& values() const noexcept { return values_; }
    GridKind kind() const noexcept { return kind_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

    friend bool operator==(const ThresholdGrid&, const ThresholdGrid&) = default;

private:
    std::vector<double> values_;
    GridKind kind_;
};

/// Function triple (G1, G2, antiderivative of G2) defining a member of the
/// Consistent scoring family for (VaR, ES). G1, G2 must be nondecreasing and G2 >= 0.
struct FzSpec {
    std::function<double(double)> g1;
    std::function<double(double)> g2;
    std::function<double(double)> g2_antiderivative;
};

struct MixturePoint {
    double v;
    double weight;
};

/// Discretized mixing measure: point masses at thresholds v.
struct DiscreteMixture {
    std::vector<MixturePoint> points;
};

/// Quantile-type elementary score
///   (1{y <= x1} - alpha) * (1{v1 <= x1} - 1{v1 <= y}).
double elementary_score_v1(double x1, double y, double v1, Level alpha);

/// ES-type elementary score
///   1{v2 <= x2} * ((1/alpha) 1{y <= x1} (x1 - y) - (x1 - v2)) + 1{v2 <= y} (y - v2).
///
/// When both indicators are active the v2 terms cancel and the score is
/// evaluated as (1/alpha) * (1{y <= x1} - alpha) * (x1 - y), which is its
/// value in the limit v2 -> -infinity.
double elementary_score_v2(const JointForecast& fc, double y, double v2, Level alpha);

/// General consistent score for (VaR, ES) built from an FzSpec, normalized so
/// that the score of the forecast (y, y) at outcome y is zero.
double fz_score(const JointForecast& fc, double y, Level alpha, const FzSpec& spec);

/// Weighted sum of elementary scores. h2 weights S_v2 and h1 (when given)
/// weights S_v1. Negative weights are rejected.
double mixture_score(const JointForecast& fc, double y, Level alpha, const DiscreteMixture& h2);
double mixture_score(const JointForecast& fc, double y, Level alpha, const DiscreteMixture& h2,
                     const DiscreteMixture& h1);

/// FzSpec whose G2 is the right-continuous step function of the mixture
/// (G2(x) = sum of weights at v <= x), with its piecewise-linear antiderivative
/// and G1 = 0. fz_score with this spec equals mixture_score with h2 = mixture.
FzSpec fz_spec_from_mixture(const DiscreteMixture& mixture);

/// n equally spaced thresholds spanning [min, max] of the union of forecast
/// components and realizations, both endpoints included.
ThresholdGrid build_threshold_grid(std::span<const double> forecast_values,
                                   std::span<const double> realizations, std::size_t n, GridKind kind);

/// Convenience overload collecting var and es of every forecast in each list.
ThresholdGrid build_threshold_grid(std::span<const std::vector<JointForecast>> forecast_sets,
                                   std::span<const double> realizations, std::size_t n, GridKind kind);

} // namespace murphyes

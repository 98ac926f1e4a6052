#pragma once

#include "murphyes/scores.hpp"
#include "murphyes/variance.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace murphyes {

/// Time-aligned forecasts of one or two methods plus realizations.
/// forecasts_b is empty for single-method series.
struct EvaluationSeries {
    std::vector<std::int64_t> times;
    std::vector<JointForecast> forecasts_a;
    std::vector<JointForecast> forecasts_b;
    std::vector<double> realizations;

    std::size_t size() const noexcept { return realizations.size(); }
    bool has_b() const noexcept { return !forecasts_b.empty(); }

    /// Throws std::invalid_argument on length mismatch, non-increasing times
    /// or non-finite realizations.
    void validate() const;

    /// Series with times 0..n-1.
    static EvaluationSeries make(std::vector<JointForecast> a, std::vector<JointForecast> b,
                                 std::vector<double> y);
};

enum class Method { A, B };

struct MurphyCurve {
    std::string label;
    ThresholdGrid grid;
    std::vector<double> mean_scores;
    std::vector<double> pointwise_variance; // variance of the mean score
};

struct DiffCurve {
    std::string label;
    ThresholdGrid grid;
    std::vector<double> mean_diffs; // method A minus method B
    std::vector<double> ci_lower;
    std::vector<double> ci_upper;
    /// True iff mean_diffs <= 0 at every grid point, i.e. A weakly dominates B
    /// empirically on this grid. Violations between grid points are not seen.
    bool a_dominates_on_grid = false;
};

inline constexpr double kBand95 = 1.96;

/// Evaluates the elementary score family matching the grid kind.
double elementary_score(GridKind kind, const JointForecast& fc, double y, double v, Level alpha);

/// Empirical mean elementary score per threshold. pointwise_variance is the
/// (T-1)-denominator sample variance of the per-period scores divided by T.
MurphyCurve murphy_curve(const EvaluationSeries& series, Method method, const ThresholdGrid& grid,
                         Level alpha, std::size_t threads = 1);

/// Difference curve A - B with a pointwise band mean +/- z * se, where se is
/// the standard error of the mean score difference under `variance`.
/// Zero-variance thresholds collapse the band onto the mean.
DiffCurve murphy_diff(const EvaluationSeries& series, const ThresholdGrid& grid, Level alpha,
                      const VarianceEstimator& variance, double z = kBand95, std::size_t threads = 1);

enum class CurveFormat { CSV, JSON, SVG };

using CurveData = std::variant<MurphyCurve, DiffCurve>;

/// Deterministic serialization of one or more curves sharing a grid.
///
/// CSV: a single curve gives `v,mean_score,variance` or
/// `v,mean_diff,ci_lower,ci_upper`; several curves are written in long form
/// with a leading `label` column. SVG draws all curves on one chart with
/// axes, legend and a zero line.
///
/// Throws std::invalid_argument for an empty list, curves on different grids,
/// or a mix of MurphyCurve and DiffCurve.
std::string emit_curve_data(const std::vector<CurveData>& curves, CurveFormat format);

} // namespace murphyes

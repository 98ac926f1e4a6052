#include "murphyes/scores.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace murphyes {

JointForecast::JointForecast(double var, double es) : var_(var), es_(es) {
    require_finite(var, "VaR forecast");
    require_finite(es, "ES forecast");
    if (var < es) {
        throw std::invalid_argument("joint forecast violates var >= es");
    }
}

ThresholdGrid::ThresholdGrid(std::vector<double> values, GridKind kind) : values_(std::move(values)), kind_(kind) {
    if (values_.empty()) {
        throw std::invalid_argument("threshold grid must be nonempty");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        require_finite(values_[i], "grid threshold");
        if (i > 0 && !(values_[i] > values_[i - 1])) {
            throw std::invalid_argument("threshold grid must be strictly increasing");
        }
    }
}

double elementary_score_v1(double x1, double y, double v1, Level alpha) {
    require_finite(x1, "x1");
    require_finite(y, "y");
    require_finite(v1, "v1");
    const double hit = y <= x1 ? 1.0 : 0.0;
    const double a = v1 <= x1 ? 1.0 : 0.0;
    const double b = v1 <= y ? 1.0 : 0.0;
    return (hit - alpha.value()) * (a - b);
}

double elementary_score_v2(const JointForecast& fc, double y, double v2, Level alpha) {
    require_finite(y, "y");
    require_finite(v2, "v2");
    const double x1 = fc.var();
    const double x2 = fc.es();
    const double a = alpha.value();
    const double hit = y <= x1 ? 1.0 : 0.0;
    const bool written = v2 <= x2;
    const bool exceeded = v2 <= y;
    if (written && exceeded) {
        return (1.0 / a) * (hit - a) * (x1 - y);
    }
    double score = 0.0;
    if (written) score += (1.0 / a) * hit * (x1 - y) - (x1 - v2);
    if (exceeded) score += y - v2;
    return score;
}

double fz_score(const JointForecast& fc, double y, Level alpha, const FzSpec& spec) {
    require_finite(y, "y");
    const double x1 = fc.var();
    const double x2 = fc.es();
    const double a = alpha.value();
    const double hit = y <= x1 ? 1.0 : 0.0;

    const double g1x = spec.g1 ? spec.g1(x1) : 0.0;
    const double g1y = spec.g1 ? spec.g1(y) : 0.0;
    const double g2x = spec.g2(x2);
    const double gg2x = spec.g2_antiderivative(x2);
    const double gg2y = spec.g2_antiderivative(y);
    for (double v : {g1x, g1y, g2x, gg2x, gg2y}) {
        if (!std::isfinite(v)) throw std::invalid_argument("fz_score: non-finite function evaluation");
    }
    return (hit - a) * (g1x - g1y) + g2x * ((1.0 / a) * hit * (x1 - y) - (x1 - x2)) - (gg2x - gg2y);
}

namespace {

void check_weights(const DiscreteMixture& h) {
    for (const auto& p : h.points) {
        require_finite(p.v, "mixture threshold");
        require_finite(p.weight, "mixture weight");
        if (p.weight < 0.0) throw std::invalid_argument("mixture weights must be nonnegative");
    }
}

} // namespace

double mixture_score(const JointForecast& fc, double y, Level alpha, const DiscreteMixture& h2) {
    check_weights(h2);
    double total = 0.0;
    for (const auto& p : h2.points) {
        total += p.weight * elementary_score_v2(fc, y, p.v, alpha);
    }
    return total;
}

double mixture_score(const JointForecast& fc, double y, Level alpha, const DiscreteMixture& h2,
                     const DiscreteMixture& h1) {
    check_weights(h1);
    double total = mixture_score(fc, y, alpha, h2);
    for (const auto& p : h1.points) {
        total += p.weight * elementary_score_v1(fc.var(), y, p.v, alpha);
    }
    return total;
}

FzSpec fz_spec_from_mixture(const DiscreteMixture& mixture) {
    check_weights(mixture);
    auto points = mixture.points;
    FzSpec spec;
    spec.g1 = [](double) { return 0.0; };
    spec.g2 = [points](double x) {
        double s = 0.0;
        for (const auto& p : points) {
            if (p.v <= x) s += p.weight;
        }
        return s;
    };
    spec.g2_antiderivative = [points](double x) {
        double s = 0.0;
        for (const auto& p : points) {
            if (p.v <= x) s += p.weight * (x - p.v);
        }
        return s;
    };
    return spec;
}

ThresholdGrid build_threshold_grid(std::span<const double> forecast_values, std::span<const double> realizations,
                                   std::size_t n, GridKind kind) {
    if (n < 2) throw std::invalid_argument("threshold grid needs at least 2 points");
    if (forecast_values.empty() || realizations.empty()) {
        throw std::invalid_argument("threshold grid needs nonempty forecasts and realizations");
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (auto values : {forecast_values, realizations}) {
        for (double x : values) {
            require_finite(x, "grid input");
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    }
    if (!(hi > lo)) throw std::invalid_argument("threshold grid range has zero width");

    std::vector<double> v(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) v[i] = lo + step * static_cast<double>(i);
    v.back() = hi;
    return ThresholdGrid(std::move(v), kind);
}

ThresholdGrid build_threshold_grid(std::span<const std::vector<JointForecast>> forecast_sets,
                                   std::span<const double> realizations, std::size_t n, GridKind kind) {
    std::vector<double> values;
    for (const auto& set : forecast_sets) {
        for (const auto& fc : set) {
            values.push_back(fc.var());
            values.push_back(fc.es());
        }
    }
    return build_threshold_grid(values, realizations, n, kind);
}

} // namespace murphyes

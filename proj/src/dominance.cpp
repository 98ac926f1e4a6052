#include "murphyes/dominance.hpp"

#include "murphyes/normal.hpp"
#include "murphyes/parallel.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace murphyes {

void DominanceTestConfig::validate() const {
    if (grid_size < 2) throw std::invalid_argument("grid_size must be at least 2");
    if (permutations < 1) throw std::invalid_argument("permutations must be at least 1");
    if (block_length < 1) throw std::invalid_argument("block_length must be at least 1");
}

const char* to_string(Direction d) {
    return d == Direction::A_dominates_B ? "A_dominates_B" : "B_dominates_A";
}

ScoreDiffPanel::ScoreDiffPanel(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

ScoreDiffPanel ScoreDiffPanel::negated() const {
    ScoreDiffPanel out = *this;
    for (double& v : out.data_) v = -v;
    return out;
}

ScoreDiffPanel compute_diff_panel(const EvaluationSeries& series, std::vector<ThresholdGrid> grids, Level alpha,
                                  std::size_t threads) {
    series.validate();
    if (series.size() == 0) throw std::invalid_argument("compute_diff_panel: empty series");
    if (!series.has_b()) throw std::invalid_argument("compute_diff_panel: both methods are required");
    if (grids.empty()) throw std::invalid_argument("compute_diff_panel: no grids");

    std::size_t cols = 0;
    for (const auto& g : grids) cols += g.size();
    ScoreDiffPanel panel(series.size(), cols);

    std::size_t offset = 0;
    for (const auto& g : grids) {
        parallel_for(g.size(), threads, [&](std::size_t i) {
            for (std::size_t t = 0; t < series.size(); ++t) {
                const double y = series.realizations[t];
                panel(t, offset + i) = elementary_score(g.kind(), series.forecasts_a[t], y, g[i], alpha) -
                                       elementary_score(g.kind(), series.forecasts_b[t], y, g[i], alpha);
            }
        });
        offset += g.size();
    }
    panel.grids = std::move(grids);
    return panel;
}

ScoreDiffPanel compute_diff_panel(const EvaluationSeries& series, const DominanceTestConfig& config) {
    config.validate();
    series.validate();
    if (!series.has_b()) throw std::invalid_argument("compute_diff_panel: both methods are required");
    const std::vector<std::vector<JointForecast>> sets{series.forecasts_a, series.forecasts_b};
    std::vector<ThresholdGrid> grids;
    if (config.score_set == ScoreSet::BothFamilies) {
        grids.push_back(build_threshold_grid(sets, series.realizations, config.grid_size, GridKind::V1));
    }
    grids.push_back(build_threshold_grid(sets, series.realizations, config.grid_size, GridKind::V2));
    return compute_diff_panel(series, std::move(grids), config.alpha_level, config.threads);
}

namespace {

// Relative threshold below which a column's variance is treated as zero.
constexpr double kDegenerateVariance = 1e-12;

// One-sided p-value of the mean of x. Shared by the observed and the
// sign-flipped stage so both use identical arithmetic.
double mean_p_value(std::span<const double> x, const VarianceEstimator& variance, PValueReference reference) {
    const std::size_t n = x.size();
    double sum = 0.0;
    double sumsq = 0.0;
    for (double v : x) {
        sum += v;
        sumsq += v * v;
    }
    const double scale = sumsq / static_cast<double>(n);
    const double se = mean_standard_error(x, variance);
    if (scale == 0.0 || se * se * static_cast<double>(n) <= kDegenerateVariance * scale) {
        return 1.0;
    }
    const double t = (sum / static_cast<double>(n)) / se;
    if (reference == PValueReference::StudentT) {
        return boost::math::cdf(
            boost::math::complement(boost::math::students_t_distribution<double>(static_cast<double>(n - 1)), t));
    }
    return normal_sf(t);
}

std::vector<double> transpose_columns(const ScoreDiffPanel& panel) {
    std::vector<double> cols(panel.rows() * panel.cols());
    for (std::size_t t = 0; t < panel.rows(); ++t) {
        for (std::size_t m = 0; m < panel.cols(); ++m) cols[m * panel.rows() + t] = panel(t, m);
    }
    return cols;
}

void column_p_values(std::span<const double> columns, std::size_t rows, std::span<const double> signs,
                     const VarianceEstimator& variance, PValueReference reference, std::span<double> out) {
    std::vector<double> x(rows);
    for (std::size_t m = 0; m < out.size(); ++m) {
        const double* col = columns.data() + m * rows;
        if (signs.empty()) {
            std::copy(col, col + rows, x.begin());
        } else {
            for (std::size_t t = 0; t < rows; ++t) x[t] = signs[t] * col[t];
        }
        out[m] = mean_p_value(x, variance, reference);
    }
}

} // namespace

std::vector<double> pointwise_p_values(const ScoreDiffPanel& panel, const VarianceEstimator& variance,
                                       PValueReference reference) {
    if (panel.rows() < 2) throw std::invalid_argument("pointwise_p_values: need at least two periods");
    const auto columns = transpose_columns(panel);
    std::vector<double> p(panel.cols());
    column_p_values(columns, panel.rows(), {}, variance, reference, p);
    return p;
}

std::vector<double> draw_block_signs(std::size_t rows, std::size_t block_length, Rng& rng) {
    if (block_length < 1) throw std::invalid_argument("block_length must be at least 1");
    std::vector<double> signs(rows);
    for (std::size_t start = 0; start < rows; start += block_length) {
        const double s = rng.sign();
        const std::size_t end = std::min(rows, start + block_length);
        std::fill(signs.begin() + static_cast<std::ptrdiff_t>(start), signs.begin() + static_cast<std::ptrdiff_t>(end),
                  s);
    }
    return signs;
}

ScoreDiffPanel sign_permutation(const ScoreDiffPanel& panel, std::size_t block_length, Rng& rng) {
    const auto signs = draw_block_signs(panel.rows(), block_length, rng);
    ScoreDiffPanel out = panel;
    for (std::size_t t = 0; t < panel.rows(); ++t) {
        for (std::size_t m = 0; m < panel.cols(); ++m) out(t, m) = signs[t] * panel(t, m);
    }
    return out;
}

WestfallYoungResult westfall_young_adjust(std::span<const double> observed_p, std::span<const double> simulated,
                                          std::size_t replicates) {
    const std::size_t m = observed_p.size();
    if (m == 0) throw std::invalid_argument("westfall_young_adjust: no hypotheses");
    if (replicates < 1) throw std::invalid_argument("westfall_young_adjust: need at least one replicate");
    if (simulated.size() != replicates * m) {
        throw std::invalid_argument("westfall_young_adjust: simulated p-values must be replicates x hypotheses");
    }

    // order[k] is the grid index with the k-th smallest observed p.
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return observed_p[a] < observed_p[b]; });

    std::vector<std::size_t> hits(m, 0);
    std::vector<double> q(m);
    for (std::size_t l = 0; l < replicates; ++l) {
        const double* p = simulated.data() + l * m;
        double running = p[order[m - 1]];
        q[m - 1] = running;
        for (std::size_t k = m - 1; k-- > 0;) {
            running = std::min(running, p[order[k]]);
            q[k] = running;
            assert(q[k] <= q[k + 1]); // suffix minima grow along the order
        }
        for (std::size_t k = 0; k < m; ++k) {
            if (q[k] <= observed_p[order[k]]) ++hits[k];
        }
    }

    WestfallYoungResult result{std::vector<double>(m), std::vector<double>(m)};
    double running_max = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double r = static_cast<double>(hits[k]) / static_cast<double>(replicates);
        running_max = std::max(running_max, r);
        result.raw[order[k]] = r;
        result.adjusted[order[k]] = running_max;
    }
    return result;
}

DominanceTestResult dominance_test_on_panel(const ScoreDiffPanel& panel, const DominanceTestConfig& config,
                                            Direction direction, std::uint64_t stream_base) {
    config.validate();
    if (panel.rows() < 2) throw std::invalid_argument("dominance test: need at least two periods");
    const std::size_t rows = panel.rows();
    const std::size_t m = panel.cols();
    const std::size_t L = config.permutations;
    const auto columns = transpose_columns(panel);

    DominanceTestResult result;
    result.direction = direction;
    result.grids = panel.grids;
    result.both_families_iid_warning =
        config.score_set == ScoreSet::BothFamilies && config.variance.kind == VarianceEstimator::Kind::IID;
    result.pointwise_p.resize(m);
    column_p_values(columns, rows, {}, config.variance, config.reference, result.pointwise_p);

    std::vector<double> simulated(L * m);
    parallel_for(L, config.threads, [&](std::size_t l) {
        Rng rng(config.seed, stream_base + l);
        const auto signs = draw_block_signs(rows, config.block_length, rng);
        column_p_values(columns, rows, signs, config.variance, config.reference,
                        std::span<double>(simulated.data() + l * m, m));
    });

    auto wy = westfall_young_adjust(result.pointwise_p, simulated, L);
    result.raw_adjusted_p = std::move(wy.raw);
    result.adjusted_p = std::move(wy.adjusted);
    result.minimal_wy_p = *std::min_element(result.adjusted_p.begin(), result.adjusted_p.end());
    return result;
}

std::pair<DominanceTestResult, DominanceTestResult> dominance_test(const EvaluationSeries& series,
                                                                   const DominanceTestConfig& config) {
    const auto panel = compute_diff_panel(series, config);
    constexpr std::uint64_t kSecondDirection = std::uint64_t{1} << 32;
    auto a = dominance_test_on_panel(panel, config, Direction::A_dominates_B, 0);
    auto b = dominance_test_on_panel(panel.negated(), config, Direction::B_dominates_A, kSecondDirection);
    return {std::move(a), std::move(b)};
}

} // namespace murphyes

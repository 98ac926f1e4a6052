#pragma once

#include "murphyes/murphy.hpp"
#include "murphyes/rng.hpp"
#include "murphyes/scores.hpp"
#include "murphyes/variance.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace murphyes {

enum class ScoreSet { S2Only, BothFamilies };

/// Reference distribution for the pointwise one-sided t-statistics.
enum class PValueReference { Normal, StudentT };

struct DominanceTestConfig {
    Level alpha_level{};
    std::size_t grid_size = 50;
    std::size_t permutations = 500;
    std::size_t block_length = 1;
    VarianceEstimator variance = VarianceEstimator::iid();
    ScoreSet score_set = ScoreSet::S2Only;
    PValueReference reference = PValueReference::Normal;
    std::uint64_t seed = 1;
    std::size_t threads = 1;

    void validate() const;
};

/// Row-major T x M matrix of per-period score differences (A minus B).
/// With BothFamilies the first grid_size columns are S_v1 differences and
/// the remaining columns S_v2 differences.
class ScoreDiffPanel {
public:
    ScoreDiffPanel() = default;
    ScoreDiffPanel(std::size_t rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double& operator()(std::size_t t, std::size_t m) { return data_[t * cols_ + m]; }
    double operator()(std::size_t t, std::size_t m) const { return data_[t * cols_ + m]; }
    std::span<const double> row(std::size_t t) const { return {data_.data() + t * cols_, cols_}; }
    const std::vector<double>& data() const noexcept { return data_; }

    ScoreDiffPanel negated() const;

    /// Grids the columns were computed on, in column order.
    std::vector<ThresholdGrid> grids;

    friend bool operator==(const ScoreDiffPanel& a, const ScoreDiffPanel& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Builds the threshold grid(s) from the range of both methods' forecasts
/// and the realizations, then fills the difference panel.
ScoreDiffPanel compute_diff_panel(const EvaluationSeries& series, const DominanceTestConfig& config);

/// Panel on explicitly supplied grids (V1 grids give S_v1 columns).
ScoreDiffPanel compute_diff_panel(const EvaluationSeries& series, std::vector<ThresholdGrid> grids,
                                  Level alpha, std::size_t threads = 1);

/// One-sided p-value per column for H0: E d = 0 against E d > 0, using
/// t = mean / se and p = 1 - F(t) with F standard normal (or Student-t with
/// T-1 degrees of freedom). Columns whose variance estimate is zero relative
/// to their scale get p = 1. Requires at least two rows.
std::vector<double> pointwise_p_values(const ScoreDiffPanel& panel, const VarianceEstimator& variance,
                                       PValueReference reference = PValueReference::Normal);

/// One sign per block of block_length consecutive rows; a trailing partial
/// block draws its own sign.
std::vector<double> draw_block_signs(std::size_t rows, std::size_t block_length, Rng& rng);

/// Multiplies every row of the panel by its block sign (same sign for all
/// columns of a row).
ScoreDiffPanel sign_permutation(const ScoreDiffPanel& panel, std::size_t block_length, Rng& rng);

struct WestfallYoungResult {
    /// r_m = (1/L) sum_l 1{q*_{sigma^-1(m), l} <= p_m}, with q* the suffix minima
    /// of each simulated replicate taken in ascending order of observed p.
    std::vector<double> raw;
    /// raw with step-down monotonicity enforced: running maximum along the
    /// ascending order of observed p.
    std::vector<double> adjusted;
};

/// Westfall-Young step-down adjustment. `simulated` holds L replicates of M
/// p-values each, row-major (L x M). Ties in observed p keep grid order.
WestfallYoungResult westfall_young_adjust(std::span<const double> observed_p,
                                          std::span<const double> simulated, std::size_t replicates);

enum class Direction { A_dominates_B, B_dominates_A };

struct DominanceTestResult {
    Direction direction = Direction::A_dominates_B;
    std::vector<ThresholdGrid> grids;
    std::vector<double> pointwise_p;
    std::vector<double> raw_adjusted_p;
    std::vector<double> adjusted_p;
    double minimal_wy_p = 1.0;
    /// Set when BothFamilies is paired with IID variance, a combination known
    /// to produce small p-values under serially dependent S_v1 differences.
    bool both_families_iid_warning = false;
};

/// Runs the test of H0 "A weakly dominates B" on `panel`: observed pointwise
/// p-values, L sign-flip replicates scored with the same machinery, and the
/// Westfall-Young adjustment. Replicate l uses the sub-stream (seed, stream_base + l).
DominanceTestResult dominance_test_on_panel(const ScoreDiffPanel& panel, const DominanceTestConfig& config,
                                            Direction direction, std::uint64_t stream_base);

/// Both directions: first H0 "A dominates B", then H0 "B dominates A".
std::pair<DominanceTestResult, DominanceTestResult> dominance_test(const EvaluationSeries& series,
                                                                   const DominanceTestConfig& config);

const char* to_string(Direction d);

} // namespace murphyes

#pragma once

#include "murphyes/dominance.hpp"
#include "murphyes/scores.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace murphyes {

enum class RkSource { FromFile, SyntheticAR };

/// Stationary lognormal AR(1) for realized variance:
///   log rk_t = a + b * log rk_{t-1} + c * eta_t.
struct SyntheticRkParams {
    double a = -0.3 * (1.0 - 0.95);
    double b = 0.95;
    double c = 0.25;
};

struct DgpConfig {
    RkSource rk_source = RkSource::SyntheticAR;
    std::vector<double> rk_series; // used with FromFile; rk_series[t-1] drives sigma_t
    SyntheticRkParams synthetic{};
    double coeff_rk = 0.5;
    double coeff_lag = 0.7;
    double sigma0_sq = 0.35;
    double nu = 6.0;
    std::size_t horizon = 500;
    std::uint64_t seed = 1;

    void validate() const;
};

struct SimulatedPath {
    std::vector<double> rk;      // rk[0..T-1]
    std::vector<double> sigma;   // sigma_1..sigma_T
    std::vector<double> returns; // R_1..R_T
};

/// Synthetic rk path of length n, started at the stationary log-mean.
std::vector<double> synthetic_rk(std::size_t n, const SyntheticRkParams& params, Rng& rng);

/// sigma_t^2 = coeff_rk * rk[t-1] + coeff_lag * sigma_{t-1}^2 from sigma_0^2,
/// and R_t = sqrt((nu-2)/nu) * sigma_t * X_t with X_t ~ t(nu).
SimulatedPath simulate_dgp(const DgpConfig& config);

struct ForecasterSpec {
    double zeta = 0.0; // variance of the additive forecast error
};

struct ForecastSeries {
    std::vector<JointForecast> forecasts;
    std::vector<double> errors;
};

/// Optimal scaled-t (VaR, ES) per period plus one N(0, zeta) error shared by
/// both components.
ForecastSeries make_forecaster(std::span<const double> sigma, const ForecasterSpec& spec, Level alpha,
                               double nu, std::uint64_t seed);

struct StudyRow {
    double zeta1 = 0.0;
    double zeta2 = 0.0;
    std::size_t horizon = 0;
    double nominal_level = 0.0;
    double rejection_rate = 0.0;
    double se = 0.0;
    std::size_t replications = 0;
};

struct StudyConfig {
    DgpConfig dgp{};
    double zeta1 = 1.0;
    double zeta2 = 1.0;
    std::size_t replications = 200;
    DominanceTestConfig test{};
    std::vector<double> nominal_levels{0.05};
    std::size_t threads = 1;
};

struct StudyResult {
    std::vector<StudyRow> rows;
    std::vector<double> minimal_p; // per replication, H0: model 1 dominates model 2
};

/// Size/power experiment. Replication r simulates a path, draws forecasters
/// 1 (zeta1) and 2 (zeta2) as methods A and B, and tests H0 "model 1 dominates
/// model 2"; H0 is rejected at level a when the minimal Westfall-Young
/// p-value is below a. Every random draw comes from sub-streams of dgp.seed.
StudyResult size_power_study(const StudyConfig& config);

std::string study_csv(std::span<const StudyRow> rows);

} // namespace murphyes

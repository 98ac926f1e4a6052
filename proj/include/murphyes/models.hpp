#pragma once

#include "murphyes/common.hpp"
#include "murphyes/scores.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace murphyes {

// ---------------------------------------------------------------------------
// Student-t helpers
// ---------------------------------------------------------------------------

/// Inverse CDF of the standard (unscaled) Student-t with nu degrees of freedom.
double student_t_quantile(double p, double nu);

double student_t_cdf(double x, double nu);

/// Expected shortfall (1/alpha) * integral_0^alpha q_u du of the standard
/// Student-t, in closed form: -(nu + q^2) / (nu - 1) * f(q) / alpha with
/// q the alpha-quantile and f the density. Requires nu > 1.
double student_t_es(Level alpha, double nu);

/// (VaR, ES) of R = sqrt((nu-2)/nu) * sigma * X with X ~ t(nu), so that
/// Var(R) = sigma^2. Requires sigma > 0 and nu > 2.
JointForecast scaled_t_var_es(double sigma, Level alpha, double nu);

// ---------------------------------------------------------------------------
// Volatility recursion sigma_t^2 = omega + gamma * driver_{t-1} + beta * sigma_{t-1}^2
// ---------------------------------------------------------------------------

enum class Driver { RealizedKernel, SquaredReturn };

struct VolatilityModelParams {
    double omega = 0.0;
    double gamma = 0.0;
    double beta = 0.0;
    Driver driver = Driver::SquaredReturn;
    double nu = 6.0;

    /// omega > 0, gamma >= 0, 0 <= beta < 1, nu > 2.
    void validate() const;
};

/// Conditional variances for every observation. variances[0] = seed_variance
/// and variances[t] = omega + gamma * driver[t-1] + beta * variances[t-1].
std::vector<double> variance_path(const VolatilityModelParams& params, std::span<const double> driver,
                                  double seed_variance);

/// One step past the end of the sample: omega + gamma * driver.back() +
/// beta * variance_path(...).back().
double one_step_variance(const VolatilityModelParams& params, std::span<const double> driver,
                         double seed_variance);

/// Gaussian quasi log-likelihood -1/2 * sum(log s_t + r_t^2 / s_t), with the
/// recursion seeded at the sample variance of `returns`.
double quasi_log_likelihood(const VolatilityModelParams& params, std::span<const double> returns,
                            std::span<const double> driver);

struct QmlFit {
    VolatilityModelParams params;
    double log_likelihood = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Raised when no start of the simplex search converges; carries the best
/// parameters found.
class QmlConvergenceError : public NumericalError {
public:
    QmlConvergenceError(const std::string& what, QmlFit best) : NumericalError(what), best(std::move(best)) {}
    QmlFit best;
};

struct QmlOptions {
    std::size_t max_iterations = 4000;
    double tolerance = 1e-10;
};

/// Quasi maximum likelihood for (omega, gamma, beta). driver[t] is the
/// observation available at the end of day t (RK_t or R_t^2) and drives
/// sigma_{t+1}^2. Nelder-Mead on (log omega, log gamma, logit beta) from three
/// fixed starting points; the best converged start wins.
QmlFit fit_qml(std::span<const double> returns, std::span<const double> driver, Driver kind,
               const QmlOptions& options = {});

// ---------------------------------------------------------------------------
// Historical simulation
// ---------------------------------------------------------------------------

/// k = ceil(alpha * n); VaR is the k-th smallest return and ES the mean of
/// the k smallest.
JointForecast hs_forecast(std::span<const double> window_returns, Level alpha);

// ---------------------------------------------------------------------------
// Market data and rolling evaluation
// ---------------------------------------------------------------------------

/// Daily closes with an optional realized kernel column. Missing rk values
/// are stored as NaN; an empty rk vector means the column is absent.
struct MarketData {
    std::vector<std::string> dates; // ISO-8601 YYYY-MM-DD
    std::vector<double> close;
    std::vector<double> rk;

    bool has_rk() const noexcept { return !rk.empty(); }
    std::size_t size() const noexcept { return close.size(); }
    void validate() const;
};

/// R_t = 100 * (log P_t - log P_{t-1}); one element shorter than close.
std::vector<double> log_returns(const MarketData& data);
std::vector<double> log_returns(std::span<const double> close);

enum class ModelKind { HEAVY, GARCH, HS };

const char* to_string(ModelKind kind);

struct RollingConfig {
    std::size_t window = 1500;
    Level alpha{};
    double nu = 6.0;
    QmlOptions qml{};

    void validate() const;
};

struct ModelForecasts {
    ModelKind model = ModelKind::HS;
    std::vector<std::string> dates; // date of the forecast target day
    std::vector<JointForecast> forecasts;
    std::vector<double> realizations;
    std::vector<std::string> refit_dates;
    std::size_t dropped_rows = 0; // rows without rk removed for HEAVY
};

/// Indices i in [begin, dates.size()) that are the first date of their
/// calendar month among dates[begin..]. begin itself is always included.
std::vector<std::size_t> monthly_refit_indices(std::span<const std::string> dates, std::size_t begin);

/// One-day-ahead out-of-sample forecasts. The forecast for return t uses
/// only returns (and rk) up to t-1: the trailing `window` returns for HS, and
/// for HEAVY/GARCH parameters refit on the first trading day of each month
/// with the variance recursion run over the trailing window.
ModelForecasts rolling_evaluation(const MarketData& data, ModelKind model, const RollingConfig& config);

struct ForecastSummary {
    double average_var = 0.0;
    double average_es = 0.0;
    double violation_rate = 0.0; // fraction of days with y < var
    std::size_t count = 0;
};

ForecastSummary summarize(std::span<const JointForecast> forecasts, std::span<const double> realizations);

} // namespace murphyes

#include "murphyes/models.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace murphyes {

// ---------------------------------------------------------------------------
// Student-t
// ---------------------------------------------------------------------------

double student_t_quantile(double p, double nu) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("student_t_quantile: p must lie in (0, 1)");
    if (!(nu >= 1.0)) throw std::invalid_argument("student_t_quantile: nu must be at least 1");
    if (p == 0.5) return 0.0;
    return boost::math::quantile(boost::math::students_t_distribution<double>(nu), p);
}

double student_t_cdf(double x, double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("student_t_cdf: nu must be positive");
    return boost::math::cdf(boost::math::students_t_distribution<double>(nu), x);
}

double student_t_es(Level alpha, double nu) {
    if (!(nu > 1.0)) throw std::invalid_argument("student_t_es: nu must exceed 1");
    const double q = student_t_quantile(alpha.value(), nu);
    const double f = boost::math::pdf(boost::math::students_t_distribution<double>(nu), q);
    return -(nu + q * q) / (nu - 1.0) * f / alpha.value();
}

JointForecast scaled_t_var_es(double sigma, Level alpha, double nu) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("scaled_t_var_es: sigma must be positive");
    if (!(nu > 2.0)) throw std::invalid_argument("scaled_t_var_es: nu must exceed 2");
    const double scale = std::sqrt((nu - 2.0) / nu) * sigma;
    return JointForecast(scale * student_t_quantile(alpha.value(), nu), scale * student_t_es(alpha, nu));
}

// ---------------------------------------------------------------------------
// Volatility recursion and QML
// ---------------------------------------------------------------------------

void VolatilityModelParams::validate() const {
    if (!(omega > 0.0)) throw std::invalid_argument("volatility model: omega must be positive");
    if (!(gamma >= 0.0)) throw std::invalid_argument("volatility model: gamma must be nonnegative");
    if (!(beta >= 0.0 && beta < 1.0)) throw std::invalid_argument("volatility model: beta must lie in [0, 1)");
    if (!(nu > 2.0)) throw std::invalid_argument("volatility model: nu must exceed 2");
}

std::vector<double> variance_path(const VolatilityModelParams& params, std::span<const double> driver,
                                  double seed_variance) {
    std::vector<double> s(driver.size());
    if (s.empty()) return s;
    s[0] = seed_variance;
    for (std::size_t t = 1; t < s.size(); ++t) {
        s[t] = params.omega + params.gamma * driver[t - 1] + params.beta * s[t - 1];
    }
    return s;
}

double one_step_variance(const VolatilityModelParams& params, std::span<const double> driver, double seed_variance) {
    if (driver.empty()) return seed_variance;
    double s = seed_variance;
    for (std::size_t t = 1; t < driver.size(); ++t) {
        s = params.omega + params.gamma * driver[t - 1] + params.beta * s;
    }
    return params.omega + params.gamma * driver.back() + params.beta * s;
}

namespace {

double sample_variance(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    const double m = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return ss / static_cast<double>(x.size() - 1);
}

double qll_with_seed(const VolatilityModelParams& p, std::span<const double> returns, std::span<const double> driver,
                     double seed) {
    double ll = 0.0;
    double s = seed;
    for (std::size_t t = 0; t < returns.size(); ++t) {
        if (t > 0) s = p.omega + p.gamma * driver[t - 1] + p.beta * s;
        if (!(s > 0.0) || !std::isfinite(s)) return -std::numeric_limits<double>::infinity();
        ll += -0.5 * (std::log(s) + returns[t] * returns[t] / s);
    }
    return ll;
}

using Point = std::array<double, 3>;

VolatilityModelParams from_unconstrained(const Point& th, Driver kind) {
    VolatilityModelParams p;
    p.omega = std::exp(th[0]);
    p.gamma = std::exp(th[1]);
    p.beta = 1.0 / (1.0 + std::exp(-th[2]));
    p.driver = kind;
    return p;
}

Point to_unconstrained(double omega, double gamma, double beta) {
    return {std::log(omega), std::log(gamma), std::log(beta / (1.0 - beta))};
}

struct SimplexResult {
    Point x;
    double f;
    std::size_t iterations;
    bool converged;
};

// Nelder-Mead minimization with the standard coefficients
// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
// `spread(a, b)` measures vertex distance for the convergence test.
template <typename F, typename D>
SimplexResult nelder_mead(F&& f, D&& spread, const Point& start, double step, std::size_t max_iter, double tol) {
    constexpr std::size_t n = 3;
    std::array<Point, n + 1> x;
    std::array<double, n + 1> fx;
    x[0] = start;
    for (std::size_t i = 0; i < n; ++i) {
        x[i + 1] = start;
        x[i + 1][i] += step;
    }
    for (std::size_t i = 0; i <= n; ++i) fx[i] = f(x[i]);

    std::size_t iter = 0;
    for (; iter < max_iter; ++iter) {
        std::array<std::size_t, n + 1> idx{0, 1, 2, 3};
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
        std::array<Point, n + 1> xs;
        std::array<double, n + 1> fs;
        for (std::size_t i = 0; i <= n; ++i) {
            xs[i] = x[idx[i]];
            fs[i] = fx[idx[i]];
        }
        x = xs;
        fx = fs;

        double size = 0.0;
        for (std::size_t i = 1; i <= n; ++i) size = std::max(size, spread(x[i], x[0]));
        if (std::isfinite(fx[n]) && fx[n] - fx[0] <= tol * (1.0 + std::abs(fx[0])) && size <= 1e-6) {
            return {x[0], fx[0], iter, true};
        }

        Point centroid{0, 0, 0};
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) centroid[j] += x[i][j] / n;
        }
        auto along = [&](double coef) {
            Point p;
            for (std::size_t j = 0; j < n; ++j) p[j] = centroid[j] + coef * (x[n][j] - centroid[j]);
            return p;
        };

        const Point xr = along(-1.0);
        const double fr = f(xr);
        if (fr < fx[0]) {
            const Point xe = along(-2.0);
            const double fe = f(xe);
            if (fe < fr) {
                x[n] = xe;
                fx[n] = fe;
            } else {
                x[n] = xr;
                fx[n] = fr;
            }
            continue;
        }
        if (fr < fx[n - 1]) {
            x[n] = xr;
            fx[n] = fr;
            continue;
        }
        const bool outside = fr < fx[n];
        const Point xc = along(outside ? -0.5 : 0.5);
        const double fc = f(xc);
        if (fc < (outside ? fr : fx[n])) {
            x[n] = xc;
            fx[n] = fc;
            continue;
        }
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 0; j < n; ++j) x[i][j] = x[0][j] + 0.5 * (x[i][j] - x[0][j]);
            fx[i] = f(x[i]);
        }
    }
    const auto best = std::min_element(fx.begin(), fx.end()) - fx.begin();
    return {x[static_cast<std::size_t>(best)], fx[static_cast<std::size_t>(best)], iter, false};
}

} // namespace

double quasi_log_likelihood(const VolatilityModelParams& params, std::span<const double> returns,
                            std::span<const double> driver) {
    if (returns.size() != driver.size()) throw std::invalid_argument("quasi_log_likelihood: length mismatch");
    return qll_with_seed(params, returns, driver, sample_variance(returns));
}

QmlFit fit_qml(std::span<const double> returns, std::span<const double> driver, Driver kind,
               const QmlOptions& options) {
    if (returns.size() != driver.size()) throw std::invalid_argument("fit_qml: returns and driver lengths differ");
    if (returns.size() < 10) throw std::invalid_argument("fit_qml: need at least 10 observations");
    for (std::size_t t = 0; t < returns.size(); ++t) {
        require_finite(returns[t], "return");
        require_finite(driver[t], "driver");
        if (driver[t] < 0.0) throw std::invalid_argument("fit_qml: driver values must be nonnegative");
    }
    const bool constant = std::all_of(returns.begin(), returns.end(), [&](double x) { return x == returns[0]; });
    const double seed = sample_variance(returns);
    if (constant || !(seed > 0.0)) {
        throw NumericalError("fit_qml: returns have zero sample variance, likelihood is degenerate");
    }

    // distance in (relative omega, gamma, beta) so flat directions towards
    // gamma = 0 or beta = 0 do not block convergence
    auto spread = [](const Point& a, const Point& b) {
        const auto pa = from_unconstrained(a, Driver::SquaredReturn);
        const auto pb = from_unconstrained(b, Driver::SquaredReturn);
        return std::max({std::abs(pa.omega - pb.omega) / pb.omega, std::abs(pa.gamma - pb.gamma),
                         std::abs(pa.beta - pb.beta)});
    };
    auto objective = [&](const Point& th) {
        const auto p = from_unconstrained(th, kind);
        const double ll = qll_with_seed(p, returns, driver, seed);
        return std::isfinite(ll) ? -ll : std::numeric_limits<double>::infinity();
    };

    const std::array<Point, 3> starts{to_unconstrained(0.05 * seed, 0.1, 0.85),
                                      to_unconstrained(0.2 * seed, 0.3, 0.5),
                                      to_unconstrained(0.5 * seed, 0.05, 0.3)};
    QmlFit best;
    best.log_likelihood = -std::numeric_limits<double>::infinity();
    bool any_converged = false;
    std::size_t total_iter = 0;
    for (const auto& start : starts) {
        auto r = nelder_mead(objective, spread, start, 0.5, options.max_iterations, options.tolerance);
        total_iter += r.iterations;
        if (r.converged) {
            // restart at the optimum to guard against a collapsed simplex
            auto again = nelder_mead(objective, spread, r.x, 0.1, options.max_iterations, options.tolerance);
            total_iter += again.iterations;
            if (again.converged && again.f <= r.f) r = again;
        }
        const double ll = -r.f;
        const bool better = (r.converged && !any_converged) || ((r.converged == any_converged) && ll > best.log_likelihood);
        if (better) {
            best.params = from_unconstrained(r.x, kind);
            best.log_likelihood = ll;
            best.converged = r.converged;
        }
        any_converged = any_converged || r.converged;
    }
    best.iterations = total_iter;
    if (!any_converged) {
        throw QmlConvergenceError("fit_qml: simplex search did not converge", best);
    }
    return best;
}

// ---------------------------------------------------------------------------
// Historical simulation
// ---------------------------------------------------------------------------

JointForecast hs_forecast(std::span<const double> window_returns, Level alpha) {
    const std::size_t n = window_returns.size();
    if (n == 0) throw std::invalid_argument("hs_forecast: empty window");
    // small slack so that e.g. 0.025 * 80 does not round up to 3
    const auto k = static_cast<std::size_t>(std::ceil(alpha.value() * static_cast<double>(n) - 1e-9));
    if (k < 1) throw std::invalid_argument("hs_forecast: window too short for level alpha");
    std::vector<double> sorted(window_returns.begin(), window_returns.end());
    std::partial_sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k), sorted.end());
    const double var = sorted[k - 1];
    double excess = 0.0;
    for (std::size_t i = 0; i < k; ++i) excess += sorted[i] - var;
    return JointForecast(var, std::min(var + excess / static_cast<double>(k), var));
}

// ---------------------------------------------------------------------------
// Market data and rolling evaluation
// ---------------------------------------------------------------------------

void MarketData::validate() const {
    if (dates.size() != close.size() || (!rk.empty() && rk.size() != close.size())) {
        throw DataError("market data: column lengths differ");
    }
    for (std::size_t i = 0; i < close.size(); ++i) {
        if (!(close[i] > 0.0) || !std::isfinite(close[i])) throw DataError("market data: close prices must be positive");
        if (i > 0 && !(dates[i] > dates[i - 1])) throw DataError("market data: dates must be strictly increasing");
        if (!rk.empty() && !std::isnan(rk[i]) && !(rk[i] >= 0.0)) throw DataError("market data: rk must be nonnegative");
    }
}

std::vector<double> log_returns(std::span<const double> close) {
    if (close.size() < 2) throw std::invalid_argument("log_returns: need at least two prices");
    for (double p : close) {
        if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("log_returns: prices must be positive");
    }
    std::vector<double> r(close.size() - 1);
    for (std::size_t i = 1; i < close.size(); ++i) r[i - 1] = 100.0 * (std::log(close[i]) - std::log(close[i - 1]));
    return r;
}

std::vector<double> log_returns(const MarketData& data) { return log_returns(data.close); }

const char* to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::HEAVY: return "HEAVY";
    case ModelKind::GARCH: return "GARCH";
    case ModelKind::HS: return "HS";
    }
    return "?";
}

void RollingConfig::validate() const {
    if (window < 2) throw std::invalid_argument("rolling window must be at least 2");
    if (!(nu > 2.0)) throw std::invalid_argument("nu must exceed 2");
}

std::vector<std::size_t> monthly_refit_indices(std::span<const std::string> dates, std::size_t begin) {
    std::vector<std::size_t> out;
    for (std::size_t i = begin; i < dates.size(); ++i) {
        if (i == begin || dates[i].substr(0, 7) != dates[i - 1].substr(0, 7)) out.push_back(i);
    }
    return out;
}

ModelForecasts rolling_evaluation(const MarketData& input, ModelKind model, const RollingConfig& config) {
    config.validate();
    input.validate();

    ModelForecasts out;
    out.model = model;

    MarketData data;
    if (model == ModelKind::HEAVY) {
        if (!input.has_rk()) throw DataError("HEAVY model requires an rk column");
        for (std::size_t i = 0; i < input.size(); ++i) {
            if (std::isnan(input.rk[i])) {
                ++out.dropped_rows;
                continue;
            }
            data.dates.push_back(input.dates[i]);
            data.close.push_back(input.close[i]);
            data.rk.push_back(input.rk[i]);
        }
    } else {
        data.dates = input.dates;
        data.close = input.close;
    }

    const auto returns = log_returns(data.close);
    const std::size_t n = returns.size();
    const std::size_t w = config.window;
    if (n <= w) throw DataError("not enough observations for the rolling window");

    // return i is realized on dates[i + 1]; driver[i] is known at the end of that day
    std::vector<std::string> return_dates(data.dates.begin() + 1, data.dates.end());
    std::vector<double> driver(n);
    for (std::size_t i = 0; i < n; ++i) {
        driver[i] = model == ModelKind::HEAVY ? data.rk[i + 1] : returns[i] * returns[i];
    }

    const auto refits = monthly_refit_indices(return_dates, w);
    std::size_t next_refit = 0;
    VolatilityModelParams params;
    const Driver kind = model == ModelKind::HEAVY ? Driver::RealizedKernel : Driver::SquaredReturn;

    for (std::size_t t = w; t < n; ++t) {
        const std::span<const double> window(returns.data() + (t - w), w);
        if (model == ModelKind::HS) {
            out.forecasts.push_back(hs_forecast(window, config.alpha));
        } else {
            const std::span<const double> window_driver(driver.data() + (t - w), w);
            if (next_refit < refits.size() && refits[next_refit] == t) {
                params = fit_qml(window, window_driver, kind, config.qml).params;
                params.nu = config.nu;
                out.refit_dates.push_back(return_dates[t]);
                ++next_refit;
            }
            const double s2 = one_step_variance(params, window_driver, sample_variance(window));
            out.forecasts.push_back(scaled_t_var_es(std::sqrt(s2), config.alpha, config.nu));
        }
        out.dates.push_back(return_dates[t]);
        out.realizations.push_back(returns[t]);
    }
    return out;
}

ForecastSummary summarize(std::span<const JointForecast> forecasts, std::span<const double> realizations) {
    if (forecasts.size() != realizations.size()) throw std::invalid_argument("summarize: length mismatch");
    ForecastSummary s;
    s.count = forecasts.size();
    if (s.count == 0) return s;
    std::size_t hits = 0;
    for (std::size_t t = 0; t < s.count; ++t) {
        s.average_var += forecasts[t].var();
        s.average_es += forecasts[t].es();
        if (realizations[t] < forecasts[t].var()) ++hits;
    }
    const double n = static_cast<double>(s.count);
    s.average_var /= n;
    s.average_es /= n;
    s.violation_rate = static_cast<double>(hits) / n;
    return s;
}

} // namespace murphyes

#include "murphyes/simulation.hpp"

#include "murphyes/io.hpp"
#include "murphyes/models.hpp"
#include "murphyes/parallel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace murphyes {

void DgpConfig::validate() const {
    if (!(sigma0_sq > 0.0)) throw std::invalid_argument("dgp: sigma0_sq must be positive");
    if (horizon < 1) throw std::invalid_argument("dgp: horizon must be at least 1");
    if (!(nu > 2.0)) throw std::invalid_argument("dgp: nu must exceed 2");
    if (!(coeff_rk >= 0.0) || !(coeff_lag >= 0.0)) throw std::invalid_argument("dgp: coefficients must be nonnegative");
    if (rk_source == RkSource::FromFile) {
        if (rk_series.size() < horizon) throw std::invalid_argument("dgp: rk series shorter than the horizon");
        for (std::size_t t = 0; t < horizon; ++t) {
            if (!(rk_series[t] >= 0.0) || !std::isfinite(rk_series[t])) {
                throw std::invalid_argument("dgp: rk values must be finite and nonnegative");
            }
        }
    } else if (!(std::abs(synthetic.b) < 1.0)) {
        throw std::invalid_argument("dgp: synthetic rk persistence must satisfy |b| < 1");
    }
}

std::vector<double> synthetic_rk(std::size_t n, const SyntheticRkParams& params, Rng& rng) {
    std::vector<double> rk(n);
    double log_rk = params.a / (1.0 - params.b);
    for (std::size_t t = 0; t < n; ++t) {
        if (t > 0) log_rk = params.a + params.b * log_rk + params.c * rng.normal();
        rk[t] = std::exp(log_rk);
    }
    return rk;
}

SimulatedPath simulate_dgp(const DgpConfig& config) {
    config.validate();
    const std::size_t n = config.horizon;
    SimulatedPath path;
    if (config.rk_source == RkSource::FromFile) {
        path.rk.assign(config.rk_series.begin(), config.rk_series.begin() + static_cast<std::ptrdiff_t>(n));
    } else {
        Rng rk_rng(config.seed, 0);
        path.rk = synthetic_rk(n, config.synthetic, rk_rng);
    }

    path.sigma.resize(n);
    path.returns.resize(n);
    Rng rng(config.seed, 1);
    const double scale = std::sqrt((config.nu - 2.0) / config.nu);
    double s2 = config.sigma0_sq;
    for (std::size_t t = 0; t < n; ++t) {
        // path.sigma[t] is sigma_{t+1}, driven by rk[t]
        s2 = config.coeff_rk * path.rk[t] + config.coeff_lag * s2;
        if (!(s2 > 0.0)) throw NumericalError("dgp: conditional variance collapsed to zero");
        path.sigma[t] = std::sqrt(s2);
        path.returns[t] = scale * path.sigma[t] * rng.student_t(config.nu);
    }
    return path;
}

ForecastSeries make_forecaster(std::span<const double> sigma, const ForecasterSpec& spec, Level alpha, double nu,
                               std::uint64_t seed) {
    if (!(spec.zeta >= 0.0)) throw std::invalid_argument("forecaster: zeta must be nonnegative");
    if (!(nu > 2.0)) throw std::invalid_argument("forecaster: nu must exceed 2");
    const double q = student_t_quantile(alpha.value(), nu);
    const double es = student_t_es(alpha, nu);
    const double unit = std::sqrt((nu - 2.0) / nu);
    const double sd = std::sqrt(spec.zeta);

    Rng rng(seed);
    ForecastSeries out;
    out.forecasts.reserve(sigma.size());
    out.errors.reserve(sigma.size());
    for (double s : sigma) {
        if (!(s > 0.0)) throw std::invalid_argument("forecaster: sigma must be positive");
        const double scale = unit * s;
        const double eps = spec.zeta > 0.0 ? sd * rng.normal() : 0.0;
        out.forecasts.emplace_back(scale * q + eps, scale * es + eps);
        out.errors.push_back(eps);
    }
    return out;
}

StudyResult size_power_study(const StudyConfig& config) {
    if (config.replications < 1) throw std::invalid_argument("study: replications must be at least 1");
    config.dgp.validate();
    config.test.validate();
    for (double a : config.nominal_levels) {
        if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("study: nominal levels must lie in (0, 1)");
    }

    const std::uint64_t seed = config.dgp.seed;
    StudyResult result;
    result.minimal_p.resize(config.replications);
    parallel_for(config.replications, config.threads, [&](std::size_t r) {
        DgpConfig dgp = config.dgp;
        dgp.seed = derive_seed(seed, 4 * r);
        const auto path = simulate_dgp(dgp);
        const Level alpha = config.test.alpha_level;
        auto f1 = make_forecaster(path.sigma, {config.zeta1}, alpha, dgp.nu, derive_seed(seed, 4 * r + 1));
        auto f2 = make_forecaster(path.sigma, {config.zeta2}, alpha, dgp.nu, derive_seed(seed, 4 * r + 2));
        const auto series = EvaluationSeries::make(std::move(f1.forecasts), std::move(f2.forecasts), path.returns);

        DominanceTestConfig test = config.test;
        test.seed = derive_seed(seed, 4 * r + 3);
        test.threads = 1;
        const auto panel = compute_diff_panel(series, test);
        result.minimal_p[r] = dominance_test_on_panel(panel, test, Direction::A_dominates_B, 0).minimal_wy_p;
    });

    const double n = static_cast<double>(config.replications);
    for (double level : config.nominal_levels) {
        std::size_t rejections = 0;
        for (double p : result.minimal_p) {
            if (p < level) ++rejections;
        }
        const double rate = static_cast<double>(rejections) / n;
        result.rows.push_back({config.zeta1, config.zeta2, config.dgp.horizon, level, rate,
                               std::sqrt(rate * (1.0 - rate) / n), config.replications});
    }
    return result;
}

std::string study_csv(std::span<const StudyRow> rows) {
    std::ostringstream out;
    out << "zeta1,zeta2,T,nominal_level,rejection_rate,se,replications\n";
    using io::format_double;
    for (const auto& r : rows) {
        out << format_double(r.zeta1) << ',' << format_double(r.zeta2) << ',' << r.horizon << ','
            << format_double(r.nominal_level) << ',' << format_double(r.rejection_rate) << ',' << format_double(r.se)
            << ',' << r.replications << '\n';
    }
    return out.str();
}

} // namespace murphyes

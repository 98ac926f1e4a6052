#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "murphyes/dominance.hpp"
#include "murphyes/models.hpp"
#include "murphyes/murphy.hpp"
#include "murphyes/options.hpp"
#include "murphyes/simulation.hpp"

#include <string>
#include <vector>

namespace py = pybind11;
using namespace murphyes;

namespace {

std::vector<JointForecast> joint(const std::vector<double>& var, const std::vector<double>& es) {
    if (var.size() != es.size()) throw std::invalid_argument("var and es must have equal length");
    std::vector<JointForecast> out;
    out.reserve(var.size());
    for (std::size_t i = 0; i < var.size(); ++i) out.emplace_back(var[i], es[i]);
    return out;
}

DiscreteMixture mixture(const std::vector<std::pair<double, double>>& pts) {
    DiscreteMixture m;
    for (const auto& [v, w] : pts) m.points.push_back({v, w});
    return m;
}

VarianceEstimator variance_from(const std::string& name, std::size_t lag) {
    if (name == "iid") return VarianceEstimator::iid();
    if (name == "nw") return VarianceEstimator::newey_west(lag);
    throw std::invalid_argument("variance must be 'iid' or 'nw'");
}

GridKind kind_from(const std::string& name) {
    if (name == "v1") return GridKind::V1;
    if (name == "v2") return GridKind::V2;
    throw std::invalid_argument("kind must be 'v1' or 'v2'");
}

ModelKind model_from(const std::string& name) {
    if (name == "HEAVY" || name == "heavy") return ModelKind::HEAVY;
    if (name == "GARCH" || name == "garch") return ModelKind::GARCH;
    if (name == "HS" || name == "hs") return ModelKind::HS;
    throw std::invalid_argument("model must be HEAVY, GARCH or HS");
}

DominanceTestConfig test_config(double alpha, std::size_t grid, std::size_t permutations, std::size_t block,
                                const std::string& variance, std::size_t lag, const std::string& scores,
                                std::uint64_t seed, std::size_t threads) {
    DominanceTestConfig c;
    c.alpha_level = Level(alpha);
    c.grid_size = grid;
    c.permutations = permutations;
    c.block_length = block;
    c.variance = variance_from(variance, lag);
    if (scores == "s2") {
        c.score_set = ScoreSet::S2Only;
    } else if (scores == "both") {
        c.score_set = ScoreSet::BothFamilies;
    } else {
        throw std::invalid_argument("scores must be 's2' or 'both'");
    }
    c.seed = seed;
    c.threads = threads;
    return c;
}

py::dict result_dict(const DominanceTestResult& r) {
    py::list grids;
    for (const auto& g : r.grids) grids.append(g.values());
    py::dict d;
    d["hypothesis"] = std::string(to_string(r.direction));
    d["minimal_wy_p"] = r.minimal_wy_p;
    d["pointwise_p"] = r.pointwise_p;
    d["adjusted_p"] = r.adjusted_p;
    d["grids"] = grids;
    return d;
}

EvaluationSeries series_from(const std::vector<double>& var_a, const std::vector<double>& es_a,
                             const std::vector<double>& var_b, const std::vector<double>& es_b,
                             const std::vector<double>& y) {
    return EvaluationSeries::make(joint(var_a, es_a), var_b.empty() ? std::vector<JointForecast>{} : joint(var_b, es_b),
                                  y);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "C++ core of murphyes";

    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<JointForecast>(m, "JointForecast")
        .def(py::init<double, double>(), py::arg("var"), py::arg("es"))
        .def_property_readonly("var", &JointForecast::var)
        .def_property_readonly("es", &JointForecast::es)
        .def("__repr__", [](const JointForecast& f) {
            return "JointForecast(var=" + std::to_string(f.var()) + ", es=" + std::to_string(f.es()) + ")";
        });

    m.def(
        "elementary_score_v1",
        [](double x1, double y, double v1, double alpha) { return elementary_score_v1(x1, y, v1, Level(alpha)); },
        py::arg("x1"), py::arg("y"), py::arg("v1"), py::arg("alpha") = 0.025);
    m.def(
        "elementary_score_v2",
        [](double x1, double x2, double y, double v2, double alpha) {
            return elementary_score_v2(JointForecast(x1, x2), y, v2, Level(alpha));
        },
        py::arg("x1"), py::arg("x2"), py::arg("y"), py::arg("v2"), py::arg("alpha") = 0.025);
    m.def(
        "fz_score",
        [](double x1, double x2, double y, double alpha, std::function<double(double)> g1,
           std::function<double(double)> g2, std::function<double(double)> g2_antiderivative) {
            return fz_score(JointForecast(x1, x2), y, Level(alpha), FzSpec{g1, g2, g2_antiderivative});
        },
        py::arg("x1"), py::arg("x2"), py::arg("y"), py::arg("alpha"), py::arg("g1"), py::arg("g2"),
        py::arg("g2_antiderivative"), "General FZ score; g2 must be positive and increasing.");
    m.def(
        "mixture_score",
        [](double x1, double x2, double y, double alpha, const std::vector<std::pair<double, double>>& h2,
           const std::vector<std::pair<double, double>>& h1) {
            const JointForecast fc(x1, x2);
            if (h1.empty()) return mixture_score(fc, y, Level(alpha), mixture(h2));
            return mixture_score(fc, y, Level(alpha), mixture(h2), mixture(h1));
        },
        py::arg("x1"), py::arg("x2"), py::arg("y"), py::arg("alpha"), py::arg("h2"),
        py::arg("h1") = std::vector<std::pair<double, double>>{},
        "Weighted elementary scores; h2 and h1 are lists of (threshold, weight).");

    m.def(
        "murphy_curve",
        [](const std::vector<double>& var, const std::vector<double>& es, const std::vector<double>& y, double alpha,
           std::size_t grid_size, const std::string& kind) {
            const auto series = series_from(var, es, {}, {}, y);
            const std::vector<std::vector<JointForecast>> sets{series.forecasts_a};
            const auto grid = build_threshold_grid(sets, y, grid_size, kind_from(kind));
            const auto c = murphy_curve(series, Method::A, grid, Level(alpha));
            py::dict d;
            d["grid"] = grid.values();
            d["mean_scores"] = c.mean_scores;
            d["variance"] = c.pointwise_variance;
            return d;
        },
        py::arg("var"), py::arg("es"), py::arg("y"), py::arg("alpha") = 0.025, py::arg("grid_size") = 50,
        py::arg("kind") = "v2");
    m.def(
        "murphy_diff",
        [](const std::vector<double>& var_a, const std::vector<double>& es_a, const std::vector<double>& var_b,
           const std::vector<double>& es_b, const std::vector<double>& y, double alpha, std::size_t grid_size,
           const std::string& kind, const std::string& variance, std::size_t lag) {
            const auto series = series_from(var_a, es_a, var_b, es_b, y);
            const std::vector<std::vector<JointForecast>> sets{series.forecasts_a, series.forecasts_b};
            const auto grid = build_threshold_grid(sets, y, grid_size, kind_from(kind));
            const auto c = murphy_diff(series, grid, Level(alpha), variance_from(variance, lag));
            py::dict d;
            d["grid"] = grid.values();
            d["mean_diffs"] = c.mean_diffs;
            d["ci_lower"] = c.ci_lower;
            d["ci_upper"] = c.ci_upper;
            d["a_dominates_on_grid"] = c.a_dominates_on_grid;
            return d;
        },
        py::arg("var_a"), py::arg("es_a"), py::arg("var_b"), py::arg("es_b"), py::arg("y"),
        py::arg("alpha") = 0.025, py::arg("grid_size") = 50, py::arg("kind") = "v2", py::arg("variance") = "iid",
        py::arg("lag") = 3);

    m.def(
        "dominance_test",
        [](const std::vector<double>& var_a, const std::vector<double>& es_a, const std::vector<double>& var_b,
           const std::vector<double>& es_b, const std::vector<double>& y, double alpha, std::size_t grid_size,
           std::size_t permutations, std::size_t block, const std::string& variance, std::size_t lag,
           const std::string& scores, std::uint64_t seed, std::size_t threads) {
            const auto series = series_from(var_a, es_a, var_b, es_b, y);
            const auto config =
                test_config(alpha, grid_size, permutations, block, variance, lag, scores, seed, threads);
            std::pair<DominanceTestResult, DominanceTestResult> r;
            {
                py::gil_scoped_release release;
                r = dominance_test(series, config);
            }
            return py::make_tuple(result_dict(r.first), result_dict(r.second));
        },
        py::arg("var_a"), py::arg("es_a"), py::arg("var_b"), py::arg("es_b"), py::arg("y"),
        py::arg("alpha") = 0.025, py::arg("grid_size") = 50, py::arg("permutations") = 500, py::arg("block") = 1,
        py::arg("variance") = "iid", py::arg("lag") = 3, py::arg("scores") = "s2", py::arg("seed") = 1,
        py::arg("threads") = 1, "Returns results for H0 'A dominates B' and H0 'B dominates A'.");
    m.def(
        "westfall_young_adjust",
        [](const std::vector<double>& observed, const std::vector<std::vector<double>>& simulated) {
            std::vector<double> flat;
            for (const auto& row : simulated) {
                if (row.size() != observed.size()) throw std::invalid_argument("replicate length mismatch");
                flat.insert(flat.end(), row.begin(), row.end());
            }
            const auto r = westfall_young_adjust(observed, flat, simulated.size());
            return py::make_tuple(r.raw, r.adjusted);
        },
        py::arg("observed"), py::arg("simulated"));

    m.def(
        "student_t_es", [](double alpha, double nu) { return student_t_es(Level(alpha), nu); }, py::arg("alpha"),
        py::arg("nu") = 6.0);
    m.def(
        "scaled_t_var_es",
        [](double sigma, double alpha, double nu) {
            const auto f = scaled_t_var_es(sigma, Level(alpha), nu);
            return py::make_tuple(f.var(), f.es());
        },
        py::arg("sigma"), py::arg("alpha") = 0.025, py::arg("nu") = 6.0);
    m.def(
        "hs_forecast",
        [](const std::vector<double>& window, double alpha) {
            const auto f = hs_forecast(window, Level(alpha));
            return py::make_tuple(f.var(), f.es());
        },
        py::arg("window"), py::arg("alpha") = 0.025);
    m.def(
        "fit_qml",
        [](const std::vector<double>& returns, const std::vector<double>& driver, const std::string& kind) {
            const Driver d = kind == "rk" ? Driver::RealizedKernel : Driver::SquaredReturn;
            if (kind != "rk" && kind != "r2") throw std::invalid_argument("kind must be 'rk' or 'r2'");
            const auto fit = fit_qml(returns, driver, d);
            py::dict out;
            out["omega"] = fit.params.omega;
            out["gamma"] = fit.params.gamma;
            out["beta"] = fit.params.beta;
            out["log_likelihood"] = fit.log_likelihood;
            out["converged"] = fit.converged;
            return out;
        },
        py::arg("returns"), py::arg("driver"), py::arg("kind"));
    m.def(
        "rolling_evaluation",
        [](const std::vector<std::string>& dates, const std::vector<double>& close, const std::vector<double>& rk,
           const std::string& model, std::size_t window, double alpha, double nu) {
            MarketData data{dates, close, rk};
            RollingConfig config;
            config.window = window;
            config.alpha = Level(alpha);
            config.nu = nu;
            ModelForecasts f;
            {
                py::gil_scoped_release release;
                f = rolling_evaluation(data, model_from(model), config);
            }
            std::vector<double> var, es;
            for (const auto& x : f.forecasts) {
                var.push_back(x.var());
                es.push_back(x.es());
            }
            const auto s = summarize(f.forecasts, f.realizations);
            py::dict out;
            out["dates"] = f.dates;
            out["var"] = var;
            out["es"] = es;
            out["realization"] = f.realizations;
            out["refit_dates"] = f.refit_dates;
            out["dropped_rows"] = f.dropped_rows;
            out["average_var"] = s.average_var;
            out["average_es"] = s.average_es;
            out["violation_rate"] = s.violation_rate;
            return out;
        },
        py::arg("dates"), py::arg("close"), py::arg("rk") = std::vector<double>{}, py::arg("model") = "HS",
        py::arg("window") = 1500, py::arg("alpha") = 0.025, py::arg("nu") = 6.0,
        "Rolling one-day-ahead (VaR, ES) forecasts; missing rk values are NaN.");

    m.def(
        "simulate_dgp",
        [](std::size_t horizon, std::uint64_t seed, const std::vector<double>& rk) {
            DgpConfig c;
            c.horizon = horizon;
            c.seed = seed;
            if (!rk.empty()) {
                c.rk_source = RkSource::FromFile;
                c.rk_series = rk;
            }
            const auto p = simulate_dgp(c);
            py::dict out;
            out["rk"] = p.rk;
            out["sigma"] = p.sigma;
            out["returns"] = p.returns;
            return out;
        },
        py::arg("horizon") = 500, py::arg("seed") = 1, py::arg("rk") = std::vector<double>{});
    m.def(
        "size_power_study",
        [](double zeta1, double zeta2, std::size_t horizon, std::size_t replications,
           const std::vector<double>& levels, std::size_t permutations, std::size_t grid_size, std::uint64_t seed,
           std::size_t threads) {
            StudyConfig c;
            c.zeta1 = zeta1;
            c.zeta2 = zeta2;
            c.dgp.horizon = horizon;
            c.dgp.seed = seed;
            c.replications = replications;
            c.nominal_levels = levels;
            c.test.permutations = permutations;
            c.test.grid_size = grid_size;
            c.threads = threads;
            StudyResult r;
            {
                py::gil_scoped_release release;
                r = size_power_study(c);
            }
            py::list rows;
            for (const auto& row : r.rows) {
                py::dict d;
                d["nominal_level"] = row.nominal_level;
                d["rejection_rate"] = row.rejection_rate;
                d["se"] = row.se;
                rows.append(d);
            }
            return py::make_tuple(rows, r.minimal_p);
        },
        py::arg("zeta1"), py::arg("zeta2"), py::arg("horizon") = 500, py::arg("replications") = 200,
        py::arg("levels") = std::vector<double>{0.05}, py::arg("permutations") = 500, py::arg("grid_size") = 50,
        py::arg("seed") = 1, py::arg("threads") = 1);

    m.def(
        "verify_pricing_equivalence",
        [](double spot, double vol, double maturity, double alpha) {
            OptionScenario s;
            s.spot0 = spot;
            s.annual_vol = vol;
            s.maturity_years = maturity;
            s.alpha = Level(alpha);
            const auto c = verify_pricing_equivalence(s);
            py::dict out;
            out["var"] = c.var_es.var();
            out["es"] = c.var_es.es();
            out["p_es"] = c.p_es;
            out["p_bs"] = c.p_bs;
            out["abs_diff"] = c.abs_diff;
            return out;
        },
        py::arg("spot") = 100.0, py::arg("vol") = 0.2, py::arg("maturity") = 1.0, py::arg("alpha") = 0.025);
    m.def(
        "black_scholes_put_zero_rate",
        [](double spot, double vol, double maturity, double strike) {
            OptionScenario s;
            s.spot0 = spot;
            s.annual_vol = vol;
            s.maturity_years = maturity;
            s.strike = strike;
            return black_scholes_put_zero_rate(s);
        },
        py::arg("spot"), py::arg("vol"), py::arg("maturity"), py::arg("strike"));
}

#include "commands.hpp"

#include "manifest.hpp"

#include "murphyes/dominance.hpp"
#include "murphyes/io.hpp"
#include "murphyes/models.hpp"
#include "murphyes/murphy.hpp"
#include "murphyes/options.hpp"
#include "murphyes/parallel.hpp"
#include "murphyes/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace murphyes::cli {

using nlohmann::ordered_json;

namespace {

ModelKind parse_model(const std::string& name) {
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "heavy") return ModelKind::HEAVY;
    if (s == "garch") return ModelKind::GARCH;
    if (s == "hs") return ModelKind::HS;
    throw std::invalid_argument("unknown model '" + name + "'");
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

VarianceEstimator parse_variance(const std::string& name, std::size_t lag) {
    if (name == "iid") return VarianceEstimator::iid();
    if (name == "nw") return VarianceEstimator::newey_west(lag);
    throw std::invalid_argument("unknown variance estimator '" + name + "'");
}

ScoreSet parse_scores(const std::string& name) {
    if (name == "s2") return ScoreSet::S2Only;
    if (name == "both") return ScoreSet::BothFamilies;
    throw std::invalid_argument("unknown score set '" + name + "'");
}

DominanceTestConfig make_test_config(const TestFlags& f, std::uint64_t seed, std::size_t threads) {
    DominanceTestConfig c;
    c.alpha_level = Level(f.alpha);
    c.grid_size = f.grid;
    c.permutations = f.permutations;
    c.block_length = f.block;
    c.variance = parse_variance(f.variance, f.lag);
    c.score_set = parse_scores(f.scores);
    if (f.reference == "normal") {
        c.reference = PValueReference::Normal;
    } else if (f.reference == "t") {
        c.reference = PValueReference::StudentT;
    } else {
        throw std::invalid_argument("unknown p-value reference '" + f.reference + "'");
    }
    c.seed = seed;
    c.threads = threads;
    c.validate();
    return c;
}

ordered_json echo(const TestFlags& f) {
    return {{"alpha", f.alpha},          {"grid", f.grid},     {"permutations", f.permutations},
            {"block", f.block},          {"variance", f.variance}, {"lag", f.lag},
            {"scores", f.scores},        {"reference", f.reference}};
}

ordered_json grid_json(const ThresholdGrid& g) {
    return {{"kind", g.kind() == GridKind::V1 ? "v1" : "v2"}, {"values", g.values()}};
}

ordered_json result_json(const DominanceTestResult& r) {
    ordered_json grids = ordered_json::array();
    for (const auto& g : r.grids) grids.push_back(grid_json(g));
    return {{"hypothesis", to_string(r.direction)},
            {"minimal_wy_p", r.minimal_wy_p},
            {"both_families_iid_warning", r.both_families_iid_warning},
            {"grids", grids},
            {"pointwise_p", r.pointwise_p},
            {"adjusted_p", r.adjusted_p}};
}

struct Pair {
    io::ForecastFile a, b;
    EvaluationSeries series;
};

Pair load_pair(const std::string& a, const std::string& b, RunManifest& manifest) {
    const auto ta = io::read_text(a);
    const auto tb = io::read_text(b);
    manifest.add_input(a, ta);
    manifest.add_input(b, tb);
    auto fa = io::parse_forecast_csv(ta);
    auto fb = io::parse_forecast_csv(tb);
    auto series = io::align(fa, fb);
    return {std::move(fa), std::move(fb), std::move(series)};
}

} // namespace

int run_evaluate(const EvaluateArgs& args) {
    RunManifest manifest("evaluate", args.common.out_dir);
    const auto text = io::read_text(args.input);
    manifest.add_input(args.input, text);
    const auto data = io::parse_market_csv(text);

    std::vector<ModelKind> models;
    for (const auto& m : args.models) models.push_back(parse_model(m));
    if (models.empty()) throw std::invalid_argument("no models requested");
    for (auto m : models) {
        if (m == ModelKind::HEAVY && !data.has_rk()) throw DataError("HEAVY requested but the input has no rk column");
    }

    RollingConfig config;
    config.window = args.window;
    config.alpha = Level(args.alpha);
    config.nu = args.nu;
    config.validate();

    std::vector<ModelForecasts> results(models.size());
    parallel_for(models.size(), args.common.threads,
                 [&](std::size_t i) { results[i] = rolling_evaluation(data, models[i], config); });

    std::ostringstream summary;
    summary << "model,average_var,average_es,violation_rate,count,refits,dropped_rows\n";
    for (const auto& r : results) {
        const std::string name = lower(to_string(r.model));
        manifest.write_artifact("forecasts_" + name + ".csv", io::forecast_csv(r));
        const auto s = summarize(r.forecasts, r.realizations);
        summary << to_string(r.model) << ',' << io::format_double(s.average_var) << ','
                << io::format_double(s.average_es) << ',' << io::format_double(s.violation_rate) << ',' << s.count
                << ',' << r.refit_dates.size() << ',' << r.dropped_rows << '\n';
        if (r.dropped_rows > 0) {
            std::cerr << "warning: " << to_string(r.model) << " dropped " << r.dropped_rows
                      << " rows with missing rk\n";
        }
    }
    manifest.write_artifact("summary.csv", summary.str());
    std::cout << summary.str();

    manifest.config = {{"models", args.models}, {"window", args.window}, {"alpha", args.alpha}, {"nu", args.nu}};
    manifest.seed = args.common.seed;
    manifest.write();
    return 0;
}

int run_murphy(const MurphyArgs& args) {
    RunManifest manifest("murphy", args.common.out_dir);
    const auto pair = load_pair(args.a, args.b, manifest);
    const Level alpha(args.alpha);
    const auto variance = parse_variance(args.variance, args.lag);
    const auto score_set = parse_scores(args.scores);

    std::vector<GridKind> kinds{GridKind::V2};
    if (score_set == ScoreSet::BothFamilies) kinds.insert(kinds.begin(), GridKind::V1);
    const std::vector<std::vector<JointForecast>> sets{pair.series.forecasts_a, pair.series.forecasts_b};

    for (auto kind : kinds) {
        const auto grid = build_threshold_grid(sets, pair.series.realizations, args.grid, kind);
        const std::string suffix = kind == GridKind::V1 ? "v1" : "v2";
        auto ca = murphy_curve(pair.series, Method::A, grid, alpha, args.common.threads);
        auto cb = murphy_curve(pair.series, Method::B, grid, alpha, args.common.threads);
        ca.label = args.label_a;
        cb.label = args.label_b;
        auto d = murphy_diff(pair.series, grid, alpha, variance, kBand95, args.common.threads);
        d.label = args.label_a + " - " + args.label_b;

        const std::vector<CurveData> curves{ca, cb};
        const std::vector<CurveData> diff{d};
        manifest.write_artifact("curves_" + suffix + ".csv", emit_curve_data(curves, CurveFormat::CSV));
        manifest.write_artifact("curves_" + suffix + ".svg", emit_curve_data(curves, CurveFormat::SVG));
        manifest.write_artifact("diff_" + suffix + ".csv", emit_curve_data(diff, CurveFormat::CSV));
        manifest.write_artifact("diff_" + suffix + ".svg", emit_curve_data(diff, CurveFormat::SVG));
        std::cout << suffix << ": " << args.label_a << (d.a_dominates_on_grid ? " weakly dominates " : " does not dominate ")
                  << args.label_b << " on the grid\n";
    }

    manifest.config = {{"alpha", args.alpha},       {"grid", args.grid},   {"variance", args.variance},
                       {"lag", args.lag},           {"scores", args.scores}, {"label_a", args.label_a},
                       {"label_b", args.label_b}};
    manifest.seed = args.common.seed;
    manifest.write();
    return 0;
}

int run_test(const TestArgs& args) {
    RunManifest manifest("test", args.common.out_dir);
    const auto pair = load_pair(args.a, args.b, manifest);
    const auto config = make_test_config(args.test, args.common.seed, args.common.threads);
    const auto [ab, ba] = dominance_test(pair.series, config);

    ordered_json out;
    out["seed"] = args.common.seed;
    out["config"] = echo(args.test);
    out["periods"] = pair.series.size();
    out["results"] = {result_json(ab), result_json(ba)};
    if (ab.both_families_iid_warning) {
        std::cerr << "warning: both score families with IID variance; S_v1 differences are often serially "
                     "dependent, consider --variance nw\n";
    }
    manifest.write_artifact("test.json", out.dump(2) + "\n");
    std::cout << to_string(ab.direction) << " minimal_wy_p=" << io::format_double(ab.minimal_wy_p) << '\n'
              << to_string(ba.direction) << " minimal_wy_p=" << io::format_double(ba.minimal_wy_p) << '\n';

    manifest.config = echo(args.test);
    manifest.seed = args.common.seed;
    manifest.write();
    return 0;
}

int run_simulate(const SimulateArgs& args) {
    RunManifest manifest("simulate", args.common.out_dir);
    DgpConfig dgp;
    dgp.nu = args.nu;
    dgp.seed = args.common.seed;
    if (!args.rk_file.empty()) {
        const auto text = io::read_text(args.rk_file);
        manifest.add_input(args.rk_file, text);
        const auto data = io::parse_market_csv(text);
        if (!data.has_rk()) throw DataError(args.rk_file + ": no rk column");
        for (std::size_t i = 0; i < data.rk.size(); ++i) {
            if (std::isnan(data.rk[i])) throw DataError(args.rk_file + ": missing rk on " + data.dates[i]);
        }
        dgp.rk_source = RkSource::FromFile;
        dgp.rk_series = data.rk;
    }

    std::vector<StudyRow> rows;
    for (std::size_t horizon : args.horizons) {
        for (double z1 : args.zeta1) {
            StudyConfig study;
            study.dgp = dgp;
            study.dgp.horizon = horizon;
            study.zeta1 = z1;
            study.zeta2 = args.zeta2;
            study.replications = args.replications;
            study.test = make_test_config(args.test, args.common.seed, 1);
            study.nominal_levels = args.levels;
            study.threads = args.common.threads;
            const auto result = size_power_study(study);
            rows.insert(rows.end(), result.rows.begin(), result.rows.end());
        }
    }
    const auto csv = study_csv(rows);
    manifest.write_artifact("study.csv", csv);
    std::cout << csv;

    manifest.config = {{"zeta1", args.zeta1},
                       {"zeta2", args.zeta2},
                       {"T", args.horizons},
                       {"replications", args.replications},
                       {"levels", args.levels},
                       {"rk_source", args.rk_file.empty() ? "synthetic" : "file"},
                       {"nu", args.nu},
                       {"test", echo(args.test)}};
    manifest.seed = args.common.seed;
    manifest.write();
    return 0;
}

int run_price(const PriceArgs& args) {
    RunManifest manifest("price", args.common.out_dir);
    ordered_json rows = ordered_json::array();
    double worst = 0.0;
    for (double a : args.alphas) {
        OptionScenario scn;
        scn.spot0 = args.spot;
        scn.annual_vol = args.vol;
        scn.maturity_years = args.maturity;
        scn.alpha = Level(a);
        const auto check = verify_pricing_equivalence(scn);
        worst = std::max(worst, check.abs_diff);
        rows.push_back({{"alpha", a},
                        {"var", check.var_es.var()},
                        {"es", check.var_es.es()},
                        {"p_es", check.p_es},
                        {"p_bs", check.p_bs},
                        {"abs_diff", check.abs_diff}});
    }
    ordered_json out;
    out["spot"] = args.spot;
    out["annual_vol"] = args.vol;
    out["maturity_years"] = args.maturity;
    out["scenarios"] = rows;
    out["max_abs_diff"] = worst;
    manifest.write_artifact("price.json", out.dump(2) + "\n");
    std::cout << out.dump(2) << '\n';

    manifest.config = {{"spot", args.spot}, {"vol", args.vol}, {"maturity", args.maturity}, {"alpha", args.alphas}};
    manifest.seed = args.common.seed;
    manifest.write();
    return 0;
}

} // namespace murphyes::cli

#include <doctest.h>

#include "murphyes/models.hpp"
#include "murphyes/murphy.hpp"
#include "murphyes/rng.hpp"
#include "murphyes/simulation.hpp"

#include <json.hpp>

#include <cmath>
#include <string>
#include <vector>

using namespace murphyes;

namespace {

const Level kAlpha(0.025);

// Perfect and noisy (zeta = 1) forecasts on one simulated path.
EvaluationSeries simulated_pair(std::size_t horizon, std::uint64_t seed) {
    DgpConfig dgp;
    dgp.horizon = horizon;
    dgp.seed = seed;
    const auto path = simulate_dgp(dgp);
    auto perfect = make_forecaster(path.sigma, {0.0}, kAlpha, 6.0, seed + 1);
    auto noisy = make_forecaster(path.sigma, {1.0}, kAlpha, 6.0, seed + 2);
    return EvaluationSeries::make(perfect.forecasts, noisy.forecasts, path.returns);
}

ThresholdGrid grid_for(const EvaluationSeries& s, std::size_t n = 50, GridKind kind = GridKind::V2) {
    const std::vector<std::vector<JointForecast>> sets{s.forecasts_a, s.forecasts_b};
    return build_threshold_grid(sets, s.realizations, n, kind);
}

EvaluationSeries swapped(const EvaluationSeries& s) {
    auto out = s;
    std::swap(out.forecasts_a, out.forecasts_b);
    return out;
}

} // namespace

TEST_CASE("series validation") {
    CHECK_THROWS(EvaluationSeries::make({JointForecast(-1, -2)}, {}, {0.0, 1.0}));
    EvaluationSeries s = EvaluationSeries::make({JointForecast(-1, -2), JointForecast(-1, -2)}, {}, {0.0, 1.0});
    s.times = {3, 3};
    CHECK_THROWS(s.validate());
}

TEST_CASE("vanishing tail for a point-mass realization series") {
    std::vector<JointForecast> fc(20, JointForecast(0.0, 0.0));
    const auto s = EvaluationSeries::make(fc, {}, std::vector<double>(20, 0.0));
    const ThresholdGrid grid({0.5, 1.0, 2.0}, GridKind::V2);
    const auto c = murphy_curve(s, Method::A, grid, kAlpha);
    for (double m : c.mean_scores) CHECK(m == 0.0);
    for (double v : c.pointwise_variance) CHECK(v == 0.0);
}

TEST_CASE("single observation curve equals elementary scores") {
    const JointForecast fc(-2, -3);
    const auto s = EvaluationSeries::make({fc}, {}, {-4.0});
    const ThresholdGrid grid({-3.0, -2.5, 0.0}, GridKind::V2);
    const auto c = murphy_curve(s, Method::A, grid, kAlpha);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(c.mean_scores[i] == elementary_score_v2(fc, -4.0, grid[i], kAlpha));
        CHECK(c.pointwise_variance[i] == 0.0);
    }
    const ThresholdGrid g1({-3.0, 0.0}, GridKind::V1);
    CHECK(murphy_curve(s, Method::A, g1, kAlpha).mean_scores[0] == elementary_score_v1(-2, -4, -3, kAlpha));
}

TEST_CASE("perfect forecaster curve lies below the noisy one") {
    int below = 0;
    int total = 0;
    std::vector<double> avg_diff(50, 0.0);
    for (std::uint64_t r = 0; r < 30; ++r) {
        const auto s = simulated_pair(500, 100 + r);
        const ThresholdGrid grid(
            [] {
                std::vector<double> v;
                for (int i = 0; i < 50; ++i) v.push_back(-8.0 + 10.0 * i / 49.0);
                return v;
            }(),
            GridKind::V2);
        const auto ca = murphy_curve(s, Method::A, grid, kAlpha);
        const auto cb = murphy_curve(s, Method::B, grid, kAlpha);
        for (std::size_t i = 0; i < 50; ++i) avg_diff[i] += ca.mean_scores[i] - cb.mean_scores[i];
    }
    for (double d : avg_diff) {
        ++total;
        if (d <= 0.0) ++below;
    }
    CHECK(below == total);
}

TEST_CASE("murphy_diff on identical forecasts is flat zero with collapsed band") {
    const auto s0 = simulated_pair(200, 7);
    const auto s = EvaluationSeries::make(s0.forecasts_a, s0.forecasts_a, s0.realizations);
    const auto d = murphy_diff(s, grid_for(s), kAlpha, VarianceEstimator::iid());
    for (std::size_t i = 0; i < d.mean_diffs.size(); ++i) {
        CHECK(d.mean_diffs[i] == 0.0);
        CHECK(d.ci_lower[i] == 0.0);
        CHECK(d.ci_upper[i] == 0.0);
    }
    CHECK(d.a_dominates_on_grid);
}

TEST_CASE("murphy_diff antisymmetry, band ordering and noise direction") {
    const auto s = simulated_pair(5000, 3);
    const auto grid = grid_for(s);
    for (auto est : {VarianceEstimator::iid(), VarianceEstimator::newey_west(3)}) {
        const auto d = murphy_diff(s, grid, kAlpha, est);
        const auto e = murphy_diff(swapped(s), grid, kAlpha, est);
        int nonpositive = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(e.mean_diffs[i] == -d.mean_diffs[i]);
            CHECK(d.ci_lower[i] <= d.mean_diffs[i]);
            CHECK(d.mean_diffs[i] <= d.ci_upper[i]);
            if (d.mean_diffs[i] <= 0.0) ++nonpositive;
        }
        CHECK(nonpositive >= 45);
    }
}

TEST_CASE("curves are independent of the thread count") {
    const auto s = simulated_pair(400, 21);
    const auto grid = grid_for(s);
    const auto a1 = murphy_curve(s, Method::B, grid, kAlpha, 1);
    const auto a4 = murphy_curve(s, Method::B, grid, kAlpha, 4);
    CHECK(a1.mean_scores == a4.mean_scores);
    CHECK(a1.pointwise_variance == a4.pointwise_variance);
    const auto d1 = murphy_diff(s, grid, kAlpha, VarianceEstimator::newey_west(3), kBand95, 1);
    const auto d3 = murphy_diff(s, grid, kAlpha, VarianceEstimator::newey_west(3), kBand95, 3);
    CHECK(d1.ci_upper == d3.ci_upper);
}

TEST_CASE("interleaving two series averages their curves") {
    const auto s1 = simulated_pair(300, 40);
    const auto s2 = simulated_pair(300, 41);
    std::vector<JointForecast> fc;
    std::vector<double> y;
    for (std::size_t t = 0; t < 300; ++t) {
        fc.push_back(s1.forecasts_b[t]);
        y.push_back(s1.realizations[t]);
        fc.push_back(s2.forecasts_b[t]);
        y.push_back(s2.realizations[t]);
    }
    const auto mixed = EvaluationSeries::make(fc, {}, y);
    const auto grid = build_threshold_grid(std::vector<std::vector<JointForecast>>{fc}, y, 40, GridKind::V2);
    const auto c1 = murphy_curve(EvaluationSeries::make(s1.forecasts_b, {}, s1.realizations), Method::A, grid, kAlpha);
    const auto c2 = murphy_curve(EvaluationSeries::make(s2.forecasts_b, {}, s2.realizations), Method::A, grid, kAlpha);
    const auto cm = murphy_curve(mixed, Method::A, grid, kAlpha);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(cm.mean_scores[i] == doctest::Approx(0.5 * (c1.mean_scores[i] + c2.mean_scores[i])).epsilon(1e-12));
    }
}

TEST_CASE("emit_curve_data formats") {
    const auto s = simulated_pair(100, 9);
    const auto grid = grid_for(s, 5);
    auto ca = murphy_curve(s, Method::A, grid, kAlpha);
    const auto cb = murphy_curve(s, Method::B, grid, kAlpha);
    const auto d = murphy_diff(s, grid, kAlpha, VarianceEstimator::iid());

    const auto csv = emit_curve_data({ca}, CurveFormat::CSV);
    CHECK(csv.rfind("v,mean_score,variance\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);

    const auto dcsv = emit_curve_data({d}, CurveFormat::CSV);
    CHECK(dcsv.rfind("v,mean_diff,ci_lower,ci_upper\n", 0) == 0);

    const auto overlay = emit_curve_data({ca, cb}, CurveFormat::CSV);
    CHECK(overlay.rfind("label,v,mean_score,variance\n", 0) == 0);
    CHECK(std::count(overlay.begin(), overlay.end(), '\n') == 11);

    const auto json = nlohmann::json::parse(emit_curve_data({ca, cb}, CurveFormat::JSON));
    CHECK(json.is_array());
    CHECK(json.size() == 2);

    const auto svg = emit_curve_data({d}, CurveFormat::SVG);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(emit_curve_data({d}, CurveFormat::SVG) == svg);

    CHECK_THROWS(emit_curve_data({}, CurveFormat::CSV));
    CHECK_THROWS(emit_curve_data({ca, d}, CurveFormat::CSV));
    ca.grid = grid_for(s, 6);
    ca.mean_scores.resize(6);
    ca.pointwise_variance.resize(6);
    CHECK_THROWS(emit_curve_data({ca, cb}, CurveFormat::SVG));
}

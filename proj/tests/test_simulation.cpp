#include <doctest.h>

#include "murphyes/models.hpp"
#include "murphyes/simulation.hpp"

#include <cmath>
#include <numeric>
#include <vector>

using namespace murphyes;

TEST_CASE("dgp configuration checks") {
    DgpConfig c;
    CHECK_NOTHROW(c.validate());
    c.sigma0_sq = 0.0;
    CHECK_THROWS(c.validate());
    c = {};
    c.horizon = 0;
    CHECK_THROWS(c.validate());
    c = {};
    c.rk_source = RkSource::FromFile;
    c.rk_series = std::vector<double>(10, 1.0);
    CHECK_THROWS(c.validate());
    c.rk_series = std::vector<double>(500, 1.0);
    c.rk_series[3] = -0.1;
    CHECK_THROWS(simulate_dgp(c));
}

TEST_CASE("zero rk gives pure decay") {
    DgpConfig c;
    c.rk_source = RkSource::FromFile;
    c.rk_series = std::vector<double>(50, 0.0);
    c.horizon = 50;
    const auto p = simulate_dgp(c);
    for (std::size_t t = 0; t < 50; ++t) {
        CHECK(p.sigma[t] * p.sigma[t] == doctest::Approx(0.35 * std::pow(0.7, double(t + 1))).epsilon(1e-12));
        CHECK(p.sigma[t] > 0.0);
    }
}

TEST_CASE("constant rk converges to the fixed point") {
    DgpConfig c;
    c.rk_source = RkSource::FromFile;
    c.rk_series = std::vector<double>(200, 0.3);
    c.horizon = 200;
    const auto p = simulate_dgp(c);
    CHECK(p.sigma.back() * p.sigma.back() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("standardized returns have unit variance") {
    DgpConfig c;
    c.horizon = 100000;
    c.seed = 19;
    const auto p = simulate_dgp(c);
    double ss = 0.0, sum = 0.0;
    for (std::size_t t = 0; t < c.horizon; ++t) {
        const double z = p.returns[t] / p.sigma[t];
        sum += z;
        ss += z * z;
    }
    const double n = double(c.horizon);
    const double var = (ss - sum * sum / n) / (n - 1.0);
    CHECK(var == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("synthetic rk is positive and persistent") {
    Rng rng(4);
    const auto rk = synthetic_rk(20000, SyntheticRkParams{}, rng);
    CHECK(rk[0] == doctest::Approx(std::exp(-0.3)));
    double mean_log = 0.0;
    for (double v : rk) {
        CHECK(v > 0.0);
        mean_log += std::log(v);
    }
    CHECK(mean_log / rk.size() == doctest::Approx(-0.3).epsilon(0.2));
}

TEST_CASE("simulation is seed-deterministic") {
    DgpConfig c;
    c.seed = 5;
    const auto a = simulate_dgp(c);
    const auto b = simulate_dgp(c);
    CHECK(a.returns == b.returns);
    c.seed = 6;
    CHECK(simulate_dgp(c).returns != a.returns);
}

TEST_CASE("forecasters") {
    DgpConfig c;
    c.horizon = 100000;
    const auto p = simulate_dgp(c);
    const Level alpha(0.025);

    const auto perfect = make_forecaster(p.sigma, {0.0}, alpha, 6.0, 1);
    for (std::size_t t = 0; t < 100; ++t) {
        const auto opt = scaled_t_var_es(p.sigma[t], alpha, 6.0);
        CHECK(perfect.forecasts[t].var() == opt.var());
        CHECK(perfect.forecasts[t].es() == opt.es());
    }

    const auto noisy = make_forecaster(p.sigma, {0.5}, alpha, 6.0, 2);
    double ss = 0.0;
    for (std::size_t t = 0; t < c.horizon; ++t) {
        ss += noisy.errors[t] * noisy.errors[t];
        const double gap = noisy.forecasts[t].var() - noisy.forecasts[t].es();
        const double gap0 = perfect.forecasts[t].var() - perfect.forecasts[t].es();
        CHECK(gap == doctest::Approx(gap0).epsilon(1e-12));
    }
    CHECK(ss / c.horizon == doctest::Approx(0.5).epsilon(0.03));
    CHECK_THROWS(make_forecaster(p.sigma, {-1.0}, alpha, 6.0, 2));
}

TEST_CASE("study with identical forecasters never rejects") {
    StudyConfig s;
    s.zeta1 = 0.0;
    s.zeta2 = 0.0;
    s.replications = 5;
    s.dgp.horizon = 100;
    s.test.permutations = 20;
    s.nominal_levels = {0.05, 0.1};
    const auto r = size_power_study(s);
    REQUIRE(r.rows.size() == 2);
    for (const auto& row : r.rows) {
        CHECK(row.rejection_rate == 0.0);
        CHECK(row.se == 0.0);
        CHECK(row.replications == 5);
    }
}

TEST_CASE("study output is thread-invariant and serializes") {
    StudyConfig s;
    s.zeta1 = 0.5;
    s.zeta2 = 0.0;
    s.replications = 6;
    s.dgp.horizon = 150;
    s.test.permutations = 50;
    s.threads = 1;
    const auto a = size_power_study(s);
    s.threads = 3;
    const auto b = size_power_study(s);
    CHECK(a.minimal_p == b.minimal_p);
    const auto csv = study_csv(a.rows);
    CHECK(csv.rfind("zeta1,zeta2,T,nominal_level,rejection_rate,se,replications\n", 0) == 0);
    CHECK(csv == study_csv(b.rows));
    s.replications = 0;
    CHECK_THROWS(size_power_study(s));
}

TEST_CASE("power grows with the error variance") {
    auto power = [](double zeta) {
        StudyConfig s;
        s.zeta1 = zeta;
        s.zeta2 = 0.0;
        s.replications = 40;
        s.dgp.horizon = 300;
        s.dgp.seed = 123;
        s.test.permutations = 100;
        return size_power_study(s).rows[0].rejection_rate;
    };
    const double lo = power(0.05);
    const double hi = power(0.5);
    const double se = std::sqrt(hi * (1 - hi) / 40 + lo * (1 - lo) / 40);
    CHECK(hi + 2 * se >= lo);
    CHECK(hi > lo);
}

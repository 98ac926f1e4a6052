#include <doctest.h>

#include "oracles.hpp"

#include "murphyes/options.hpp"

#include <cmath>
#include <vector>

using namespace murphyes;

TEST_CASE("es put price") {
    CHECK(es_put_price(Level(0.025), -2.0, -2.0) == 0.0);
    CHECK(es_put_price(Level(0.025), -2.0, -3.0) == doctest::Approx(0.025));
    CHECK(es_put_price(Level(0.025), -2.0, -5.0) == doctest::Approx(3.0 * es_put_price(Level(0.025), -2.0, -3.0)));
    CHECK_THROWS(es_put_price(Level(0.025), -3.0, -2.0));
}

TEST_CASE("lognormal VaR and ES") {
    OptionScenario s;
    SUBCASE("median at alpha = 0.5") {
        s.alpha = Level(0.5);
        CHECK(lognormal_var_es(s).var() == doctest::Approx(100.0 * std::exp(-0.02)).epsilon(1e-14));
    }
    SUBCASE("collapse as the volatility vanishes") {
        s.annual_vol = 1e-9;
        const auto f = lognormal_var_es(s);
        CHECK(f.var() == doctest::Approx(100.0).epsilon(1e-6));
        CHECK(f.es() == doctest::Approx(100.0).epsilon(1e-6));
        const auto c = verify_pricing_equivalence(s);
        CHECK(std::isfinite(c.p_es));
        CHECK(std::isfinite(c.p_bs));
        CHECK(std::abs(c.p_es) < 1e-6);
        CHECK(std::abs(c.p_bs) < 1e-6);
    }
    SUBCASE("ES against quadrature of the tail") {
        const double sigma = 0.2;
        const double mu = std::log(100.0) - 0.5 * sigma * sigma;
        const double var = std::exp(mu + sigma * oracle::normal_quantile(0.025));
        const double tail = oracle::integrate_left_tail(
            [&](double z) {
                const double u = (z - mu) / sigma;
                return std::exp(z) * std::exp(-0.5 * u * u) / (sigma * std::sqrt(2.0 * std::numbers::pi));
            },
            std::log(var));
        const auto f = lognormal_var_es(s);
        CHECK(f.var() == doctest::Approx(var).epsilon(1e-10));
        CHECK(std::abs(f.es() - tail / 0.025) <= 1e-6);
        CHECK(f.var() >= f.es());
    }
    SUBCASE("invalid scenario") {
        s.annual_vol = -0.1;
        CHECK_THROWS(lognormal_var_es(s));
    }
}

TEST_CASE("black scholes put") {
    OptionScenario s;
    s.strike = 1e-8;
    CHECK(black_scholes_put_zero_rate(s) < 1e-12);
    s.strike = 1e4;
    CHECK(black_scholes_put_zero_rate(s) == doctest::Approx(1e4 - 100.0).epsilon(1e-12));
    double prev = 0.0;
    for (double k = 50.0; k <= 150.0; k += 5.0) {
        s.strike = k;
        const double p = black_scholes_put_zero_rate(s);
        CHECK(p >= prev);
        prev = p;
    }
}

TEST_CASE("pricing equivalence over scenarios") {
    for (double y0 : {50.0, 100.0}) {
        for (double tau : {0.1, 0.2, 0.4}) {
            for (double t : {0.25, 1.0}) {
                for (double a : {0.01, 0.025, 0.05, 0.1}) {
                    OptionScenario s;
                    s.spot0 = y0;
                    s.annual_vol = tau;
                    s.maturity_years = t;
                    s.alpha = Level(a);
                    const auto c = verify_pricing_equivalence(s);
                    CHECK(c.abs_diff <= 1e-10);
                    CHECK(c.p_es > 0.0);
                }
            }
        }
    }
}

TEST_CASE("discrete distribution functionals") {
    DiscreteDistribution d({3.0, -2.0, 0.0, -5.0, 1.0}, {0.3, 0.05, 0.3, 0.01, 0.34});
    CHECK(d.atoms() == std::vector<double>{-5.0, -2.0, 0.0, 1.0, 3.0});
    CHECK(d.cdf(-2.0) == doctest::Approx(0.06));
    CHECK(d.var(Level(0.025)) == -2.0);
    CHECK(d.es(Level(0.025)) == doctest::Approx((0.01 * -5.0 + 0.015 * -2.0) / 0.025));
    CHECK_THROWS(DiscreteDistribution({1.0}, {0.5}));
    CHECK_THROWS(DiscreteDistribution({1.0, 2.0}, {1.2, -0.2}));
}

TEST_CASE("expected profit") {
    const DiscreteDistribution d({-5.0, -2.0, 0.0, 1.0, 3.0}, {0.01, 0.05, 0.3, 0.34, 0.3});
    const Level alpha(0.025);
    const double var = d.var(alpha);
    const double es = d.es(alpha);

    CHECK(expected_profit(var, -3.0, -2.9, alpha, d) == 0.0);
    CHECK(std::abs(expected_profit(var, es, es, alpha, d)) <= 1e-12);

    SUBCASE("maximizer over an x1 grid sits at VaR") {
        const double step = 0.01;
        double best = -1e300, arg = 0.0, prev = -1e300;
        bool rising = true;
        bool unimodal = true;
        for (double x1 = -6.0; x1 <= 4.0; x1 += step) {
            const double p = expected_profit(x1, -10.0, -10.0, alpha, d);
            if (p > best) {
                best = p;
                arg = x1;
            }
            if (!rising && p > prev + 1e-12) unimodal = false;
            if (p < prev - 1e-12) rising = false;
            prev = p;
        }
        CHECK(std::abs(arg - var) <= step);
        CHECK(unimodal);
        CHECK(best <= alpha.value() * (es + 10.0) + 1e-12);
        CHECK(best == doctest::Approx(alpha.value() * (es + 10.0)).epsilon(1e-3));
    }
    SUBCASE("decision-theoretic link to the elementary score") {
        for (double x1 : {-3.0, -2.0, 0.5}) {
            for (double x2 : {-4.0, -3.0}) {
                if (x2 > x1) continue;
                for (double v2 : {-4.5, -3.5, -1.0}) {
                    double rhs = 0.0;
                    for (std::size_t i = 0; i < d.atoms().size(); ++i) {
                        const double y = d.atoms()[i];
                        rhs += d.probs()[i] * (alpha.value() * (v2 <= y ? y - v2 : 0.0) -
                                               alpha.value() * elementary_score_v2(JointForecast(x1, x2), y, v2, alpha));
                    }
                    CHECK(expected_profit(x1, x2, v2, alpha, d) == doctest::Approx(rhs).epsilon(1e-12));
                }
            }
        }
    }
    SUBCASE("lognormal distribution") {
        const LognormalDistribution ln{std::log(100.0) - 0.02, 0.2};
        OptionScenario s;
        const auto f = lognormal_var_es(s);
        CHECK(expected_profit(f.var(), f.es(), f.es(), alpha, ln) == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(expected_profit(f.var() * 1.05, f.es(), f.es(), alpha, ln) < 0.0);
        CHECK(ln.cdf(f.var()) == doctest::Approx(0.025).epsilon(1e-12));
    }
}

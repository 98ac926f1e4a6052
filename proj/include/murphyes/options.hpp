#pragma once

#include "murphyes/common.hpp"
#include "murphyes/scores.hpp"

#include <variant>
#include <vector>

namespace murphyes {

struct OptionScenario {
    double spot0 = 100.0;        // y_0
    double annual_vol = 0.2;     // tau
    double maturity_years = 1.0; // t
    Level alpha{};
    double strike = 0.0; // K, identified with the VaR forecast x1

    void validate() const;
};

/// Put price implied by an optimal (VaR, ES) pair: alpha * (var - es).
double es_put_price(Level alpha, double var, double es);

/// (VaR, ES) of the driftless lognormal with mu = log y0 - tau^2 t / 2 and
/// sigma = tau sqrt(t).
JointForecast lognormal_var_es(const OptionScenario& scn);

/// Zero-rate Black-Scholes put:
///   K Phi((ln K - ln y0 + tau^2 t/2) / (tau sqrt t)) - y0 Phi((ln K - ln y0 - tau^2 t/2) / (tau sqrt t)).
double black_scholes_put_zero_rate(const OptionScenario& scn);

struct PricingCheck {
    JointForecast var_es;
    double p_es = 0.0;
    double p_bs = 0.0;
    double abs_diff = 0.0;
};

/// Sets the strike to the lognormal VaR and compares both prices.
PricingCheck verify_pricing_equivalence(OptionScenario scn);

/// Finite discrete distribution. Atoms are kept sorted ascending.
class DiscreteDistribution {
public:
    DiscreteDistribution(std::vector<double> atoms, std::vector<double> probs);

    const std::vector<double>& atoms() const noexcept { return atoms_; }
    const std::vector<double>& probs() const noexcept { return probs_; }

    double cdf(double x) const;
    /// E[Y 1{Y <= x}]
    double partial_expectation(double x) const;
    double var(Level alpha) const;
    double es(Level alpha) const;

private:
    std::vector<double> atoms_;
    std::vector<double> probs_;
};

struct LognormalDistribution {
    double mu = 0.0;
    double sigma = 1.0;

    double cdf(double x) const;
    double partial_expectation(double x) const;
};

using ProfitDistribution = std::variant<DiscreteDistribution, LognormalDistribution>;

/// 1{v2 <= x2} * (x1 (alpha - F(x1)) + E[Y 1{Y <= x1}] - alpha v2): expected
/// profit of writing the put with strike x1 at premium alpha (x1 - v2).
double expected_profit(double x1, double x2, double v2, Level alpha, const ProfitDistribution& dist);

} // namespace murphyes

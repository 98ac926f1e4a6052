#include "murphyes/options.hpp"

#include "murphyes/normal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace murphyes {

void OptionScenario::validate() const {
    for (double v : {spot0, annual_vol, maturity_years}) {
        if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("option scenario: inputs must be positive");
    }
}

double es_put_price(Level alpha, double var, double es) {
    require_finite(var, "VaR");
    require_finite(es, "ES");
    if (var < es) throw std::invalid_argument("es_put_price: requires var >= es");
    return alpha.value() * (var - es);
}

JointForecast lognormal_var_es(const OptionScenario& scn) {
    scn.validate();
    const double a = scn.alpha.value();
    const double sigma = scn.annual_vol * std::sqrt(scn.maturity_years);
    const double mu = std::log(scn.spot0) - 0.5 * sigma * sigma;
    const double var = std::exp(mu + sigma * normal_quantile(a));
    const double d_minus = (std::log(var) - std::log(scn.spot0) - 0.5 * sigma * sigma) / sigma;
    const double es = scn.spot0 / a * normal_cdf(d_minus);
    // es <= var holds analytically; rounding can invert the pair when sigma -> 0
    return JointForecast(var, std::min(es, var));
}

double black_scholes_put_zero_rate(const OptionScenario& scn) {
    scn.validate();
    if (!(scn.strike > 0.0)) throw std::invalid_argument("black_scholes_put_zero_rate: strike must be positive");
    const double sigma = scn.annual_vol * std::sqrt(scn.maturity_years);
    const double m = std::log(scn.strike) - std::log(scn.spot0);
    const double d_plus = (m + 0.5 * sigma * sigma) / sigma;
    const double d_minus = (m - 0.5 * sigma * sigma) / sigma;
    return scn.strike * normal_cdf(d_plus) - scn.spot0 * normal_cdf(d_minus);
}

PricingCheck verify_pricing_equivalence(OptionScenario scn) {
    const auto ve = lognormal_var_es(scn);
    scn.strike = ve.var();
    PricingCheck out{ve, es_put_price(scn.alpha, ve.var(), ve.es()), black_scholes_put_zero_rate(scn), 0.0};
    out.abs_diff = std::abs(out.p_es - out.p_bs);
    return out;
}

DiscreteDistribution::DiscreteDistribution(std::vector<double> atoms, std::vector<double> probs) {
    if (atoms.empty() || atoms.size() != probs.size()) {
        throw std::invalid_argument("discrete distribution: atoms and probabilities must match and be nonempty");
    }
    std::vector<std::size_t> idx(atoms.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return atoms[a] < atoms[b]; });
    double total = 0.0;
    for (std::size_t i : idx) {
        require_finite(atoms[i], "atom");
        if (!(probs[i] >= 0.0)) throw std::invalid_argument("discrete distribution: probabilities must be nonnegative");
        atoms_.push_back(atoms[i]);
        probs_.push_back(probs[i]);
        total += probs[i];
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("discrete distribution: probabilities must sum to 1");
}

double DiscreteDistribution::cdf(double x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < atoms_.size() && atoms_[i] <= x; ++i) s += probs_[i];
    return s;
}

double DiscreteDistribution::partial_expectation(double x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < atoms_.size() && atoms_[i] <= x; ++i) s += probs_[i] * atoms_[i];
    return s;
}

double DiscreteDistribution::var(Level alpha) const {
    double c = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        c += probs_[i];
        if (c >= alpha.value()) return atoms_[i];
    }
    return atoms_.back();
}

double DiscreteDistribution::es(Level alpha) const {
    const double q = var(alpha);
    double below = 0.0;
    double mass = 0.0;
    for (std::size_t i = 0; i < atoms_.size() && atoms_[i] < q; ++i) {
        below += probs_[i] * atoms_[i];
        mass += probs_[i];
    }
    return (below + (alpha.value() - mass) * q) / alpha.value();
}

double LognormalDistribution::cdf(double x) const {
    if (x <= 0.0) return 0.0;
    return normal_cdf((std::log(x) - mu) / sigma);
}

double LognormalDistribution::partial_expectation(double x) const {
    if (x <= 0.0) return 0.0;
    return std::exp(mu + 0.5 * sigma * sigma) * normal_cdf((std::log(x) - mu - sigma * sigma) / sigma);
}

double expected_profit(double x1, double x2, double v2, Level alpha, const ProfitDistribution& dist) {
    require_finite(x1, "x1");
    require_finite(x2, "x2");
    require_finite(v2, "v2");
    if (!(v2 <= x2)) return 0.0;
    const double a = alpha.value();
    return std::visit(
        [&](const auto& f) { return x1 * (a - f.cdf(x1)) + f.partial_expectation(x1) - a * v2; }, dist);
}

} // namespace murphyes

#include "murphyes/normal.hpp"
#include "murphyes/rng.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <stdexcept>

namespace murphyes {

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("normal_quantile: p must lie in (0, 1)");
    }
    return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double Rng::normal() { return normal_quantile(uniform()); }

double Rng::student_t(double nu) {
    return boost::math::quantile(boost::math::students_t_distribution<double>(nu), uniform());
}

} // namespace murphyes

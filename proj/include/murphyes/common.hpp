#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace murphyes {

/// Malformed or inconsistent input data (bad CSV rows, misaligned series).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical procedure failed to produce a usable answer.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Tail probability level of the (VaR, ES) functional. Always in (0, 1).
class Level {
public:
    static constexpr double kDefault = 0.025;

    constexpr Level() = default;
    explicit Level(double alpha) : alpha_(alpha) {
        if (!(alpha > 0.0 && alpha < 1.0)) {
            throw std::invalid_argument("level alpha must lie in (0, 1), got " + std::to_string(alpha));
        }
    }

    constexpr double value() const noexcept { return alpha_; }

private:
    double alpha_ = kDefault;
};

inline void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

} // namespace murphyes

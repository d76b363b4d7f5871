#include "fcae/fractional.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fcae::fractional {

Order::Order(double a) : alpha(a) {
    if (!(a >= 1.0 && a < 2.0)) {
        throw std::invalid_argument("fractional: alpha must be in [1, 2), got " +
                                    std::to_string(a));
    }
}

namespace {

// Lanczos approximation, g = 7, 9 terms.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double lanczos_gamma(double x) {
    if (x < 0.5) {
        // reflection keeps the approximation in its accurate range
        return M_PI / (std::sin(M_PI * x) * lanczos_gamma(1.0 - x));
    }
    x -= 1.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) {
        acc += kLanczos[i] / (x + i);
    }
    const double t = x + 7.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, x + 0.5) * std::exp(-t) * acc;
}

}  // namespace

double gamma_fn(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("fractional: gamma_fn requires x > 0, got " + std::to_string(x));
    }
    return lanczos_gamma(x);
}

double caputo_weight_factor(double w, Order alpha, double eps) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("fractional: eps must be > 0");
    }
    if (alpha.alpha == 1.0) return 1.0;
    const double mag = std::max(std::abs(w), eps);
    return std::pow(mag, 1.0 - alpha.alpha) / gamma_fn(2.0 - alpha.alpha);
}

double caputo_reg_term(double w, Order alpha, double lambda, double eps) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("fractional: eps must be > 0");
    }
    if (lambda < 0.0) {
        throw std::invalid_argument("fractional: lambda must be >= 0");
    }
    if (alpha.alpha == 1.0) return lambda * w;  // exact integer-order reduction
    if (w == 0.0) return 0.0;
    const double sign = w > 0.0 ? 1.0 : -1.0;
    const double mag = std::max(std::abs(w), eps);
    return lambda * sign * std::pow(mag, 2.0 - alpha.alpha) / gamma_fn(3.0 - alpha.alpha);
}

}  // namespace fcae::fractional

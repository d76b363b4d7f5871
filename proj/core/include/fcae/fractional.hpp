#pragma once

namespace fcae::fractional {

/// Fractional derivative order alpha, restricted to [1, 2).
struct Order {
    double alpha;
    explicit Order(double a);
};

/// Gamma function on the positive axis (Lanczos approximation).
/// Throws std::domain_error for x <= 0.
double gamma_fn(double x);

/// Multiplicative Caputo factor |w|^(1-alpha) / Gamma(2-alpha), with |w|
/// clamped below at eps. Identically 1 at alpha = 1.
double caputo_weight_factor(double w, Order alpha, double eps);

/// Fractional regularizer term lambda * sign(w) * |w|^(2-alpha) / Gamma(3-alpha),
/// |w| clamped below at eps. Reduces to lambda * w at alpha = 1.
double caputo_reg_term(double w, Order alpha, double lambda, double eps);

}  // namespace fcae::fractional

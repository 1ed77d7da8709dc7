#pragma once

namespace dikmc {

inline constexpr double kEulerGamma = 0.57721566490153286;

// Principal-value exponential integral Ei(x), x != 0.
// Relative accuracy ~1e-13 or better across |x| in [1e-300, 700];
// throws std::overflow_error for x > ~709.78 (result exceeds double range;
// use the scaled variant there), underflows toward -0 for x < ~-745.
double exp_integral_ei(double x);

// e^{-x} * Ei(x) for x > 1. Stays finite for all representable x.
double exp_integral_ei_scaled(double x);

} // namespace dikmc

#include "dikmc/expint.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dikmc {

namespace {

// Ei(x) = gamma + ln|x| + sum_{k>=1} x^k/(k*k!).
// All terms are positive for x > 0; for x in [-1,0) the alternating loss is
// bounded by a factor ~4, so the series is good there too. Beyond x < -1 the
// final addition against gamma + ln|x| cancels catastrophically; callers must
// route those x to the continued fraction instead.
double ei_power_series(double x) {
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k < 400; ++k) {
        term *= x / k;
        double del = term / k;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-18) break;
    }
    return kEulerGamma + std::log(std::fabs(x)) + sum;
}

// E1(z) for z >= 1 by the modified Lentz continued fraction,
// E1(z) = e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - ...))).
double e1_continued_fraction(double z) {
    const double tiny = 1e-300;
    double b = z + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 300; ++i) {
        double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        double del = c * d;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-z);
}

// e^{-x} Ei(x) ~ (1/x) sum_k k!/x^k, truncated at the smallest term.
// For x >= 40 the smallest term is below 1e-16 relative, so the truncation
// error is negligible against double rounding.
double ei_asymptotic_scaled(double x) {
    double sum = 1.0;
    double term = 1.0;
    for (int k = 1; k < 200; ++k) {
        double next = term * k / x;
        if (next >= term) break; // series started diverging
        term = next;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum / x;
}

} // namespace

double exp_integral_ei(double x) {
    if (x == 0.0 || std::isnan(x)) {
        throw std::domain_error("exp_integral_ei: x must be nonzero and finite");
    }
    if (x > 709.782712893384) { // ln(DBL_MAX): e^x, hence Ei(x), overflows
        throw std::overflow_error(
            "exp_integral_ei: result exceeds double range for x > ~709.78; "
            "use exp_integral_ei_scaled");
    }
    if (x < -1.0) return -e1_continued_fraction(-x);
    if (x <= 40.0) return ei_power_series(x);
    return std::exp(x) * ei_asymptotic_scaled(x);
}

double exp_integral_ei_scaled(double x) {
    if (!(x > 1.0)) {
        throw std::domain_error("exp_integral_ei_scaled: requires x > 1");
    }
    if (x <= 40.0) return std::exp(-x) * ei_power_series(x);
    return ei_asymptotic_scaled(x);
}

} // namespace dikmc

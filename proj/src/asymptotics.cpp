#include "dikmc/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace dikmc {

double gumbel_sf(double x) {
    return std::exp(-std::exp(x));
}

double frechet_cdf(double z) {
    if (!(z > 0.0)) throw std::domain_error("frechet_cdf: requires z > 0");
    return std::exp(-1.0 / z);
}

double t1_center(const Params& p, double lambda_mag) {
    p.validate();
    const double ln_n = p.log_n();
    if (!(lambda_mag > ln_n)) {
        throw std::domain_error(
            "t1_center: requires field magnitude above ln N (below it the "
            "first flip happens at vanishing times)");
    }
    return std::log(lambda_mag / ln_n) / p.alpha +
           std::log(ln_n) / (p.alpha * ln_n) +
           std::log(p.alpha) / (p.alpha * ln_n);
}

double center_t1_statistic(const Params& p, double lambda_mag, double t1) {
    return p.alpha * p.log_n() * (t1 - t1_center(p, lambda_mag));
}

double tc_scale(const Params& p) {
    p.validate();
    const double n = static_cast<double>(p.n);
    return n * n * std::exp(-2.0 * p.beta) / (2.0 * p.alpha * p.log_n());
}

double t1_center_profile(const Params& p, double lambda_mag,
                         const Profile& phi) {
    p.validate();
    phi.require_unit_band();
    phi.require_strict_extrema();
    const double ln_n = p.log_n();
    if (!(lambda_mag > ln_n)) {
        throw std::domain_error(
            "t1_center_profile: requires field magnitude above ln N");
    }
    return std::log(lambda_mag / ln_n) / p.alpha +
           1.5 * std::log(ln_n) / (p.alpha * ln_n) +
           std::log(p.alpha * std::sqrt(phi.d2_min() / (2.0 * M_PI))) /
               (p.alpha * ln_n);
}

namespace {

// Weight at grid index k: Phi for shift = 0, shift - Phi otherwise.
double weight_at(const Profile& p, double shift, int k) {
    double v = p.values()[k];
    return shift == 0.0 ? v : shift - v;
}

void check_laplace_args(const Profile& p, double gamma, double alpha,
                        double shift) {
    if (p.empty()) throw std::domain_error("laplace sum: empty profile");
    if (!(gamma > 0.0)) throw std::domain_error("laplace sum: requires gamma > 0");
    if (!(alpha > 0.0)) throw std::domain_error("laplace sum: requires alpha > 0");
    if (shift != 0.0 && !(shift > p.phi_max())) {
        throw std::domain_error(
            "laplace sum: shifted weight needs shift > max Phi");
    }
}

} // namespace

double laplace_sum_exact(const Profile& p, double gamma, double alpha,
                         double shift) {
    check_laplace_args(p, gamma, alpha, shift);
    double sum = 0.0, comp = 0.0;
    for (int k = 0; k < p.grid_size(); ++k) {
        const double w = weight_at(p, shift, k);
        const double term = std::exp(-gamma * w) / (gamma * alpha * w);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double laplace_sum_asymptotic(const Profile& p, double gamma, double alpha,
                              double shift, long n) {
    check_laplace_args(p, gamma, alpha, shift);
    p.require_strict_extrema();
    // The exponent -gamma w is maximal where w is minimal: at the profile
    // minimum for w = Phi, at the profile maximum for w = shift - Phi.
    double w_star, curvature;
    if (shift == 0.0) {
        w_star = p.phi_min();
        curvature = p.d2_min();
    } else {
        w_star = shift - p.phi_max();
        curvature = -p.d2_max();
    }
    if (!(curvature > 0.0)) {
        throw std::domain_error("laplace_sum_asymptotic: degenerate extremum");
    }
    return static_cast<double>(n) * std::exp(-gamma * w_star) /
           (std::pow(gamma, 1.5) * alpha * w_star) *
           std::sqrt(2.0 * M_PI / curvature);
}

double LimitSawtooth::eval(double t) const {
    if (!(t >= 0.0)) throw std::domain_error("limit sawtooth: requires t >= 0");
    double s = t;
    double sign = -1.0;
    for (std::size_t j = 0;; ++j) {
        if (s < 1.0) return sign;                       // plateau of length 1
        s -= 1.0;
        if (j >= z.size()) {
            throw std::out_of_range(
                "limit sawtooth: ramp durations exhausted before t");
        }
        if (s < z[j]) return sign * (1.0 - 2.0 * s / z[j]);  // linear ramp
        s -= z[j];
        sign = -sign;
    }
}

double LimitSawtooth::span() const {
    double total = 0.0;
    for (double zj : z) total += 1.0 + zj;
    return total;
}

} // namespace dikmc

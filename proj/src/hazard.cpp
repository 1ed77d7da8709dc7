#include "dikmc/hazard.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dikmc/expint.hpp"

namespace dikmc {

namespace {

void check_segment(const HazardSegment& seg) {
    if (!(seg.alpha > 0.0) || !std::isfinite(seg.alpha) || !std::isfinite(seg.a)) {
        throw std::domain_error("hazard: requires finite a and alpha > 0");
    }
}

// H(u) as a series around the dominant endpoint of int e^w/w dw over
// [a e^{-alpha u}, a]. With d = |a| r the endpoint gap, base the dominant
// endpoint magnitude (|a| for a > 0, |a|(1-r) for a < 0), and
// M_k(d) = int_0^d s^k e^{-s} ds = gamma(k+1, d):
//   a > 0:  H = (e^a / (alpha a))      * sum_k (+1/base)^k M_k,
//   a < 0:  H = (e^{-base} / (alpha base)) * sum_k (-1/base)^k M_k.
// Term ratio is at most d/base <= 1/2 under the window conditions, so the
// sum is all-positive or mildly alternating. The scaled moments
// m_k = M_k / base^k come from the downward recurrence
//   m_{k-1} = (base/k) (m_k + q^k e^{-d}),   q = d/base,
// seeded with m_K = 0: upward recurrence on gamma(k+1, d) is violently
// unstable past k ~ d, while downward every step divides the error by k.
// The zero seed omits a Poisson tail P(Pois(d) > K), below 1e-19 for
// K = 2d + 60. Summing from K down adds the smallest terms first.
double hazard_series(double a, double alpha, double r /* = 1 - e^{-alpha u} */) {
    const double absa = std::fabs(a);
    const double d = absa * r;
    const double base = a > 0.0 ? absa : absa * (1.0 - r);
    if (a < 0.0 && base > 745.0) return 0.0;  // e^{-base} below double range
    const double sign = a > 0.0 ? 1.0 : -1.0;
    const double logq = std::log(d / base);
    const int kmax = std::max(80, static_cast<int>(std::ceil(2.0 * d)) + 60);
    double mk = 0.0;
    double sum = 0.0;
    for (int k = kmax; k >= 1; --k) {
        sum += (k % 2 == 0 ? 1.0 : sign) * mk;
        mk = (base / k) * (mk + std::exp(k * logq - d));
    }
    sum += mk;  // k = 0
    const double lead = a > 0.0 ? std::exp(a) / absa : std::exp(-base) / base;
    return lead * sum / alpha;
}

} // namespace

double segment_rate(const HazardSegment& seg, double u) {
    check_segment(seg);
    return std::exp(seg.a * std::exp(-seg.alpha * u));
}

double segment_hazard(const HazardSegment& seg, double u) {
    check_segment(seg);
    if (!(u >= 0.0)) throw std::domain_error("segment_hazard: requires u >= 0");
    if (seg.a > 700.0) {
        throw std::overflow_error(
            "segment_hazard: rate exponent a > 700 exceeds double range; "
            "such segments must take the capped fast-flip path");
    }
    if (seg.a == 0.0 || u == 0.0) return u;

    const double r = -std::expm1(-seg.alpha * u); // 1 - e^{-alpha u} in [0,1)
    // Window small relative to the dominant endpoint: endpoint series (all
    // positive for a > 0, ratio <= 1/2 alternating for a < 0).
    bool small_window = seg.a > 0.0 ? (r <= 0.5) : (r <= 1.0 / 3.0);
    if (small_window) return hazard_series(seg.a, seg.alpha, r);

    if (std::fabs(seg.a) < 0.25) {
        // Both endpoints are log-dominated and the Ei difference would cancel
        // the big ln terms. ln|a/b| = alpha*u exactly, so sum only the small
        // power parts: H = u + (1/alpha) sum_k (a^k - b^k)/(k*k!).
        double b = seg.a * (1.0 - r);
        double sum = 0.0, pa = 1.0, pb = 1.0, kfact = 1.0;
        for (int k = 1; k <= 40; ++k) {
            pa *= seg.a;
            pb *= b;
            kfact *= k;
            double term = (pa - pb) / (k * kfact);
            sum += term;
            if (std::fabs(term) < 1e-18 * seg.alpha * u) break;
        }
        return u + sum / seg.alpha;
    }

    // Big window, |a| >= 0.25: the Ei difference loses at most ~1 digit.
    // Compute ln|b| directly so a subnormal/underflowed b = a e^{-alpha u}
    // cannot poison Ei(b) ~ gamma + ln|b|.
    double log_abs_b = std::log(std::fabs(seg.a)) - seg.alpha * u;
    double ei_b;
    if (log_abs_b < -600.0) {
        ei_b = kEulerGamma + log_abs_b; // power-series tail < 1e-260
    } else {
        ei_b = exp_integral_ei(seg.a * std::exp(-seg.alpha * u));
    }
    return (exp_integral_ei(seg.a) - ei_b) / seg.alpha;
}

double invert_segment_hazard(const HazardSegment& seg, double target) {
    check_segment(seg);
    if (!(target >= 0.0) || !std::isfinite(target)) {
        throw std::domain_error("invert_segment_hazard: requires finite target >= 0");
    }
    if (seg.a > 700.0) {
        throw std::overflow_error(
            "invert_segment_hazard: rate exponent a > 700 exceeds double range");
    }
    if (target == 0.0) return 0.0;
    if (seg.a == 0.0) return target;

    const double tol = 1e-13 * target;
    // rate <= e^{max(a,0)} everywhere, so the root is at least this:
    double lo = target * std::exp(-std::fmax(seg.a, 0.0));
    double hi = lo;
    double f_lo = segment_hazard(seg, lo) - target;
    for (int i = 0; i < 2200 && f_lo > 0.0; ++i) {
        hi = lo;
        lo *= 0.5;
        f_lo = segment_hazard(seg, lo) - target;
    }
    double f_hi = (hi == lo) ? f_lo : segment_hazard(seg, hi) - target;
    for (int i = 0; i < 2200 && f_hi < 0.0; ++i) {
        lo = hi;
        f_lo = f_hi;
        hi = hi == 0.0 ? 1e-300 : hi * 2.0;
        f_hi = segment_hazard(seg, hi) - target;
    }

    // Safeguarded Newton within [lo, hi]; H is increasing with H' = rate.
    // Accept when the residual meets the relative tolerance AND the implied
    // u-error |f|/H' is small relative to u (keeps the root accurate in both
    // coordinates); when H is too flat for that, the shrinking bracket bottoms
    // out at machine resolution instead.
    double x = 0.5 * (lo + hi);
    double fx = segment_hazard(seg, x) - target;
    for (int it = 0; it < 200; ++it) {
        double deriv = segment_rate(seg, x);
        if (std::fabs(fx) <= tol && std::fabs(fx) <= 1e-11 * x * deriv) return x;
        if (fx > 0.0) hi = x; else lo = x;
        if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * hi) {
            return 0.5 * (lo + hi);
        }
        double step = fx / deriv;
        double cand = x - step;
        if (!(cand > lo) || !(cand < hi)) cand = 0.5 * (lo + hi);
        x = cand;
        fx = segment_hazard(seg, x) - target;
    }
    return x;
}

double hazard_I(double gamma, double alpha, double t) {
    if (!(gamma >= 0.0)) throw std::domain_error("hazard_I: requires gamma >= 0");
    return segment_hazard(HazardSegment{-gamma, alpha, 0.0}, t);
}

double hazard_F(double gamma, double alpha, double t) {
    if (!(gamma > 0.0) || !(alpha > 0.0)) {
        throw std::domain_error("hazard_F: requires gamma > 0 and alpha > 0");
    }
    double decayed = gamma * std::exp(-alpha * t);
    return std::exp(-decayed) / (alpha * decayed);
}

double t1_survival(int n_sites, double gamma, double alpha, double t) {
    if (n_sites < 1) throw std::domain_error("t1_survival: requires n_sites >= 1");
    return std::exp(-static_cast<double>(n_sites) * hazard_I(gamma, alpha, t));
}

} // namespace dikmc

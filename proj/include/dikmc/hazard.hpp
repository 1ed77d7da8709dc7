#pragma once

namespace dikmc {

// One exponentially-relaxing rate window: rate(u) = exp(a * e^{-alpha u}) for
// u >= 0 measured from t0. Between flips every site's jump intensity has this
// form, with a = -spin * field at the anchor instant.
struct HazardSegment {
    double a = 0.0;
    double alpha = 1.0;
    double t0 = 0.0;
};

double segment_rate(const HazardSegment& seg, double u);

// Integrated intensity H(u) = int_0^u exp(a e^{-alpha v}) dv.
// Closed form (1/alpha)[Ei(a) - Ei(a e^{-alpha u})] away from cancellation;
// a stable endpoint series takes over when the exponent barely moves.
double segment_hazard(const HazardSegment& seg, double u);

// Smallest u with H(u) = target: residual within 1e-13*target and the
// implied u-error within ~1e-11*u, or the search bracket shrunk to machine
// resolution when the hazard is too flat to resolve u finer.
// Bracketed safeguarded Newton; requires a <= 700 so rates stay representable.
double invert_segment_hazard(const HazardSegment& seg, double target);

// I(gamma,t) = int_0^t exp(-gamma e^{-alpha s}) ds, the per-site integrated
// rate from an all-equal start with field magnitude gamma (gamma >= 0).
double hazard_I(double gamma, double alpha, double t);

// F(gamma,t) = exp(-gamma e^{-alpha t}) / (gamma alpha e^{-alpha t}),
// the closed-form upper envelope of I: I <= F, and
// F - I <= e^{-gamma}/(gamma alpha) + (e^{alpha t}/gamma) F.
double hazard_F(double gamma, double alpha, double t);

// P(T1 > t) = exp(-N I(gamma,t)) for N sites started all-equal at -gamma.
double t1_survival(int n_sites, double gamma, double alpha, double t);

} // namespace dikmc

#pragma once

#include <vector>

#include "dikmc/params.hpp"
#include "dikmc/profile.hpp"

namespace dikmc {

// P(X > x) = exp(-e^x): the limit law of the centered-rescaled first-flip
// time (a Gumbel in this orientation).
double gumbel_sf(double x);

// P(Z <= z) = exp(-1/z) for z > 0: the law of e^{-X} when X has the survival
// function above (a unit Frechet), governing rescaled covering durations.
double frechet_cdf(double z);

// Centering constant for the first-flip time from constant field magnitude
// lambda_mag: (1/a) ln(mag/lnN) + lnlnN/(a lnN) + ln a/(a lnN).
// Requires lambda_mag > ln N (otherwise the wait collapses to zero).
double t1_center(const Params& p, double lambda_mag);

// Centered-rescaled statistic X = alpha ln N (T1 - t1_center).
double center_t1_statistic(const Params& p, double lambda_mag, double t1);

// Deterministic covering scale N^2 e^{-2 beta} / (2 alpha ln N).
double tc_scale(const Params& p);

// Profile-start centering: (1/a) ln(mag/lnN) + (3/(2a)) lnlnN/lnN
// + ln(a sqrt(Phi''(x_min)/2 pi)) / (a lnN). Needs a nondegenerate minimum.
double t1_center_profile(const Params& p, double lambda_mag, const Profile& phi);

// Exact Laplace sum over the profile grid (M = grid size):
//   sum_{k} e^{-gamma w_k} / (gamma alpha w_k),
// with weight w = Phi when shift = 0, w = shift - Phi otherwise (then shift
// must exceed max Phi). Compensated summation.
double laplace_sum_exact(const Profile& p, double gamma, double alpha,
                         double shift);

// One-term Laplace approximation of the same sum for n grid points:
//   n e^{-gamma w*} / (gamma^{3/2} alpha w*) sqrt(2 pi / w''),
// where the extremum is the profile minimum for shift = 0 and the profile
// maximum for the shifted weight. Refuses degenerate extrema.
double laplace_sum_asymptotic(const Profile& p, double gamma, double alpha,
                              double shift, long n);

// The limit trajectory: plateaus of length 1 at -1 and +1 alternating with
// linear ramps whose durations are the given z_j > 0.
struct LimitSawtooth {
    std::vector<double> z;

    // Value at time t >= 0; throws std::out_of_range once t runs past the
    // listed ramps.
    double eval(double t) const;

    // Total time covered: sum of (1 + z_j) per half-cycle.
    double span() const;
};

} // namespace dikmc

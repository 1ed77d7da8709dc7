#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "dikmc/expint.hpp"
#include "oracles.hpp"

using dikmc::exp_integral_ei;
using dikmc::exp_integral_ei_scaled;
using dikmc::kEulerGamma;

TEST_CASE("Ei matches frozen reference values") {
    CHECK(exp_integral_ei(1.0) ==
          doctest::Approx(1.8951178163559368).epsilon(1e-13));
    CHECK(exp_integral_ei(-1.0) ==
          doctest::Approx(-0.21938393439552027).epsilon(1e-13));
    CHECK(exp_integral_ei(-0.5) ==
          doctest::Approx(-0.55977359477616081).epsilon(1e-13));
    CHECK(exp_integral_ei(40.0) ==
          doctest::Approx(6039718263611241.6).epsilon(1e-13));
    CHECK(exp_integral_ei(-30.0) ==
          doctest::Approx(-3.0215520106888125e-15).epsilon(1e-12));
}

TEST_CASE("scaled Ei matches frozen reference values") {
    CHECK(exp_integral_ei_scaled(50.0) ==
          doctest::Approx(0.020417045555943987).epsilon(1e-13));
    CHECK(exp_integral_ei_scaled(100.0) ==
          doctest::Approx(0.010102062527748357).epsilon(1e-13));
    CHECK(exp_integral_ei_scaled(700.0) ==
          doctest::Approx(0.0014306181009351634).epsilon(1e-13));
}

TEST_CASE("scaled and unscaled Ei agree where both are representable") {
    for (double x : {2.0, 5.0, 10.0, 20.0, 39.0, 40.5, 100.0, 300.0, 700.0}) {
        CAPTURE(x);
        const double via_scaled = exp_integral_ei_scaled(x);
        const double via_plain = std::exp(-x) * exp_integral_ei(x);
        CHECK(via_plain == doctest::Approx(via_scaled).epsilon(1e-10));
    }
}

TEST_CASE("Ei overflows past the double ceiling") {
    CHECK_THROWS_AS(exp_integral_ei(710.0), std::overflow_error);
    CHECK_THROWS_AS(exp_integral_ei(750.0), std::overflow_error);
    CHECK(std::isfinite(exp_integral_ei(709.0)));
}

TEST_CASE("Ei behaves like gamma + ln|x| + x near zero") {
    const double x = 1e-8;
    CHECK(exp_integral_ei(x) ==
          doctest::Approx(kEulerGamma + std::log(x) + x).epsilon(1e-14));
    CHECK(exp_integral_ei(-x) ==
          doctest::Approx(kEulerGamma + std::log(x) - x).epsilon(1e-14));
}

TEST_CASE("Ei is monotone on each half-line and crosses zero once") {
    const std::vector<double> neg = {-40.0, -10.0, -3.0, -1.0, -0.3, -0.01};
    for (std::size_t i = 1; i < neg.size(); ++i) {
        CHECK(exp_integral_ei(neg[i]) < exp_integral_ei(neg[i - 1]));
    }
    const std::vector<double> pos = {0.01, 0.1, 0.3725, 1.0, 5.0, 40.0, 100.0};
    for (std::size_t i = 1; i < pos.size(); ++i) {
        CHECK(exp_integral_ei(pos[i]) > exp_integral_ei(pos[i - 1]));
    }
    CHECK(exp_integral_ei(0.37) < 0.0);
    CHECK(exp_integral_ei(0.38) > 0.0);
}

TEST_CASE("Ei differences match independent quadrature of e^t/t") {
    auto integrand = [](double t) { return std::exp(t) / t; };
    struct Pair {
        double lo, hi;
    };
    for (Pair pr : {Pair{0.5, 2.0}, Pair{1.0, 5.0}, Pair{-3.0, -1.0},
                    Pair{-20.0, -4.0}}) {
        CAPTURE(pr.lo);
        CAPTURE(pr.hi);
        const double diff =
            exp_integral_ei(pr.hi) - exp_integral_ei(pr.lo);
        const double quad = testoracle::adaptive_simpson(
            integrand, pr.lo, pr.hi, 1e-14 * std::fmax(1.0, std::fabs(diff)));
        CHECK(diff == doctest::Approx(quad).epsilon(1e-11));
    }
}

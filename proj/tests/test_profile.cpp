#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "dikmc/profile.hpp"

using namespace dikmc;

TEST_CASE("cosine profile has the advertised extrema") {
    const Profile p = cosine_profile(0.5, 4096);
    CHECK(p.grid_size() == 4096);
    CHECK(p.phi_min() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.phi_max() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(p.x_min() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p.x_max() == doctest::Approx(0.0).epsilon(1e-12));
    // grid curvature approximates 2 pi^2 = 19.739208802178717; the pinned
    // digits include the O(eps / h^2) roundoff of the second difference
    CHECK(p.d2_min() == doctest::Approx(19.739204928278923).epsilon(1e-12));
    CHECK(p.d2_min() == doctest::Approx(19.739208802178717).epsilon(1e-6));
    CHECK(p.d2_max() == doctest::Approx(-19.739204928278923).epsilon(1e-12));
    CHECK(p.has_strict_extrema());
    CHECK_NOTHROW(p.require_strict_extrema());
    CHECK(p.in_unit_band());
    CHECK_NOTHROW(p.require_unit_band());
}

TEST_CASE("finer grids sharpen the curvature estimate") {
    const Profile p = cosine_profile(0.5, 100000);
    CHECK(p.d2_min() == doctest::Approx(19.739210266322971).epsilon(1e-12));
    CHECK(std::fabs(p.d2_min() - 19.739208802178717) <
          std::fabs(cosine_profile(0.5, 4096).d2_min() - 19.739208802178717));
}

TEST_CASE("eval interpolates the cosine within grid accuracy") {
    const Profile p = cosine_profile(0.25, 4096);
    for (double x : {0.0, 0.1, 0.24, 0.25, 0.5, 0.77, 0.999}) {
        const double exact = (3.0 - std::cos(2.0 * M_PI * (x - 0.25))) / 2.0;
        CHECK(p.eval(x) == doctest::Approx(exact).epsilon(1e-7));
    }
}

TEST_CASE("eval is periodic") {
    const Profile p = cosine_profile(0.3, 512);
    for (double x : {0.05, 0.41, 0.93}) {
        CHECK(p.eval(x + 1.0) == doctest::Approx(p.eval(x)).epsilon(1e-14));
        CHECK(p.eval(x - 1.0) == doctest::Approx(p.eval(x)).epsilon(1e-14));
    }
}

TEST_CASE("degenerate profiles are recognized and refused where needed") {
    const Profile flat(std::vector<double>(16, 1.0));
    CHECK_FALSE(flat.has_strict_extrema());
    CHECK_THROWS_AS(flat.require_strict_extrema(), std::domain_error);
    CHECK(flat.in_unit_band());

    const Profile low(std::vector<double>{0.5, 0.6, 0.7, 0.6});
    CHECK_FALSE(low.in_unit_band());
    CHECK_THROWS_AS(low.require_unit_band(), std::domain_error);

    CHECK_THROWS_AS(Profile(std::vector<double>{1.0, 2.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Profile(std::vector<double>{1.0, 2.0, 1.0 / 0.0}),
                    std::invalid_argument);
}

TEST_CASE("renormalization step swaps extrema and pins the minimum at 1") {
    const Profile p = cosine_profile(0.5, 2048);
    const double c = 0.5;
    const Profile r = apply_R(p, c);
    CHECK(r.phi_min() == doctest::Approx(1.0).epsilon(1e-15));
    // new minimum where the old maximum sat, and vice versa
    CHECK(r.x_min() == doctest::Approx(p.x_max()).epsilon(1e-12));
    CHECK(r.x_max() == doctest::Approx(p.x_min()).epsilon(1e-12));
    const double expect_max = (4.0 - c * p.phi_min()) / (4.0 - c * p.phi_max());
    CHECK(r.phi_max() == doctest::Approx(expect_max).epsilon(1e-14));
    CHECK(r.in_unit_band());
    CHECK(r.has_strict_extrema());
}

TEST_CASE("the constant profile is the fixed point of R") {
    const Profile flat(std::vector<double>(32, 1.0));
    const Profile r = apply_R(flat, 0.7);
    for (double v : r.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("R contracts the profile range geometrically") {
    Profile p = cosine_profile(0.0, 1024);
    const double c = 0.5;
    double range = p.phi_max() - p.phi_min();
    for (int k = 0; k < 10; ++k) {
        p = apply_R(p, c);
        const double next = p.phi_max() - p.phi_min();
        // contraction factor c / (4 - c phi_max) <= c / (4 - 2c)
        CHECK(next <= range * c / (4.0 - 2.0 * c) * (1.0 + 1e-9));
        range = next;
    }
    CHECK(p.phi_max() - 1.0 < 1e-6);
    CHECK(p.phi_min() >= 1.0 - 1e-12);
}

TEST_CASE("R rejects out-of-range regime parameters") {
    const Profile p = cosine_profile(0.5, 64);
    CHECK_THROWS_AS(apply_R(p, 0.0), std::domain_error);
    CHECK_THROWS_AS(apply_R(p, 1.0), std::domain_error);
    CHECK_THROWS_AS(apply_R(p, -0.3), std::domain_error);
}

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "dikmc/asymptotics.hpp"
#include "dikmc/rng.hpp"
#include "dikmc/stats.hpp"

using namespace dikmc;

TEST_CASE("gumbel survival function hits the classic anchor points") {
    CHECK(gumbel_sf(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    // ln ln 2 = 0.36651292058166433: survival one half at its negative
    CHECK(gumbel_sf(-0.36651292058166433) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(gumbel_sf(-40.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gumbel_sf(10.0) < 1e-300);  // exp(-e^10) underflows to zero
    double prev = 2.0;
    for (double x : {-6.0, -2.0, -0.5, 0.0, 0.5, 2.0, 4.0}) {
        const double s = gumbel_sf(x);
        CHECK(s < prev);
        prev = s;
    }
}

TEST_CASE("frechet cdf matches the exp(-1/z) law and the gumbel transform") {
    CHECK(frechet_cdf(1.0 / std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(frechet_cdf(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    for (double z : {0.1, 0.5, 1.0, 2.0, 10.0, 100.0}) {
        CHECK(frechet_cdf(z) ==
              doctest::Approx(gumbel_sf(-std::log(z))).epsilon(1e-14));
    }
    CHECK_THROWS_AS(frechet_cdf(0.0), std::domain_error);
    CHECK_THROWS_AS(frechet_cdf(-1.0), std::domain_error);
}

TEST_CASE("first-flip centering constant") {
    // N = 22026 puts ln N a hair under 10
    Params p{22026, 1.0, 5.0, 1};
    CHECK(p.log_n() == doctest::Approx(9.9999788527248885).epsilon(1e-15));
    CHECK(t1_center(p, 30.0) ==
          doctest::Approx(1.3288731881588736).epsilon(1e-13));

    // direct formula recomputation at other parameters
    Params q{512, 2.5, 4.0, 1};
    const double ln_n = std::log(512.0);
    const double expect = std::log(25.0 / ln_n) / 2.5 +
                          std::log(ln_n) / (2.5 * ln_n) +
                          std::log(2.5) / (2.5 * ln_n);
    CHECK(t1_center(q, 25.0) == doctest::Approx(expect).epsilon(1e-14));

    CHECK_THROWS_AS(t1_center(p, p.log_n()), std::domain_error);
    CHECK_THROWS_AS(t1_center(p, 2.0), std::domain_error);
}

TEST_CASE("centered-rescaled first-flip statistic") {
    Params p{22026, 1.0, 5.0, 1};
    CHECK(center_t1_statistic(p, 30.0, 1.5) ==
          doctest::Approx(1.7112644995454953).epsilon(1e-12));
    CHECK(center_t1_statistic(p, 30.0, t1_center(p, 30.0)) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("covering scale for the half-beta-per-log regime") {
    // beta = 2 ln N throughout (field-to-size ratio one half)
    Params a{256, 1.0, 11.090354888959125, 1};
    Params b{1024, 1.0, 13.862943611198906, 1};
    Params c{4096, 1.0, 16.635532333438687, 1};
    CHECK(tc_scale(a) == doctest::Approx(1.3758612069024691e-6).epsilon(1e-12));
    CHECK(tc_scale(b) == doctest::Approx(6.8793060345123453e-8).epsilon(1e-12));
    CHECK(tc_scale(c) == doctest::Approx(3.5829718929751799e-9).epsilon(1e-12));
    // and the matching plateau centerings from the self-built field magnitude
    CHECK(t1_center(a, gamma_auto_magnitude(a)) ==
          doctest::Approx(2.2979975621287531).epsilon(1e-12));
    CHECK(t1_center(b, gamma_auto_magnitude(b)) ==
          doctest::Approx(2.2643530976000176).epsilon(1e-12));
    CHECK(t1_center(c, gamma_auto_magnitude(c)) ==
          doctest::Approx(2.2363302034931714).epsilon(1e-12));
}

TEST_CASE("profile-start centering uses the minimum's curvature") {
    Params p{22026, 1.0, 5.0, 1};
    const Profile phi = cosine_profile(0.5, 4096);
    const double v = t1_center_profile(p, 30.0, phi);
    CHECK(v == doctest::Approx(1.5012391860589724).epsilon(1e-12));
    // agrees with the analytic-curvature evaluation to stencil accuracy
    CHECK(v == doctest::Approx(1.5012391860671049).epsilon(1e-9));
    // profile centering sits above the constant-start centering: the extra
    // 0.5 lnlnN / lnN and curvature terms delay the typical first flip
    CHECK(v > t1_center(p, 30.0));

    Profile flat(std::vector<double>(64, 1.5));
    CHECK_THROWS_AS(t1_center_profile(p, 30.0, flat), std::domain_error);
    CHECK_THROWS_AS(t1_center_profile(p, 5.0, phi), std::domain_error);
}

TEST_CASE("laplace sums over the cosine profile") {
    const Profile fine = cosine_profile(0.5, 100000);
    const double ex = laplace_sum_exact(fine, 200.0, 1.0, 0.0);
    const double as = laplace_sum_asymptotic(fine, 200.0, 1.0, 0.0, 100000);
    CHECK(ex == doctest::Approx(2.7570685227733806e-86).epsilon(1e-12));
    CHECK(as == doctest::Approx(2.7604740787016088e-86).epsilon(1e-12));

    // the one-term approximation tightens like 1/gamma
    double prev = 1.0;
    const double frozen[] = {0.0047676938359415321, 0.0024412848046413763,
                             0.0012352090273050275, 0.00062126336872714912};
    int i = 0;
    for (double g : {50.0, 100.0, 200.0, 400.0}) {
        const double e = laplace_sum_exact(fine, g, 1.0, 0.0);
        const double a = laplace_sum_asymptotic(fine, g, 1.0, 0.0, 100000);
        const double rel = std::fabs(a - e) / e;
        CHECK(rel == doctest::Approx(frozen[i]).epsilon(1e-9));
        CHECK(rel < prev);
        prev = rel;
        ++i;
    }

    CHECK_THROWS_AS(laplace_sum_exact(fine, -1.0, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(laplace_sum_exact(fine, 2.0, 0.0, 0.0), std::domain_error);
}

TEST_CASE("shifted-weight laplace sum peaks at the profile maximum") {
    const Profile phi = cosine_profile(0.5, 4096);
    const double ex = laplace_sum_exact(phi, 30.0, 1.0, 8.0);

    // independent direct loop over the grid
    double direct = 0.0;
    for (int k = 0; k < phi.grid_size(); ++k) {
        const double w = 8.0 - phi.values()[k];
        direct += std::exp(-30.0 * w) / (30.0 * w);
    }
    CHECK(ex == doctest::Approx(direct).epsilon(1e-13));

    const double as = laplace_sum_asymptotic(phi, 30.0, 1.0, 8.0, 4096);
    CHECK(std::fabs(as - ex) / ex < 0.01);

    // shift must clear the profile's maximum
    CHECK_THROWS_AS(laplace_sum_exact(phi, 30.0, 1.0, 1.5), std::domain_error);
    CHECK_THROWS_AS(laplace_sum_asymptotic(phi, 30.0, 1.0, 2.0, 4096),
                    std::domain_error);
}

TEST_CASE("limit sawtooth alternates plateaus and ramps") {
    LimitSawtooth saw{{0.5, 2.0}};
    CHECK(saw.span() == doctest::Approx(4.5).epsilon(1e-15));
    CHECK(saw.eval(0.0) == doctest::Approx(-1.0));
    CHECK(saw.eval(0.5) == doctest::Approx(-1.0));
    CHECK(saw.eval(1.25) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(saw.eval(1.5) == doctest::Approx(1.0));
    CHECK(saw.eval(2.0) == doctest::Approx(1.0));
    CHECK(saw.eval(3.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(saw.eval(4.4999) == doctest::Approx(-0.9999).epsilon(1e-10));
    // the trailing plateau after the last ramp is still defined
    CHECK(saw.eval(5.4) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(saw.eval(5.5), std::out_of_range);
    CHECK_THROWS_AS(saw.eval(-0.1), std::domain_error);

    LimitSawtooth bare{{}};
    CHECK(bare.span() == doctest::Approx(0.0));
    CHECK(bare.eval(0.9) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(bare.eval(1.2), std::out_of_range);
}

TEST_CASE("sampled transforms reproduce both limit laws") {
    Rng rng(999);
    const int m = 100000;
    std::vector<double> xs, zs;
    xs.reserve(m);
    zs.reserve(m);
    for (int i = 0; i < m; ++i) {
        double u = rng.next_uniform();
        if (u <= 0.0) u = 1e-300;
        const double x = std::log(-std::log(u));
        xs.push_back(x);
        zs.push_back(std::exp(-x));
    }
    const double crit = 1.6276236115189504 / std::sqrt(static_cast<double>(m));
    CHECK(ks_statistic(xs, [](double x) { return 1.0 - gumbel_sf(x); }) < crit);
    CHECK(ks_statistic(zs, [](double z) { return frechet_cdf(z); }) < crit);
}

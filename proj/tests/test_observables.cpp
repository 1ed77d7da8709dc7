#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "dikmc/asymptotics.hpp"
#include "dikmc/engine.hpp"
#include "dikmc/observables.hpp"

using namespace dikmc;

namespace {

EventLog make_log(double t_begin, std::vector<Event> events,
                  std::vector<std::pair<double, double>> mags) {
    EventLog log;
    log.t_begin = t_begin;
    log.events = std::move(events);
    log.magnetization = std::move(mags);
    return log;
}

}  // namespace

TEST_CASE("first-flip detection is relative to the log start") {
    EventLog log = make_log(1.0, {{3.5, 2, 1, -0.4}}, {});
    CHECK(detect_first_flip(log) == doctest::Approx(2.5));
    EventLog empty;
    CHECK_THROWS_AS(detect_first_flip(empty), std::invalid_argument);
}

TEST_CASE("covering detection finds the instant of consensus") {
    EventLog log = make_log(
        0.0,
        {{1.0, 0, 1, 0.0}, {2.0, 1, 1, 0.0}, {5.0, 2, 1, 0.0}}, {});
    CHECK(detect_covering(log, 1, 3) == doctest::Approx(4.0));

    // a back-flip delays consensus until the site re-aligns
    EventLog wobble = make_log(0.0,
                               {{1.0, 0, 1, 0.0},
                                {2.0, 1, 1, 0.0},
                                {3.0, 1, -1, 0.0},
                                {4.0, 1, 1, 0.0},
                                {5.0, 2, 1, 0.0}},
                               {});
    CHECK(detect_covering(wobble, 1, 3) == doctest::Approx(4.0));

    EventLog partial = make_log(0.0, {{1.0, 0, 1, 0.0}}, {});
    CHECK_THROWS_AS(detect_covering(partial, 1, 3), std::runtime_error);
}

TEST_CASE("droplet tracking classifies flips by boundary growth") {
    // single droplet spreading from site 2 on a 5-ring: all desired
    EventLog clean = make_log(0.0,
                              {{1.0, 2, 1, 0.0},
                               {2.0, 3, 1, 0.0},
                               {3.0, 1, 1, 0.0},
                               {4.0, 0, 1, 0.0},
                               {5.0, 4, 1, 0.0}},
                              {});
    DropletSummary s1 = track_droplet(clean, 5, 1);
    CHECK(s1.undesired == 0);
    CHECK(s1.single_droplet);

    // distant nucleation: site 0 flips with no aligned neighbor
    EventLog nucleus = make_log(0.0,
                                {{1.0, 2, 1, 0.0}, {2.0, 0, 1, 0.0}}, {});
    DropletSummary s2 = track_droplet(nucleus, 5, 1);
    CHECK(s2.undesired == 1);
    CHECK_FALSE(s2.single_droplet);

    // back-flip against the target also counts
    EventLog back = make_log(0.0,
                             {{1.0, 2, 1, 0.0}, {2.0, 2, -1, 0.0}}, {});
    DropletSummary s3 = track_droplet(back, 5, 1);
    CHECK(s3.undesired == 1);
}

TEST_CASE("post-cover residual measures deviation from the flat prediction") {
    Params p{16, 1.0, 3.0, 1};
    const double x = 0.4;
    const double pred =
        4.0 * 3.0 - p.log_n() + std::log(p.log_n()) + std::log(1.0) + x;
    std::vector<double> fields(16, pred);
    CHECK(post_cover_field_residual(fields, p, x, 2, 1) ==
          doctest::Approx(0.0).epsilon(1e-14));

    fields[7] += 0.3;
    CHECK(post_cover_field_residual(fields, p, x, 2, 1) ==
          doctest::Approx(0.3).epsilon(1e-12));

    // the two neighbors of the final flip are excluded
    fields[7] -= 0.3;
    fields[1] += 100.0;
    fields[3] -= 50.0;
    CHECK(post_cover_field_residual(fields, p, x, 2, 1) ==
          doctest::Approx(0.0).epsilon(1e-14));

    // flipped sign: prediction is -pred for target -1
    std::vector<double> neg(16, -pred);
    CHECK(post_cover_field_residual(neg, p, x, 5, -1) ==
          doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("run_cycles produces consistent half-cycle records") {
    Params p{64, 1.0, 6.0, 77};
    InitialCondition init;
    init.kind = InitKind::gamma_auto;
    EventLog log;
    std::vector<PostCoverSnapshot> posts;
    const auto recs =
        run_cycles(p, init, 2, 5000, EngineKind::event_driven, 0, &log, &posts);
    REQUIRE(recs.size() == 2);
    REQUIRE(posts.size() == 2);
    CHECK(log.events.size() == 128);
    CHECK(log.magnetization.size() == 129);

    CHECK(recs[0].j == 1);
    CHECK(recs[1].j == 2);
    CHECK_FALSE(recs[0].truncated);
    CHECK_FALSE(recs[1].truncated);
    CHECK(recs[0].undesired == 0);
    CHECK(recs[1].undesired == 0);

    // T1 and T1 + Tc line up with the raw event times per half-cycle
    CHECK(recs[0].T1 == doctest::Approx(log.events[0].time).epsilon(1e-12));
    CHECK(recs[0].T1 + recs[0].Tc ==
          doctest::Approx(log.events[63].time).epsilon(1e-12));
    CHECK(recs[1].T1 ==
          doctest::Approx(log.events[64].time - log.events[63].time)
              .epsilon(1e-9));
    CHECK(recs[1].T1 + recs[1].Tc ==
          doctest::Approx(log.events[127].time - log.events[63].time)
              .epsilon(1e-9));

    // centered statistics match the published transformations
    const double mag = gamma_auto_magnitude(p);
    CHECK(recs[0].X ==
          doctest::Approx(center_t1_statistic(p, mag, recs[0].T1))
              .epsilon(1e-12));
    CHECK(recs[0].Z ==
          doctest::Approx(recs[0].Tc / tc_scale(p)).epsilon(1e-12));
    CHECK(recs[1].X ==
          doctest::Approx(center_t1_statistic(p, mag, recs[1].T1))
              .epsilon(1e-12));

    // covering is fast and linear at these parameters
    CHECK(recs[0].ramp_r2 > 0.9);
    CHECK(recs[0].field_residual_max < 1.0);
    CHECK(std::isfinite(recs[0].field_residual_max));

    // snapshots align with the records
    for (int j : {0, 1}) {
        CHECK(posts[j].fields.size() == 64);
        CHECK(posts[j].final_site >= 0);
        CHECK(posts[j].final_site < 64);
        CHECK(posts[j].x_statistic ==
              doctest::Approx(recs[j].X).epsilon(1e-14));
        const int target = (j == 0) ? 1 : -1;
        CHECK(recs[j].field_residual_max ==
              doctest::Approx(post_cover_field_residual(
                                  posts[j].fields, p, recs[j].X,
                                  posts[j].final_site, target))
                  .epsilon(1e-12));
    }
}

TEST_CASE("profile starts support exactly one half-cycle") {
    Params p{64, 1.0, 6.0, 9};
    InitialCondition init;
    init.kind = InitKind::profile;
    init.lambda0 = -25.0;
    init.profile = cosine_profile(0.5, 64);
    CHECK_THROWS_AS(
        run_cycles(p, init, 2, 5000, EngineKind::event_driven, 0),
        std::invalid_argument);
    const auto recs =
        run_cycles(p, init, 1, 5000, EngineKind::event_driven, 0);
    REQUIRE(recs.size() == 1);
    CHECK_FALSE(recs[0].truncated);
    CHECK(std::isnan(recs[0].field_residual_max));
}

TEST_CASE("run_cycles marks truncation when the budget is too small") {
    Params p{64, 1.0, 6.0, 5};
    InitialCondition init;
    init.kind = InitKind::gamma_auto;
    const auto recs =
        run_cycles(p, init, 2, 10, EngineKind::event_driven, 0);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].truncated);
}

TEST_CASE("rescaling splits plateau and ramp clocks") {
    Params p{4, 1.0, 2.0, 1};
    const double mag = 30.0;
    const double plateau = t1_center(p, mag);
    const double ramp = tc_scale(p);
    const double t1 = 1.5 * plateau;
    EventLog log = make_log(0.0,
                            {{t1, 0, 1, 0.0},
                             {t1 + 0.05, 1, 1, 0.0},
                             {t1 + 0.10, 2, 1, 0.0},
                             {t1 + 0.13, 3, 1, 0.0}},
                            {{0.0, -1.0},
                             {t1, -0.5},
                             {t1 + 0.05, 0.0},
                             {t1 + 0.10, 0.5},
                             {t1 + 0.13, 1.0}});
    const auto path = rescale_trajectory(log, p, mag);
    REQUIRE(path.size() == 5);
    CHECK(path[0].first == doctest::Approx(0.0));
    CHECK(path[0].second == doctest::Approx(-1.0));
    CHECK(path[1].first == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(path[1].second == doctest::Approx(-0.5));
    CHECK(path[2].first ==
          doctest::Approx(1.5 + 0.05 / ramp).epsilon(1e-12));
    CHECK(path[3].first ==
          doctest::Approx(1.5 + 0.10 / ramp).epsilon(1e-12));
    CHECK(path[4].first ==
          doctest::Approx(1.5 + 0.13 / ramp).epsilon(1e-12));
    CHECK(path[4].second == doctest::Approx(1.0));

    EventLog bad = log;
    bad.magnetization.pop_back();
    CHECK_THROWS_AS(rescale_trajectory(bad, p, mag), std::invalid_argument);
}

TEST_CASE("sup distance to the sawtooth vanishes for a matching staircase") {
    // staircase tracking one plateau plus one ramp of duration 0.4
    std::vector<std::pair<double, double>> path;
    path.emplace_back(0.0, -1.0);
    const int steps = 200;
    for (int i = 1; i <= steps; ++i) {
        const double s = 1.0 + 0.4 * i / steps;
        const double m = -1.0 + 2.0 * static_cast<double>(i) / steps;
        path.emplace_back(s, m);
    }
    const double d = sup_distance_to_sawtooth(path, {0.4});
    CHECK(d <= 2.0 / steps + 1e-9);
}

TEST_CASE("sup distance exposes a gross mismatch") {
    // path sits at -1 long past the limit trajectory's quick ramp
    std::vector<std::pair<double, double>> path = {{0.0, -1.0}, {2.0, 1.0}};
    const double d = sup_distance_to_sawtooth(path, {0.001});
    CHECK(d == doctest::Approx(2.0).epsilon(1e-9));
}

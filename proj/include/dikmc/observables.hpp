#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dikmc/engine.hpp"
#include "dikmc/params.hpp"

namespace dikmc {

// Per-half-cycle measurements. T1 is the wait for the first flip on the
// half-cycle clock; Tc the duration from that flip to full coverage;
// X and Z the centered/rescaled statistics; undesired counts flips that do
// not extend the droplet boundary; ramp_r2 the linear-fit quality of the
// magnetization during covering; field_residual_max the worst per-site
// deviation of the post-cover field from the constant prediction (NaN for
// profile starts, whose post-cover field is shaped, not constant).
struct CycleRecord {
    int j = 0;
    double T1 = 0.0;
    double Tc = 0.0;
    double X = 0.0;
    double Z = 0.0;
    long undesired = 0;
    double ramp_r2 = 0.0;
    double field_residual_max = 0.0;
    bool truncated = false;
};

// First event time relative to the log's start.
double detect_first_flip(const EventLog& log);

// Duration from the first flip to the first instant all n spins equal
// target_spin, for a log starting from the all-(-target) configuration.
double detect_covering(const EventLog& log, int target_spin, int n);

// Replay a half-cycle log and count undesired flips: a flip is desired when
// it is the half-cycle's first, or flips a site to target_spin while at least
// one neighbor already carries target_spin (i.e. it extends the droplet
// boundary); everything else — distant nucleations and back-flips — counts
// as undesired. single_droplet means the sweep stayed one droplet: no
// undesired flips occurred.
struct DropletSummary {
    long undesired = 0;
    bool single_droplet = true;
};
DropletSummary track_droplet(const EventLog& log, int n, int target_spin);

// Max_i |lambda_i - target * (4 beta - ln N + ln ln N + ln alpha + X)| over a
// post-cover field snapshot, excluding the two neighbors of the final flip
// (their fresh +-2 beta jump is an artifact of where the droplet closes).
double post_cover_field_residual(const std::vector<double>& fields,
                                 const Params& p, double x_measured,
                                 int final_site, int target_spin);

// Post-cover field snapshot of one half-cycle, for shape checks.
struct PostCoverSnapshot {
    std::vector<double> fields;
    int final_site = -1;
    double x_statistic = 0.0;
};

// Run n half-cycles from the all-minus start, alternating the target sign
// (+1 first). Statistics are centered with the init's field magnitude
// (limit-law constants; profile starts use the profile centering and
// support a single half-cycle). budget caps events per half-cycle; on
// truncation the partial record is marked and the run stops. Optional sinks
// collect the full event log and per-half-cycle post-cover snapshots.
std::vector<CycleRecord> run_cycles(const Params& p, const InitialCondition& init,
                                    int n_half_cycles, long budget,
                                    EngineKind kind, std::uint64_t replica,
                                    EventLog* log = nullptr,
                                    std::vector<PostCoverSnapshot>* posts = nullptr);

// Piecewise-constant rescaled magnetization m~: walking the log, stretches
// with |m| = 1 contribute dt / t(1,N) to the rescaled clock and stretches
// with |m| < 1 contribute dt / t(c,N), with t(1,N) the centering constant for
// lambda_mag and t(c,N) the deterministic covering scale. Returned as
// (s, m) breakpoints; m holds the value from each breakpoint to the next.
std::vector<std::pair<double, double>> rescale_trajectory(const EventLog& log,
                                                          const Params& p,
                                                          double lambda_mag);

// Sup-distance between a rescaled step path and the limit trajectory built
// from the listed ramp durations, evaluated at the merged breakpoints (both
// one-sided limits at each). Comparison runs to the shorter of the two spans.
double sup_distance_to_sawtooth(
    const std::vector<std::pair<double, double>>& path,
    const std::vector<double>& ramp_durations);

} // namespace dikmc

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dikmc/params.hpp"
#include "dikmc/rng.hpp"

namespace dikmc {

// One spin flip. time is absolute (cycle origin + working clock);
// field_before is the flipping site's local field just before the flip.
struct Event {
    double time = 0.0;
    int site = 0;
    int new_spin = 0;
    double field_before = 0.0;
};

// Event sequence plus magnetization samples (t, m) taken at t_begin and after
// every event.
struct EventLog {
    double t_begin = 0.0;
    std::vector<Event> events;
    std::vector<std::pair<double, double>> magnetization;
};

enum class EngineKind { event_driven, thinning };

enum class StopKind { first_flip, all_plus, all_minus, cycles, time_horizon, event_budget };

// Stopping rule for run_until. `cycles` counts completed half-cycles (each
// ends when all spins agree again); `horizon` is a working-clock time bound;
// `budget` caps events for the event_budget rule.
struct StopRule {
    StopKind kind = StopKind::first_flip;
    int cycles = 1;
    double horizon = 0.0;
    long budget = 0;
};

// Thrown when a run exceeds its event budget before the stopping condition
// (guards the multi-droplet c >= 1 regime, where coverings can stall).
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The Markov state (spins, local-field anchors, scheduled candidate flips).
// Exact event-driven stepping inverts each affected site's cumulative hazard
// at a fresh Exp(1) threshold; redrawing at field jumps is exact because,
// conditional on not having fired, the residual unit-exponential threshold is
// again Exp(1). The thinning engine is the literal dominating-Poisson
// construction (rate e^{4 beta} per site, accept with prob rate/e^{4 beta});
// both produce the same law.
class SystemState {
public:
    SystemState(const Params& params, const InitialCondition& init, Rng rng,
                EngineKind kind = EngineKind::event_driven);

    const Params& params() const { return params_; }
    int size() const { return params_.n; }
    int spin(int i) const { return spins_[i]; }
    int spin_sum() const { return spin_sum_; }
    double magnetization() const {
        return static_cast<double>(spin_sum_) / params_.n;
    }

    // Working clock (time since the current cycle origin) and absolute time.
    double now() const { return t_; }
    double absolute_time() const { return origin_ + t_; }

    // lambda_i at working-clock time t >= the site's last jump.
    double field_at(int i, double t) const;

    // Advance to the next flip (exact engine). O(log N) heap work per event.
    Event step();

    // Advance to the next accepted flip of the literal thinning construction.
    // Requires beta <= 2 (dominating rate e^{4 beta} per site).
    Event thinning_step();

    // next_step() dispatches on the engine kind chosen at construction.
    Event next_step() {
        return kind_ == EngineKind::thinning ? thinning_step() : step();
    }

    // Fold the working clock into the absolute origin (compensated) and shift
    // all per-site times so the next half-cycle starts at working time 0.
    // Keeps intra-covering gaps at full precision when Tc << T1.
    void reset_cycle_clock();

    // Count of fast-flip cap engagements (rate exponent above 700; candidate
    // scheduled at the next representable instant, ties by site index).
    long capped_flips() const { return capped_flips_; }

    // Thinning acceptances where the true rate exceeded the dominating rate
    // (field magnitude above 4 beta; the literal construction saturates).
    long saturated_accepts() const { return saturated_accepts_; }

    Rng& rng() { return rng_; }

private:
    void schedule(int i);                  // fresh threshold for site i at t_
    void heap_set(int site, double key);   // move site to its new key
    void sift_up(int pos);
    void sift_down(int pos);
    bool heap_before(int a, int b) const;  // (key, site) lexicographic
    void apply_flip(int site, double field_before);  // flip + neighbor jumps

    Params params_;
    EngineKind kind_;
    Rng rng_;
    std::vector<int8_t> spins_;
    std::vector<double> anchor_val_;   // lambda at the site's last jump
    std::vector<double> anchor_t_;     // working-clock time of that jump
    std::vector<double> next_fire_;    // scheduled candidate flip (working clock)
    std::vector<int> heap_;            // site ids, min-heap on next_fire_
    std::vector<int> heap_pos_;        // site -> index in heap_
    double t_ = 0.0;
    double origin_ = 0.0;
    double origin_comp_ = 0.0;         // Kahan compensation for origin_
    int spin_sum_ = 0;
    long capped_flips_ = 0;
    long saturated_accepts_ = 0;
};

// Convenience constructor matching the model's start: all spins -1, fields
// per the initial condition, every site's first candidate scheduled.
SystemState new_system(const Params& params, const InitialCondition& init,
                       EngineKind kind = EngineKind::event_driven,
                       std::uint64_t replica = 0);

// Run until the stopping rule fires; appends to log when given. budget caps
// events for every rule (TruncationError beyond it), except that rule
// event_budget stops cleanly at its own budget.
void run_until(SystemState& state, const StopRule& stop, long budget,
               EventLog* log = nullptr);

} // namespace dikmc

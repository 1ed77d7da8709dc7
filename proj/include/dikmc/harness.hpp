#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dikmc/csvio.hpp"
#include "dikmc/engine.hpp"
#include "dikmc/observables.hpp"
#include "dikmc/params.hpp"

namespace dikmc {

// One experiment: model parameters, initial condition, replica count, and
// run shape. budget == 0 resolves to 50 N + 1000 events per half-cycle;
// threads == 0 resolves to the hardware concurrency.
struct ExperimentConfig {
    Params params;
    InitialCondition init;
    int replicas = 1;
    int cycles = 1;
    EngineKind engine = EngineKind::event_driven;
    long budget = 0;
    int threads = 0;
    std::string out_dir;
    std::vector<int> grid;        // sweep / sawtooth ring sizes
    double c_value = 0.0;         // ln N / beta when given instead of beta
    bool has_c = false;

    // Echo-only record of the profile init (shape + parameters).
    std::string profile_shape;
    double profile_x0 = 0.5;
    int profile_grid = 4096;

    long resolved_budget() const {
        return budget > 0 ? budget : 50L * params.n + 1000;
    }
    int resolved_threads() const;
    void validate() const;
};

// Statistical verdicts: every entry passes iff statistic <= critical, so
// "at least"-style checks are encoded as distances or exceedance fractions.
struct Report {
    struct Entry {
        std::string name;
        double statistic = 0.0;
        double critical = 0.0;
        bool pass = false;
    };

    nlohmann::json config_echo;
    std::vector<Entry> tests;
    std::map<std::string, double> quantiles;
    std::vector<std::string> warnings;

    void add(const std::string& name, double statistic, double critical);
    bool all_pass() const;
    nlohmann::json to_json() const;
};

// Parse a JSON config document. Unknown keys anywhere are rejected; beta may
// be given directly or derived from (N, c), not both.
ExperimentConfig parse_config(const nlohmann::json& doc);

// Built-in defaults for each verify suite (the desk-scale experiment sizes).
ExperimentConfig suite_default_config(const std::string& suite);

nlohmann::json config_echo(const ExperimentConfig& cfg);

// Run `body(replica)` for replica = 0..replicas-1 on up to `threads` workers.
// Bodies must write only to their own replica's slot; exceptions propagate.
void parallel_for_replicas(int replicas, int threads,
                           const std::function<void(int)>& body);

// All replicas' half-cycle records, ordered by replica index. Truncated
// replicas keep their partial records; a warning is appended per truncation.
std::vector<std::vector<CycleRecord>> run_replicas(
    const ExperimentConfig& cfg, std::vector<std::string>* warnings = nullptr);

// The verify suites.
Report verify_t1_exact(const ExperimentConfig& cfg);
Report verify_oracle(const ExperimentConfig& cfg);
Report verify_gumbel(const ExperimentConfig& cfg);
Report verify_cover(const ExperimentConfig& cfg);
Report verify_cycles(const ExperimentConfig& cfg);
Report verify_sawtooth(const ExperimentConfig& cfg);
Report verify_profile(const ExperimentConfig& cfg);

// Dispatch by suite name ({t1-exact, oracle, gumbel, cover, cycles,
// sawtooth, profile}); unknown name throws std::invalid_argument.
Report run_verify(const std::string& suite, const ExperimentConfig& cfg);

// One full trajectory (replica 0) with its event log and rescaled path.
struct SimulateResult {
    EventLog log;
    std::vector<CycleRecord> records;
    std::vector<std::pair<double, double>> rescaled;
    bool truncated = false;
};
SimulateResult run_simulate(const ExperimentConfig& cfg);

// Convergence sweep over cfg.grid (beta = ln N / c per ring size).
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg);

} // namespace dikmc

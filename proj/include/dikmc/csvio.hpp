#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dikmc/engine.hpp"
#include "dikmc/observables.hpp"
#include "dikmc/profile.hpp"

namespace dikmc {

// 17-significant-digit decimal rendering (%.17g): round-trips any double.
std::string format_g17(double v);

// Writers for the pinned CSV layouts. Each creates/overwrites `path`.
void write_events_csv(const std::string& path, const EventLog& log);
void write_magnetization_csv(const std::string& path, const EventLog& log);
void write_rescaled_csv(const std::string& path,
                        const std::vector<std::pair<double, double>>& path_pts);
void write_cycles_csv(const std::string& path,
                      const std::vector<CycleRecord>& records);
void write_profile_csv(const std::string& path, const Profile& profile);

// One convergence-sweep summary row per N.
struct SweepRow {
    int n = 0;
    double beta = 0.0;
    double median_ratio = 0.0;
    double ks_gumbel = 0.0;
    double ks_frechet = 0.0;
    double median_supdist = 0.0;
};
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

// Minimal reader for round-trip checks: header fields + rows of string cells
// (comma-separated, no quoting — none of the writers emits quoted cells).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
CsvTable read_csv(const std::string& path);

} // namespace dikmc

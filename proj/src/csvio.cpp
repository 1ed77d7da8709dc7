#include "dikmc/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dikmc {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

} // namespace

void write_events_csv(const std::string& path, const EventLog& log) {
    std::ofstream out = open_out(path);
    out << "time,site,new_spin,field_before\n";
    for (const Event& ev : log.events) {
        out << format_g17(ev.time) << ',' << ev.site << ',' << ev.new_spin
            << ',' << format_g17(ev.field_before) << '\n';
    }
}

void write_magnetization_csv(const std::string& path, const EventLog& log) {
    std::ofstream out = open_out(path);
    out << "t,m\n";
    for (const auto& [t, m] : log.magnetization) {
        out << format_g17(t) << ',' << format_g17(m) << '\n';
    }
}

void write_rescaled_csv(const std::string& path,
                        const std::vector<std::pair<double, double>>& path_pts) {
    std::ofstream out = open_out(path);
    out << "s,m_tilde\n";
    for (const auto& [s, m] : path_pts) {
        out << format_g17(s) << ',' << format_g17(m) << '\n';
    }
}

void write_cycles_csv(const std::string& path,
                      const std::vector<CycleRecord>& records) {
    std::ofstream out = open_out(path);
    out << "j,T1,Tc,X,Z,undesired,ramp_r2,field_residual_max\n";
    for (const CycleRecord& r : records) {
        out << r.j << ',' << format_g17(r.T1) << ',' << format_g17(r.Tc) << ','
            << format_g17(r.X) << ',' << format_g17(r.Z) << ',' << r.undesired
            << ',' << format_g17(r.ramp_r2) << ','
            << format_g17(r.field_residual_max) << '\n';
    }
}

void write_profile_csv(const std::string& path, const Profile& profile) {
    std::ofstream out = open_out(path);
    out << "x,phi\n";
    const std::vector<double>& v = profile.values();
    for (std::size_t k = 0; k < v.size(); ++k) {
        out << format_g17(static_cast<double>(k) / v.size()) << ','
            << format_g17(v[k]) << '\n';
    }
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ofstream out = open_out(path);
    out << "N,beta,median_ratio,ks_gumbel,ks_frechet,median_supdist\n";
    for (const SweepRow& r : rows) {
        out << r.n << ',' << format_g17(r.beta) << ','
            << format_g17(r.median_ratio) << ',' << format_g17(r.ks_gumbel)
            << ',' << format_g17(r.ks_frechet) << ','
            << format_g17(r.median_supdist) << '\n';
    }
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            table.rows.push_back(std::move(cells));
        }
    }
    return table;
}

} // namespace dikmc

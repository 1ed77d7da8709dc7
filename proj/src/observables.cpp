#include "dikmc/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dikmc/asymptotics.hpp"
#include "dikmc/stats.hpp"

namespace dikmc {

double detect_first_flip(const EventLog& log) {
    if (log.events.empty()) {
        throw std::invalid_argument("detect_first_flip: log has no events");
    }
    return log.events.front().time - log.t_begin;
}

double detect_covering(const EventLog& log, int target_spin, int n) {
    if (log.events.empty()) {
        throw std::invalid_argument("detect_covering: log has no events");
    }
    long aligned = 0;  // sites currently at target_spin (start: none)
    for (const Event& ev : log.events) {
        aligned += (ev.new_spin == target_spin) ? 1 : -1;
        if (aligned == n) return ev.time - log.events.front().time;
    }
    throw std::runtime_error("detect_covering: log ends before covering");
}

DropletSummary track_droplet(const EventLog& log, int n, int target_spin) {
    DropletSummary out;
    std::vector<int> spins(static_cast<std::size_t>(n), -target_spin);
    bool first = true;
    for (const Event& ev : log.events) {
        const int l = (ev.site + n - 1) % n;
        const int r = (ev.site + 1) % n;
        const bool desired =
            first || (ev.new_spin == target_spin &&
                      (spins[l] == target_spin || spins[r] == target_spin));
        if (!desired) ++out.undesired;
        spins[ev.site] = ev.new_spin;
        first = false;
    }
    out.single_droplet = (out.undesired == 0);
    return out;
}

double post_cover_field_residual(const std::vector<double>& fields,
                                 const Params& p, double x_measured,
                                 int final_site, int target_spin) {
    const int n = static_cast<int>(fields.size());
    const double predicted =
        target_spin * (4.0 * p.beta - p.log_n() + std::log(p.log_n()) +
                       std::log(p.alpha) + x_measured);
    int skip_l = -1, skip_r = -1;
    if (final_site >= 0) {
        skip_l = (final_site + n - 1) % n;
        skip_r = (final_site + 1) % n;
    }
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i == skip_l || i == skip_r) continue;
        worst = std::max(worst, std::fabs(fields[i] - predicted));
    }
    return worst;
}

std::vector<CycleRecord> run_cycles(const Params& p, const InitialCondition& init,
                                    int n_half_cycles, long budget,
                                    EngineKind kind, std::uint64_t replica,
                                    EventLog* log,
                                    std::vector<PostCoverSnapshot>* posts) {
    p.validate();
    init.validate(p);
    if (n_half_cycles < 1) {
        throw std::invalid_argument("run_cycles: need at least one half-cycle");
    }
    const bool is_profile = (init.kind == InitKind::profile);
    if (is_profile && n_half_cycles > 1) {
        throw std::invalid_argument(
            "run_cycles: profile starts support a single half-cycle (the "
            "post-cover field is shaped, so later waits need new centering)");
    }

    const double lambda_mag = init.field_magnitude(p);
    const double t1c_first = is_profile
                                 ? t1_center_profile(p, lambda_mag, init.profile)
                                 : t1_center(p, lambda_mag);
    // Later half-cycles start from the self-built field of magnitude
    // ~ gamma_{N,beta}, whatever the first magnitude was.
    const double t1c_chain =
        (n_half_cycles > 1) ? t1_center(p, gamma_auto_magnitude(p)) : t1c_first;
    const double tcs = tc_scale(p);

    SystemState st = new_system(p, init, kind, replica);
    if (log) {
        log->t_begin = st.absolute_time();
        log->magnetization.emplace_back(st.absolute_time(), st.magnetization());
    }

    std::vector<CycleRecord> records;
    records.reserve(static_cast<std::size_t>(n_half_cycles));
    for (int j = 1; j <= n_half_cycles; ++j) {
        const int target = (j % 2 == 1) ? 1 : -1;
        st.reset_cycle_clock();

        CycleRecord rec;
        rec.j = j;
        rec.field_residual_max = std::numeric_limits<double>::quiet_NaN();
        bool first = true;
        long used = 0;
        int last_site = -1;
        std::vector<double> ts, ms;
        bool truncated = false;

        while (st.spin_sum() != target * p.n) {
            if (budget > 0 && used >= budget) {
                truncated = true;
                break;
            }
            const Event ev = st.next_step();
            ++used;
            if (log) {
                log->events.push_back(ev);
                log->magnetization.emplace_back(ev.time, st.magnetization());
            }
            last_site = ev.site;
            if (first) {
                rec.T1 = st.now();
                first = false;
            } else {
                const int l = (ev.site + p.n - 1) % p.n;
                const int r = (ev.site + 1) % p.n;
                const bool desired = ev.new_spin == target &&
                                     (st.spin(l) == target || st.spin(r) == target);
                if (!desired) ++rec.undesired;
            }
            ts.push_back(st.now());
            ms.push_back(st.magnetization());
        }

        if (truncated) {
            rec.truncated = true;
            records.push_back(rec);
            break;
        }

        rec.Tc = st.now() - rec.T1;
        const double t1c = (j == 1) ? t1c_first : t1c_chain;
        rec.X = p.alpha * p.log_n() * (rec.T1 - t1c);
        rec.Z = rec.Tc / tcs;
        rec.ramp_r2 = (ts.size() >= 2) ? r_squared(ts, ms) : 0.0;

        if (posts || !is_profile) {
            std::vector<double> fields(static_cast<std::size_t>(p.n));
            for (int i = 0; i < p.n; ++i) fields[i] = st.field_at(i, st.now());
            if (!is_profile) {
                rec.field_residual_max =
                    post_cover_field_residual(fields, p, rec.X, last_site, target);
            }
            if (posts) posts->push_back({std::move(fields), last_site, rec.X});
        }
        records.push_back(rec);
    }
    return records;
}

std::vector<std::pair<double, double>> rescale_trajectory(const EventLog& log,
                                                          const Params& p,
                                                          double lambda_mag) {
    if (log.magnetization.size() != log.events.size() + 1) {
        throw std::invalid_argument(
            "rescale_trajectory: log needs the initial magnetization sample "
            "plus one per event");
    }
    const double plateau_scale = t1_center(p, lambda_mag);
    const double ramp_scale = tc_scale(p);

    std::vector<std::pair<double, double>> path;
    path.reserve(log.events.size() + 1);
    double m_prev = log.magnetization.front().second;
    double t_prev = log.t_begin;
    double s = 0.0;
    path.emplace_back(s, m_prev);
    for (std::size_t k = 0; k < log.events.size(); ++k) {
        const double dt = log.events[k].time - t_prev;
        const double scale =
            (std::fabs(m_prev) == 1.0) ? plateau_scale : ramp_scale;
        s += dt / scale;
        m_prev = log.magnetization[k + 1].second;
        t_prev = log.events[k].time;
        path.emplace_back(s, m_prev);
    }
    return path;
}

double sup_distance_to_sawtooth(
    const std::vector<std::pair<double, double>>& path,
    const std::vector<double>& ramp_durations) {
    if (path.empty()) {
        throw std::invalid_argument("sup_distance_to_sawtooth: empty path");
    }
    LimitSawtooth saw{ramp_durations};
    // The limit path is evaluable through its trailing plateau; stop just
    // short of its end (and of the step path's end).
    const double s_hi =
        std::min(path.back().first, saw.span() + 1.0 - 1e-9);

    std::vector<double> knots;
    knots.reserve(path.size() + 2 * ramp_durations.size() + 2);
    for (const auto& pt : path) knots.push_back(pt.first);
    double corner = 0.0;
    for (double z : ramp_durations) {
        corner += 1.0;          // plateau end / ramp start
        knots.push_back(corner);
        corner += z;            // ramp end / plateau start
        knots.push_back(corner);
    }
    knots.push_back(0.0);
    knots.push_back(s_hi);
    std::sort(knots.begin(), knots.end());

    std::vector<double> xs(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) xs[i] = path[i].first;

    double worst = 0.0;
    for (double s : knots) {
        if (s < 0.0 || s > s_hi) continue;
        const double limit = saw.eval(s);
        // Step value from the right: last breakpoint with x <= s.
        auto hi = std::upper_bound(xs.begin(), xs.end(), s);
        const std::size_t right_idx =
            (hi == xs.begin()) ? 0 : static_cast<std::size_t>(hi - xs.begin()) - 1;
        // And from the left: last breakpoint with x < s.
        auto lo = std::lower_bound(xs.begin(), xs.end(), s);
        const std::size_t left_idx =
            (lo == xs.begin()) ? 0 : static_cast<std::size_t>(lo - xs.begin()) - 1;
        worst = std::max(worst, std::fabs(path[right_idx].second - limit));
        worst = std::max(worst, std::fabs(path[left_idx].second - limit));
    }
    return worst;
}

} // namespace dikmc

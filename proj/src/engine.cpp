#include "dikmc/engine.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "dikmc/hazard.hpp"

namespace dikmc {

namespace {
constexpr double kRateExpCap = 700.0;  // beyond this the rate overflows double
}

SystemState::SystemState(const Params& params, const InitialCondition& init,
                         Rng rng, EngineKind kind)
    : params_(params), kind_(kind), rng_(rng) {
    params_.validate();
    init.validate(params_);
    if (kind_ == EngineKind::thinning && params_.beta > 2.0) {
        throw std::domain_error(
            "thinning engine requires beta <= 2: the dominating per-site "
            "candidate rate e^{4 beta} is intractable beyond that");
    }
    const int n = params_.n;
    spins_.assign(n, -1);
    spin_sum_ = -n;
    anchor_val_.resize(n);
    anchor_t_.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double base;
        switch (init.kind) {
            case InitKind::constant: base = init.lambda0; break;
            case InitKind::gamma_auto: base = -gamma_auto_magnitude(params_); break;
            case InitKind::profile:
                base = init.lambda0 *
                       init.profile.eval(static_cast<double>(i) / n);
                break;
            default: base = init.lambda0; break;
        }
        if (init.noise_eps > 0.0) {
            base += init.noise_eps * (2.0 * rng_.next_uniform() - 1.0);
        }
        anchor_val_[i] = base;
    }
    if (kind_ == EngineKind::event_driven) {
        next_fire_.resize(n);
        heap_.resize(n);
        heap_pos_.resize(n);
        for (int i = 0; i < n; ++i) {
            schedule(i);
            heap_[i] = i;
            heap_pos_[i] = i;
        }
        for (int p = n / 2 - 1; p >= 0; --p) sift_down(p);
    }
}

double SystemState::field_at(int i, double t) const {
    return anchor_val_[i] * std::exp(-params_.alpha * (t - anchor_t_[i]));
}

void SystemState::schedule(int i) {
    const double a = -static_cast<double>(spins_[i]) * anchor_val_[i];
    double nf;
    if (a > kRateExpCap) {
        // Fast-flip cap: the true delay is below any representable gap, so
        // fire at the next representable instant; simultaneous capped sites
        // are ordered by site index through the heap comparator.
        ++capped_flips_;
        nf = std::nextafter(t_, std::numeric_limits<double>::infinity());
    } else {
        double e = rng_.next_exp();
        double u = invert_segment_hazard(HazardSegment{a, params_.alpha, 0.0}, e);
        nf = t_ + u;
        if (!(nf > t_)) {
            nf = std::nextafter(t_, std::numeric_limits<double>::infinity());
        }
    }
    next_fire_[i] = nf;
}

bool SystemState::heap_before(int a, int b) const {
    if (next_fire_[a] != next_fire_[b]) return next_fire_[a] < next_fire_[b];
    return a < b;
}

void SystemState::sift_up(int pos) {
    while (pos > 0) {
        int parent = (pos - 1) / 2;
        if (!heap_before(heap_[pos], heap_[parent])) break;
        std::swap(heap_[pos], heap_[parent]);
        heap_pos_[heap_[pos]] = pos;
        heap_pos_[heap_[parent]] = parent;
        pos = parent;
    }
}

void SystemState::sift_down(int pos) {
    const int n = static_cast<int>(heap_.size());
    for (;;) {
        int best = pos;
        int l = 2 * pos + 1, r = 2 * pos + 2;
        if (l < n && heap_before(heap_[l], heap_[best])) best = l;
        if (r < n && heap_before(heap_[r], heap_[best])) best = r;
        if (best == pos) return;
        std::swap(heap_[pos], heap_[best]);
        heap_pos_[heap_[pos]] = pos;
        heap_pos_[heap_[best]] = best;
        pos = best;
    }
}

void SystemState::heap_set(int site, double key) {
    next_fire_[site] = key;
    sift_up(heap_pos_[site]);
    sift_down(heap_pos_[site]);
}

void SystemState::apply_flip(int site, double field_before) {
    const int n = params_.n;
    const int old_spin = spins_[site];
    spins_[site] = static_cast<int8_t>(-old_spin);
    spin_sum_ += 2 * spins_[site];
    // The flipped site's own field is continuous; re-anchor it at the event
    // so its new hazard segment starts at full precision.
    anchor_val_[site] = field_before;
    anchor_t_[site] = t_;
    const int l = (site + n - 1) % n;
    const int r = (site + 1) % n;
    for (int k : {l, r}) {
        double lam = field_at(k, t_);
        anchor_val_[k] = lam - static_cast<double>(old_spin) * 2.0 * params_.beta;
        anchor_t_[k] = t_;
    }
}

Event SystemState::step() {
    if (kind_ != EngineKind::event_driven) {
        throw std::logic_error("step: state was built for the thinning engine");
    }
    const int site = heap_[0];
    t_ = next_fire_[site];
    const double field_before = field_at(site, t_);
    apply_flip(site, field_before);
    const int n = params_.n;
    for (int k : {site, (site + n - 1) % n, (site + 1) % n}) {
        schedule(k);
        heap_set(k, next_fire_[k]);
    }
    return Event{absolute_time(), site, spins_[site], field_before};
}

Event SystemState::thinning_step() {
    if (params_.beta > 2.0) {
        throw std::domain_error(
            "thinning engine requires beta <= 2: the dominating per-site "
            "candidate rate e^{4 beta} is intractable beyond that");
    }
    const int n = params_.n;
    const double dominating = std::exp(4.0 * params_.beta);
    const double total_rate = n * dominating;
    for (;;) {
        t_ += rng_.next_exp() / total_rate;
        const int site = rng_.next_index(n);
        const double lam = field_at(site, t_);
        const double log_accept = -static_cast<double>(spins_[site]) * lam -
                                  4.0 * params_.beta;
        if (log_accept > 0.0) ++saturated_accepts_;
        // Accept iff U e^{4 beta} < rate, i.e. ln U < -sigma lambda - 4 beta.
        const double log_u = std::log(1.0 - rng_.next_uniform());  // U in (0,1]
        if (log_u < log_accept) {
            apply_flip(site, lam);
            return Event{absolute_time(), site, spins_[site], lam};
        }
    }
}

void SystemState::reset_cycle_clock() {
    // Kahan-accumulate the elapsed working time into the absolute origin.
    const double y = t_ - origin_comp_;
    const double next = origin_ + y;
    origin_comp_ = (next - origin_) - y;
    origin_ = next;
    for (std::size_t i = 0; i < anchor_t_.size(); ++i) anchor_t_[i] -= t_;
    for (std::size_t i = 0; i < next_fire_.size(); ++i) next_fire_[i] -= t_;
    // Heap order is invariant under the uniform shift; no rebuild needed.
    t_ = 0.0;
}

SystemState new_system(const Params& params, const InitialCondition& init,
                       EngineKind kind, std::uint64_t replica) {
    return SystemState(params, init, Rng::for_replica(params.seed, replica),
                       kind);
}

void run_until(SystemState& state, const StopRule& stop, long budget,
               EventLog* log) {
    if (log) {
        log->t_begin = state.absolute_time();
        log->magnetization.emplace_back(state.absolute_time(),
                                        state.magnetization());
    }
    const int n = state.size();
    long count = 0;
    int completed = 0;
    for (;;) {
        if (stop.kind == StopKind::event_budget && count >= stop.budget) return;
        if (budget > 0 && count >= budget) {
            throw TruncationError(
                "run_until: event budget exceeded before the stopping "
                "condition (possible multi-droplet stall)");
        }
        Event ev = state.next_step();
        ++count;
        if (log) {
            log->events.push_back(ev);
            log->magnetization.emplace_back(ev.time, state.magnetization());
        }
        switch (stop.kind) {
            case StopKind::first_flip:
                return;
            case StopKind::all_plus:
                if (state.spin_sum() == n) return;
                break;
            case StopKind::all_minus:
                if (state.spin_sum() == -n) return;
                break;
            case StopKind::cycles:
                if (state.spin_sum() == n || state.spin_sum() == -n) {
                    if (++completed >= stop.cycles) return;
                }
                break;
            case StopKind::time_horizon:
                if (state.now() >= stop.horizon) return;
                break;
            case StopKind::event_budget:
                break;
        }
    }
}

} // namespace dikmc

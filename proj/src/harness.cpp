#include "dikmc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "dikmc/asymptotics.hpp"
#include "dikmc/hazard.hpp"
#include "dikmc/stats.hpp"

namespace dikmc {

namespace {

double gumbel_cdf_fn(double x) { return 1.0 - gumbel_sf(x); }

std::string engine_name(EngineKind k) {
    return k == EngineKind::thinning ? "thinning" : "event_driven";
}

void add_regime_warning(Report& rep, const Params& p) {
    if (p.c() >= 1.0) {
        rep.warnings.push_back(
            "ln N / beta = " + format_g17(p.c()) +
            " >= 1: outside the single droplet regime; a single droplet "
            "cannot invade the ring, so coverings may stall");
    }
}

void reject_unknown_keys(const nlohmann::json& obj, const std::string& where,
                         std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) {
            if (it.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw std::invalid_argument("config: unknown key \"" + it.key() +
                                        "\" in " + where);
        }
    }
}

} // namespace

int ExperimentConfig::resolved_threads() const {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void ExperimentConfig::validate() const {
    params.validate();
    init.validate(params);
    if (replicas < 1) throw std::invalid_argument("config: replicas must be >= 1");
    if (cycles < 1) throw std::invalid_argument("config: cycles must be >= 1");
    if (budget < 0) throw std::invalid_argument("config: budget must be >= 0");
    if (budget > 0 && budget < params.n) {
        throw std::invalid_argument(
            "config: budget below the ring size cannot complete a half-cycle");
    }
    if (threads < 0) throw std::invalid_argument("config: threads must be >= 0");
    if (engine == EngineKind::thinning && params.beta > 2.0) {
        throw std::invalid_argument(
            "config: thinning engine requires beta <= 2 (dominating rate "
            "e^{4 beta} per site)");
    }
}

void Report::add(const std::string& name, double statistic, double critical) {
    Entry e;
    e.name = name;
    e.statistic = statistic;
    e.critical = critical;
    e.pass = (statistic <= critical);  // NaN fails
    tests.push_back(std::move(e));
}

bool Report::all_pass() const {
    for (const Entry& e : tests) {
        if (!e.pass) return false;
    }
    return true;
}

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["config_echo"] = config_echo;
    j["tests"] = nlohmann::json::array();
    for (const Entry& e : tests) {
        j["tests"].push_back({{"name", e.name},
                              {"statistic", e.statistic},
                              {"critical", e.critical},
                              {"pass", e.pass}});
    }
    j["quantiles"] = nlohmann::json::object();
    for (const auto& [k, v] : quantiles) j["quantiles"][k] = v;
    j["warnings"] = warnings;
    return j;
}

ExperimentConfig parse_config(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw std::invalid_argument("config: top level must be a JSON object");
    }
    reject_unknown_keys(doc, "top level",
                        {"N", "alpha", "beta", "c", "seed", "replicas", "cycles",
                         "engine", "budget", "threads", "out", "grid", "init"});
    ExperimentConfig cfg;
    if (!doc.contains("N")) throw std::invalid_argument("config: N is required");
    cfg.params.n = doc.at("N").get<int>();

    if (doc.contains("alpha")) cfg.params.alpha = doc.at("alpha").get<double>();

    const bool has_beta = doc.contains("beta");
    const bool has_c = doc.contains("c");
    if (has_beta && has_c) {
        throw std::invalid_argument("config: give beta or c, not both");
    }
    if (has_c) {
        cfg.c_value = doc.at("c").get<double>();
        cfg.has_c = true;
        if (!(cfg.c_value > 0.0)) {
            throw std::invalid_argument("config: c must be > 0");
        }
        if (cfg.params.n < 3) {
            throw std::invalid_argument("config: N must be >= 3");
        }
        cfg.params.beta = std::log(static_cast<double>(cfg.params.n)) / cfg.c_value;
    } else if (has_beta) {
        cfg.params.beta = doc.at("beta").get<double>();
    } else {
        throw std::invalid_argument("config: beta or c is required");
    }

    if (doc.contains("seed")) cfg.params.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("replicas")) cfg.replicas = doc.at("replicas").get<int>();
    if (doc.contains("cycles")) cfg.cycles = doc.at("cycles").get<int>();
    if (doc.contains("budget")) cfg.budget = doc.at("budget").get<long>();
    if (doc.contains("threads")) cfg.threads = doc.at("threads").get<int>();
    if (doc.contains("out")) cfg.out_dir = doc.at("out").get<std::string>();
    if (doc.contains("engine")) {
        const std::string e = doc.at("engine").get<std::string>();
        if (e == "event_driven") {
            cfg.engine = EngineKind::event_driven;
        } else if (e == "thinning") {
            cfg.engine = EngineKind::thinning;
        } else {
            throw std::invalid_argument(
                "config: engine must be \"event_driven\" or \"thinning\"");
        }
    }
    if (doc.contains("grid")) {
        if (!doc.at("grid").is_array()) {
            throw std::invalid_argument("config: grid must be an array of ring sizes");
        }
        for (const auto& g : doc.at("grid")) cfg.grid.push_back(g.get<int>());
        std::sort(cfg.grid.begin(), cfg.grid.end());
        cfg.grid.erase(std::unique(cfg.grid.begin(), cfg.grid.end()),
                       cfg.grid.end());
    }

    cfg.init.kind = InitKind::gamma_auto;  // default start
    bool lambda0_given = false;
    if (doc.contains("init")) {
        const nlohmann::json& ji = doc.at("init");
        if (!ji.is_object()) {
            throw std::invalid_argument("config: init must be an object");
        }
        reject_unknown_keys(ji, "init", {"kind", "lambda0", "noise_eps", "profile"});
        if (ji.contains("kind")) {
            const std::string k = ji.at("kind").get<std::string>();
            if (k == "constant") {
                cfg.init.kind = InitKind::constant;
            } else if (k == "gamma_auto") {
                cfg.init.kind = InitKind::gamma_auto;
            } else if (k == "profile") {
                cfg.init.kind = InitKind::profile;
            } else {
                throw std::invalid_argument(
                    "config: init.kind must be constant, gamma_auto, or profile");
            }
        }
        if (ji.contains("lambda0")) {
            cfg.init.lambda0 = ji.at("lambda0").get<double>();
            lambda0_given = true;
        }
        if (ji.contains("noise_eps")) {
            cfg.init.noise_eps = ji.at("noise_eps").get<double>();
        }
        if (ji.contains("profile")) {
            const nlohmann::json& jp = ji.at("profile");
            if (!jp.is_object()) {
                throw std::invalid_argument("config: init.profile must be an object");
            }
            reject_unknown_keys(jp, "init.profile", {"shape", "x0", "grid", "values"});
            const std::string shape =
                jp.contains("shape") ? jp.at("shape").get<std::string>() : "cosine";
            if (shape == "cosine") {
                cfg.profile_x0 = jp.contains("x0") ? jp.at("x0").get<double>() : 0.5;
                cfg.profile_grid =
                    jp.contains("grid") ? jp.at("grid").get<int>() : 4096;
                cfg.init.profile = cosine_profile(cfg.profile_x0, cfg.profile_grid);
                cfg.profile_shape = "cosine";
            } else if (shape == "values") {
                if (!jp.contains("values") || !jp.at("values").is_array()) {
                    throw std::invalid_argument(
                        "config: init.profile shape \"values\" needs a values array");
                }
                std::vector<double> v;
                for (const auto& e : jp.at("values")) v.push_back(e.get<double>());
                cfg.init.profile = Profile(std::move(v));
                cfg.profile_shape = "values";
            } else {
                throw std::invalid_argument(
                    "config: init.profile.shape must be \"cosine\" or \"values\"");
            }
        }
    }
    if (cfg.init.kind == InitKind::constant && !lambda0_given) {
        throw std::invalid_argument(
            "config: constant init needs an explicit lambda0");
    }
    if (cfg.init.kind == InitKind::profile && cfg.init.profile.empty()) {
        throw std::invalid_argument("config: profile init needs init.profile");
    }
    if (cfg.init.kind != InitKind::constant && !lambda0_given) {
        // Field scale defaults to the self-selected magnitude.
        cfg.init.lambda0 = -gamma_auto_magnitude(cfg.params);
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig suite_default_config(const std::string& suite) {
    ExperimentConfig cfg;
    cfg.params.alpha = 1.0;
    cfg.params.seed = 1;
    if (suite == "t1-exact") {
        cfg.params.n = 64;
        cfg.params.beta = 5.0;
        cfg.init.kind = InitKind::constant;
        cfg.init.lambda0 = -30.0;
        cfg.replicas = 10000;
    } else if (suite == "oracle") {
        cfg.params.n = 8;
        cfg.params.beta = 1.2;
        cfg.init.kind = InitKind::constant;
        cfg.init.lambda0 = -3.0;
        cfg.replicas = 5000;
    } else if (suite == "gumbel" || suite == "cover") {
        cfg.params.n = 4096;
        cfg.has_c = true;
        cfg.c_value = 0.5;
        cfg.params.beta = std::log(4096.0) / 0.5;
        cfg.init.kind = InitKind::gamma_auto;
        cfg.replicas = 2000;
    } else if (suite == "cycles") {
        cfg.params.n = 1024;
        cfg.has_c = true;
        cfg.c_value = 0.5;
        cfg.params.beta = std::log(1024.0) / 0.5;
        cfg.init.kind = InitKind::gamma_auto;
        cfg.replicas = 500;
        cfg.cycles = 6;
    } else if (suite == "sawtooth") {
        cfg.params.n = 4096;
        cfg.has_c = true;
        cfg.c_value = 0.5;
        cfg.params.beta = std::log(4096.0) / 0.5;
        cfg.init.kind = InitKind::gamma_auto;
        cfg.replicas = 400;
        cfg.grid = {256, 1024, 4096};
    } else if (suite == "profile") {
        cfg.params.n = 4096;
        cfg.has_c = true;
        cfg.c_value = 0.5;
        cfg.params.beta = std::log(4096.0) / 0.5;
        cfg.init.kind = InitKind::profile;
        cfg.init.profile = cosine_profile(0.5, 4096);
        cfg.init.lambda0 = -gamma_auto_magnitude(cfg.params);
        cfg.profile_shape = "cosine";
        cfg.profile_x0 = 0.5;
        cfg.profile_grid = 4096;
        cfg.replicas = 1000;
    } else {
        throw std::invalid_argument("unknown suite: " + suite);
    }
    return cfg;
}

nlohmann::json config_echo(const ExperimentConfig& cfg) {
    nlohmann::json e;
    e["N"] = cfg.params.n;
    e["alpha"] = cfg.params.alpha;
    e["beta"] = cfg.params.beta;
    e["c"] = cfg.params.c();
    e["seed"] = cfg.params.seed;
    e["replicas"] = cfg.replicas;
    e["cycles"] = cfg.cycles;
    e["engine"] = engine_name(cfg.engine);
    e["budget"] = cfg.resolved_budget();
    e["threads"] = cfg.threads;
    if (!cfg.out_dir.empty()) e["out"] = cfg.out_dir;
    if (!cfg.grid.empty()) e["grid"] = cfg.grid;
    nlohmann::json init;
    switch (cfg.init.kind) {
        case InitKind::constant: init["kind"] = "constant"; break;
        case InitKind::gamma_auto: init["kind"] = "gamma_auto"; break;
        case InitKind::profile: init["kind"] = "profile"; break;
    }
    init["lambda0"] = cfg.init.lambda0;
    init["noise_eps"] = cfg.init.noise_eps;
    if (cfg.init.kind == InitKind::profile) {
        nlohmann::json jp;
        jp["shape"] = cfg.profile_shape.empty() ? "values" : cfg.profile_shape;
        if (cfg.profile_shape == "cosine") {
            jp["x0"] = cfg.profile_x0;
            jp["grid"] = cfg.profile_grid;
        } else {
            jp["grid"] = cfg.init.profile.grid_size();
        }
        init["profile"] = jp;
    }
    e["init"] = init;
    return e;
}

void parallel_for_replicas(int replicas, int threads,
                           const std::function<void(int)>& body) {
    if (replicas <= 0) return;
    const int workers = std::max(1, std::min(threads, replicas));
    if (workers == 1) {
        for (int r = 0; r < replicas; ++r) body(r);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                int r;
                while ((r = next.fetch_add(1)) < replicas) body(r);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

std::vector<std::vector<CycleRecord>> run_replicas(
    const ExperimentConfig& cfg, std::vector<std::string>* warnings) {
    cfg.validate();
    std::vector<std::vector<CycleRecord>> out(
        static_cast<std::size_t>(cfg.replicas));
    const long budget = cfg.resolved_budget();
    parallel_for_replicas(cfg.replicas, cfg.resolved_threads(), [&](int r) {
        out[static_cast<std::size_t>(r)] =
            run_cycles(cfg.params, cfg.init, cfg.cycles, budget, cfg.engine,
                       static_cast<std::uint64_t>(r));
    });
    if (warnings) {
        for (int r = 0; r < cfg.replicas; ++r) {
            const auto& recs = out[static_cast<std::size_t>(r)];
            if (!recs.empty() && recs.back().truncated) {
                warnings->push_back("replica " + std::to_string(r) +
                                    " hit the event budget in half-cycle " +
                                    std::to_string(recs.back().j));
            }
        }
    }
    return out;
}

Report verify_t1_exact(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.init.kind != InitKind::constant || cfg.init.noise_eps != 0.0) {
        throw std::invalid_argument(
            "t1-exact suite needs a constant, noise-free initial field (the "
            "exact survival law assumes it)");
    }
    const double gamma = cfg.init.field_magnitude(cfg.params);
    if (!(gamma >= 0.0)) {
        throw std::invalid_argument(
            "t1-exact suite needs lambda0 <= 0 (field opposing the spins)");
    }
    const int m = cfg.replicas;
    std::vector<double> t1(static_cast<std::size_t>(m));
    parallel_for_replicas(m, cfg.resolved_threads(), [&](int r) {
        SystemState st = new_system(cfg.params, cfg.init, cfg.engine,
                                    static_cast<std::uint64_t>(r));
        st.next_step();
        t1[static_cast<std::size_t>(r)] = st.now();
    });

    Report rep;
    rep.config_echo = config_echo(cfg);
    const Params p = cfg.params;
    const auto cdf = [&p, gamma](double t) {
        return 1.0 - t1_survival(p.n, gamma, p.alpha, t);
    };
    rep.add("t1_exact_ks", ks_statistic(t1, cdf),
            1.63 / std::sqrt(static_cast<double>(m)));
    rep.quantiles["t1_q10"] = quantile(t1, 0.10);
    rep.quantiles["t1_q50"] = quantile(t1, 0.50);
    rep.quantiles["t1_q90"] = quantile(t1, 0.90);
    add_regime_warning(rep, p);
    return rep;
}

Report verify_oracle(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.params.beta > 2.0) {
        throw std::invalid_argument(
            "oracle suite runs the thinning engine: beta must be <= 2");
    }
    if (cfg.init.kind != InitKind::constant || cfg.init.noise_eps != 0.0) {
        throw std::invalid_argument(
            "oracle suite needs a constant, noise-free initial field");
    }
    const int m = cfg.replicas;
    std::vector<double> t1_event(static_cast<std::size_t>(m));
    std::vector<double> t1_thin(static_cast<std::size_t>(m));
    std::vector<int> first_site(static_cast<std::size_t>(m));
    parallel_for_replicas(m, cfg.resolved_threads(), [&](int r) {
        {
            SystemState st = new_system(cfg.params, cfg.init,
                                        EngineKind::event_driven,
                                        static_cast<std::uint64_t>(r));
            const Event ev = st.next_step();
            t1_event[static_cast<std::size_t>(r)] = st.now();
            first_site[static_cast<std::size_t>(r)] = ev.site;
        }
        {
            SystemState st = new_system(cfg.params, cfg.init, EngineKind::thinning,
                                        static_cast<std::uint64_t>(m + r));
            st.next_step();
            t1_thin[static_cast<std::size_t>(r)] = st.now();
        }
    });

    Report rep;
    rep.config_echo = config_echo(cfg);
    rep.add("t1_two_sample_ks", ks_two_sample(t1_event, t1_thin),
            ks_two_sample_critical(static_cast<std::size_t>(m),
                                   static_cast<std::size_t>(m)));
    std::vector<long> counts(static_cast<std::size_t>(cfg.params.n), 0);
    for (int site : first_site) ++counts[static_cast<std::size_t>(site)];
    rep.add("first_flip_site_chi2", chi_square_uniform(counts),
            chi_square_critical(cfg.params.n - 1, 0.01));
    rep.quantiles["t1_event_q50"] = median(t1_event);
    rep.quantiles["t1_thinning_q50"] = median(t1_thin);
    add_regime_warning(rep, cfg.params);
    return rep;
}

Report verify_gumbel(const ExperimentConfig& cfg) {
    ExperimentConfig c1 = cfg;
    c1.cycles = 1;
    Report rep;
    rep.config_echo = config_echo(c1);
    auto all = run_replicas(c1, &rep.warnings);
    std::vector<double> xs;
    xs.reserve(all.size());
    for (const auto& recs : all) {
        if (!recs.empty() && !recs.front().truncated) xs.push_back(recs.front().X);
    }
    if (xs.empty()) {
        throw TruncationError("gumbel suite: every replica hit the event budget");
    }
    rep.add("gumbel_ks", ks_statistic(xs, gumbel_cdf_fn), 0.05);
    rep.quantiles["x_q10"] = quantile(xs, 0.10);
    rep.quantiles["x_q50"] = quantile(xs, 0.50);
    rep.quantiles["x_q90"] = quantile(xs, 0.90);
    add_regime_warning(rep, cfg.params);
    return rep;
}

Report verify_cover(const ExperimentConfig& cfg) {
    ExperimentConfig c1 = cfg;
    c1.cycles = 1;
    Report rep;
    rep.config_echo = config_echo(c1);
    auto all = run_replicas(c1, &rep.warnings);
    std::vector<double> zs, ratios, residuals;
    long with_undesired = 0, total = 0;
    for (const auto& recs : all) {
        if (recs.empty() || recs.front().truncated) continue;
        const CycleRecord& rc = recs.front();
        ++total;
        zs.push_back(rc.Z);
        ratios.push_back(rc.Z * std::exp(rc.X));
        if (rc.undesired > 0) ++with_undesired;
        residuals.push_back(rc.field_residual_max);
    }
    if (total == 0) {
        throw TruncationError("cover suite: every replica hit the event budget");
    }
    rep.add("cover_ratio_median_dist", std::fabs(median(ratios) - 1.0), 0.2);
    rep.add("cover_frechet_ks", ks_statistic(zs, frechet_cdf), 0.08);
    rep.add("cover_undesired_fraction",
            static_cast<double>(with_undesired) / static_cast<double>(total),
            0.02);
    if (cfg.init.kind != InitKind::profile) {
        long exceed = 0;
        for (double r : residuals) {
            if (!(r <= 0.5)) ++exceed;  // NaN counts as exceeding
        }
        rep.add("cover_residual_exceed_fraction",
                static_cast<double>(exceed) / static_cast<double>(total), 0.05);
        rep.quantiles["residual_q50"] = median(residuals);
        rep.quantiles["residual_q95"] = quantile(residuals, 0.95);
    }
    rep.quantiles["ratio_q10"] = quantile(ratios, 0.10);
    rep.quantiles["ratio_q50"] = quantile(ratios, 0.50);
    rep.quantiles["ratio_q90"] = quantile(ratios, 0.90);
    rep.quantiles["z_q50"] = median(zs);
    add_regime_warning(rep, cfg.params);
    return rep;
}

Report verify_cycles(const ExperimentConfig& cfg) {
    Report rep;
    rep.config_echo = config_echo(cfg);
    auto all = run_replicas(cfg, &rep.warnings);
    const int nc = cfg.cycles;
    std::vector<std::vector<double>> xs_by_j(static_cast<std::size_t>(nc));
    std::vector<double> zs_pooled, lag_a, lag_b;
    for (const auto& recs : all) {
        if (static_cast<int>(recs.size()) != nc || recs.back().truncated) continue;
        for (int j = 0; j < nc; ++j) {
            xs_by_j[static_cast<std::size_t>(j)].push_back(
                recs[static_cast<std::size_t>(j)].X);
            zs_pooled.push_back(recs[static_cast<std::size_t>(j)].Z);
        }
        for (int j = 0; j + 1 < nc; ++j) {
            lag_a.push_back(recs[static_cast<std::size_t>(j)].X);
            lag_b.push_back(recs[static_cast<std::size_t>(j + 1)].X);
        }
    }
    if (zs_pooled.empty()) {
        throw TruncationError("cycles suite: every replica hit the event budget");
    }
    for (int j = 0; j < nc; ++j) {
        rep.add("cycles_gumbel_ks_j" + std::to_string(j + 1),
                ks_statistic(xs_by_j[static_cast<std::size_t>(j)], gumbel_cdf_fn),
                0.07);
    }
    if (nc >= 2) {
        rep.add("cycles_lag1_corr", std::fabs(pearson_corr(lag_a, lag_b)), 0.1);
    }
    rep.add("cycles_frechet_ks", ks_statistic(zs_pooled, frechet_cdf), 0.08);
    for (int j = 0; j < nc; ++j) {
        rep.quantiles["x_q50_j" + std::to_string(j + 1)] =
            median(xs_by_j[static_cast<std::size_t>(j)]);
    }
    add_regime_warning(rep, cfg.params);
    return rep;
}

Report verify_sawtooth(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::vector<int> grid =
        cfg.grid.empty() ? std::vector<int>{256, 1024, 4096} : cfg.grid;
    const double c = cfg.has_c ? cfg.c_value : cfg.params.c();
    if (!(c > 0.0)) throw std::invalid_argument("sawtooth suite: c must be > 0");

    Report rep;
    rep.config_echo = config_echo(cfg);
    rep.config_echo["grid"] = grid;
    std::vector<double> medians;
    double r2_fail_fraction = std::numeric_limits<double>::quiet_NaN();
    const int m = cfg.replicas;

    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        Params p = cfg.params;
        p.n = grid[gi];
        p.beta = std::log(static_cast<double>(p.n)) / c;
        const long budget = cfg.budget > 0 ? cfg.budget : 50L * p.n + 1000;
        std::vector<double> sup(static_cast<std::size_t>(m), 0.0);
        std::vector<double> r2(static_cast<std::size_t>(m), 0.0);
        std::vector<char> ok(static_cast<std::size_t>(m), 0);
        std::vector<char> undes(static_cast<std::size_t>(m), 0);
        parallel_for_replicas(m, cfg.resolved_threads(), [&](int r) {
            EventLog log;
            auto recs = run_cycles(p, cfg.init, 1, budget, cfg.engine,
                                   static_cast<std::uint64_t>(r), &log);
            if (recs.empty() || recs.front().truncated) return;
            const auto path =
                rescale_trajectory(log, p, cfg.init.field_magnitude(p));
            sup[static_cast<std::size_t>(r)] =
                sup_distance_to_sawtooth(path, {recs.front().Z});
            r2[static_cast<std::size_t>(r)] = recs.front().ramp_r2;
            undes[static_cast<std::size_t>(r)] = recs.front().undesired > 0;
            ok[static_cast<std::size_t>(r)] = 1;
        });
        std::vector<double> sups;
        for (int r = 0; r < m; ++r) {
            if (ok[static_cast<std::size_t>(r)]) {
                sups.push_back(sup[static_cast<std::size_t>(r)]);
            } else {
                rep.warnings.push_back("N=" + std::to_string(p.n) + " replica " +
                                       std::to_string(r) +
                                       " hit the event budget");
            }
        }
        if (sups.empty()) {
            throw TruncationError("sawtooth suite: every replica truncated at N=" +
                                  std::to_string(p.n));
        }
        const double med = median(sups);
        medians.push_back(med);
        rep.quantiles["supdist_median_N" + std::to_string(p.n)] = med;
        if (gi + 1 == grid.size()) {
            long clean = 0, fail = 0;
            for (int r = 0; r < m; ++r) {
                if (ok[static_cast<std::size_t>(r)] &&
                    !undes[static_cast<std::size_t>(r)]) {
                    ++clean;
                    if (r2[static_cast<std::size_t>(r)] < 0.99) ++fail;
                }
            }
            if (clean > 0) {
                r2_fail_fraction =
                    static_cast<double>(fail) / static_cast<double>(clean);
            }
        }
    }

    double worst_ratio = 0.0;
    for (std::size_t i = 1; i < medians.size(); ++i) {
        worst_ratio = std::max(worst_ratio, medians[i] / medians[i - 1]);
    }
    rep.add("sawtooth_median_decreasing", worst_ratio, 1.0);
    rep.add("sawtooth_dist_final", medians.back(), 0.1);
    rep.add("sawtooth_ramp_r2_fail_fraction", r2_fail_fraction, 0.05);
    add_regime_warning(rep, cfg.params);
    return rep;
}

Report verify_profile(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.init.kind != InitKind::profile) {
        throw std::invalid_argument(
            "profile suite needs a profile initial condition");
    }
    const Profile& phi = cfg.init.profile;
    phi.require_unit_band();
    phi.require_strict_extrema();
    const double c = cfg.params.c();
    const Profile rphi = apply_R(phi, c);
    const int n = cfg.params.n;
    std::vector<double> rphi_at_site(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        rphi_at_site[static_cast<std::size_t>(i)] =
            rphi.eval(static_cast<double>(i) / n);
    }

    const int m = cfg.replicas;
    const long budget = cfg.resolved_budget();
    std::vector<double> xs(static_cast<std::size_t>(m), 0.0);
    std::vector<double> r2s(static_cast<std::size_t>(m), 0.0);
    std::vector<char> ok(static_cast<std::size_t>(m), 0);
    parallel_for_replicas(m, cfg.resolved_threads(), [&](int r) {
        std::vector<PostCoverSnapshot> posts;
        auto recs = run_cycles(cfg.params, cfg.init, 1, budget, cfg.engine,
                               static_cast<std::uint64_t>(r), nullptr, &posts);
        if (recs.empty() || recs.front().truncated || posts.empty()) return;
        xs[static_cast<std::size_t>(r)] = recs.front().X;
        const PostCoverSnapshot& snap = posts.front();
        const int skip_l = (snap.final_site + n - 1) % n;
        const int skip_r = (snap.final_site + 1) % n;
        std::vector<double> rx, ry;
        rx.reserve(static_cast<std::size_t>(n));
        ry.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            if (i == skip_l || i == skip_r) continue;
            rx.push_back(rphi_at_site[static_cast<std::size_t>(i)]);
            ry.push_back(snap.fields[static_cast<std::size_t>(i)]);
        }
        r2s[static_cast<std::size_t>(r)] = r_squared(rx, ry);
        ok[static_cast<std::size_t>(r)] = 1;
    });

    Report rep;
    rep.config_echo = config_echo(cfg);
    std::vector<double> xs_ok, r2_ok;
    for (int r = 0; r < m; ++r) {
        if (ok[static_cast<std::size_t>(r)]) {
            xs_ok.push_back(xs[static_cast<std::size_t>(r)]);
            r2_ok.push_back(r2s[static_cast<std::size_t>(r)]);
        } else {
            rep.warnings.push_back("replica " + std::to_string(r) +
                                   " hit the event budget");
        }
    }
    if (xs_ok.empty()) {
        throw TruncationError("profile suite: every replica hit the event budget");
    }
    rep.add("profile_gumbel_ks", ks_statistic(xs_ok, gumbel_cdf_fn), 0.06);
    rep.add("profile_shape_r2_dist", 1.0 - median(r2_ok), 0.05);

    Profile iterated = phi;
    for (int k = 0; k < 10; ++k) iterated = apply_R(iterated, c);
    double sup_dev = 0.0;
    for (double v : iterated.values()) {
        sup_dev = std::max(sup_dev, std::fabs(v - 1.0));
    }
    rep.add("profile_contraction_sup", sup_dev, 1e-3);

    rep.quantiles["x_q50"] = median(xs_ok);
    rep.quantiles["shape_r2_q50"] = median(r2_ok);
    add_regime_warning(rep, cfg.params);
    return rep;
}

Report run_verify(const std::string& suite, const ExperimentConfig& cfg) {
    if (suite == "t1-exact") return verify_t1_exact(cfg);
    if (suite == "oracle") return verify_oracle(cfg);
    if (suite == "gumbel") return verify_gumbel(cfg);
    if (suite == "cover") return verify_cover(cfg);
    if (suite == "cycles") return verify_cycles(cfg);
    if (suite == "sawtooth") return verify_sawtooth(cfg);
    if (suite == "profile") return verify_profile(cfg);
    throw std::invalid_argument("unknown suite: " + suite);
}

SimulateResult run_simulate(const ExperimentConfig& cfg) {
    cfg.validate();
    SimulateResult out;
    out.records = run_cycles(cfg.params, cfg.init, cfg.cycles,
                             cfg.resolved_budget(), cfg.engine, 0, &out.log);
    out.truncated = !out.records.empty() && out.records.back().truncated;
    try {
        out.rescaled = rescale_trajectory(out.log, cfg.params,
                                          cfg.init.field_magnitude(cfg.params));
    } catch (const std::domain_error&) {
        // No valid plateau scale (field magnitude <= ln N): the raw outputs
        // still stand, the rescaled path is just empty.
        out.rescaled.clear();
    }
    return out;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.grid.empty()) {
        throw std::invalid_argument("sweep: grid of ring sizes is required");
    }
    const double c = cfg.has_c ? cfg.c_value : cfg.params.c();
    if (!(c > 0.0)) throw std::invalid_argument("sweep: c must be > 0");
    const int m = cfg.replicas;

    std::vector<SweepRow> rows;
    for (int nsize : cfg.grid) {
        Params p = cfg.params;
        p.n = nsize;
        p.beta = std::log(static_cast<double>(p.n)) / c;
        const long budget = cfg.budget > 0 ? cfg.budget : 50L * p.n + 1000;
        std::vector<double> xv(static_cast<std::size_t>(m), 0.0);
        std::vector<double> zv(static_cast<std::size_t>(m), 0.0);
        std::vector<double> sv(static_cast<std::size_t>(m), 0.0);
        std::vector<char> ok(static_cast<std::size_t>(m), 0);
        parallel_for_replicas(m, cfg.resolved_threads(), [&](int r) {
            EventLog log;
            auto recs = run_cycles(p, cfg.init, 1, budget, cfg.engine,
                                   static_cast<std::uint64_t>(r), &log);
            if (recs.empty() || recs.front().truncated) return;
            xv[static_cast<std::size_t>(r)] = recs.front().X;
            zv[static_cast<std::size_t>(r)] = recs.front().Z;
            const auto path =
                rescale_trajectory(log, p, cfg.init.field_magnitude(p));
            sv[static_cast<std::size_t>(r)] =
                sup_distance_to_sawtooth(path, {recs.front().Z});
            ok[static_cast<std::size_t>(r)] = 1;
        });
        std::vector<double> xs, zs, ratios, sups;
        for (int r = 0; r < m; ++r) {
            if (!ok[static_cast<std::size_t>(r)]) continue;
            xs.push_back(xv[static_cast<std::size_t>(r)]);
            zs.push_back(zv[static_cast<std::size_t>(r)]);
            ratios.push_back(zv[static_cast<std::size_t>(r)] *
                             std::exp(xv[static_cast<std::size_t>(r)]));
            sups.push_back(sv[static_cast<std::size_t>(r)]);
        }
        if (xs.empty()) {
            throw TruncationError("sweep: every replica truncated at N=" +
                                  std::to_string(p.n));
        }
        SweepRow row;
        row.n = p.n;
        row.beta = p.beta;
        row.median_ratio = median(ratios);
        row.ks_gumbel = ks_statistic(xs, gumbel_cdf_fn);
        row.ks_frechet = ks_statistic(zs, frechet_cdf);
        row.median_supdist = median(sups);
        rows.push_back(row);
    }
    return rows;
}

} // namespace dikmc

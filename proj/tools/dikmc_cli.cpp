#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "dikmc/csvio.hpp"
#include "dikmc/harness.hpp"

namespace {

using namespace dikmc;

ExperimentConfig default_simulate_config() {
    ExperimentConfig cfg;
    cfg.params.n = 64;
    cfg.params.alpha = 1.0;
    cfg.params.beta = 6.0;
    cfg.params.seed = 1;
    cfg.init.kind = InitKind::gamma_auto;
    cfg.init.lambda0 = -gamma_auto_magnitude(cfg.params);
    cfg.cycles = 2;
    return cfg;
}

std::string ensure_out_dir(const ExperimentConfig& cfg) {
    const std::string dir = cfg.out_dir.empty() ? "." : cfg.out_dir;
    std::filesystem::create_directories(dir);
    return dir;
}

void print_report(const Report& rep) {
    for (const auto& e : rep.tests) {
        std::printf("%-34s statistic %s  critical %s  %s\n", e.name.c_str(),
                    format_g17(e.statistic).c_str(),
                    format_g17(e.critical).c_str(), e.pass ? "PASS" : "FAIL");
    }
    for (const auto& w : rep.warnings) {
        std::fprintf(stderr, "warning: %s\n", w.c_str());
    }
}

void warn_regime(const ExperimentConfig& cfg) {
    if (cfg.params.c() >= 1.0) {
        std::fprintf(stderr,
                     "warning: ln N / beta = %s >= 1 violates the single "
                     "droplet assumption; coverings may stall or fragment\n",
                     format_g17(cfg.params.c()).c_str());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact simulator and statistical harness for dissipative "
                 "spin-flip dynamics on a ring"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out_dir;
    auto* opt_config =
        app.add_option("--config", config_path, "JSON config file");
    auto* opt_seed = app.add_option("--seed", seed, "master seed override");
    auto* opt_threads = app.add_option(
        "--threads", threads, "worker threads (fallback: DIKMC_THREADS env)");
    auto* opt_out = app.add_option("--out", out_dir, "output directory");

    CLI::App* cmd_simulate = app.add_subcommand(
        "simulate", "run one trajectory; write events, magnetization, "
                    "rescaled, and cycles CSVs");
    std::string suite;
    CLI::App* cmd_verify =
        app.add_subcommand("verify", "run a verification suite");
    cmd_verify
        ->add_option("suite", suite,
                     "t1-exact | oracle | gumbel | cover | cycles | sawtooth | "
                     "profile")
        ->required();
    CLI::App* cmd_sweep = app.add_subcommand(
        "sweep", "convergence summary over a grid of ring sizes");

    CLI11_PARSE(app, argc, argv);

    ExperimentConfig cfg;
    try {
        if (opt_config->count() > 0) {
            std::ifstream in(config_path);
            if (!in) {
                throw std::invalid_argument("cannot open config file: " +
                                            config_path);
            }
            cfg = parse_config(nlohmann::json::parse(in));
        } else if (cmd_verify->parsed()) {
            cfg = suite_default_config(suite);
        } else if (cmd_sweep->parsed()) {
            cfg = suite_default_config("sawtooth");
        } else {
            cfg = default_simulate_config();
        }
        if (opt_seed->count() > 0) cfg.params.seed = seed;
        if (opt_threads->count() > 0) {
            cfg.threads = threads;
        } else if (const char* env = std::getenv("DIKMC_THREADS");
                   env != nullptr && *env != '\0') {
            cfg.threads = static_cast<int>(std::strtol(env, nullptr, 10));
            if (cfg.threads <= 0) {
                throw std::invalid_argument(
                    "DIKMC_THREADS must be a positive integer");
            }
        }
        if (opt_out->count() > 0) cfg.out_dir = out_dir;
        cfg.validate();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }

    warn_regime(cfg);

    try {
        if (cmd_simulate->parsed()) {
            const SimulateResult res = run_simulate(cfg);
            const std::string dir = ensure_out_dir(cfg);
            write_events_csv(dir + "/events.csv", res.log);
            write_magnetization_csv(dir + "/magnetization.csv", res.log);
            write_rescaled_csv(dir + "/rescaled.csv", res.rescaled);
            write_cycles_csv(dir + "/cycles.csv", res.records);
            std::printf("half-cycles %zu, events %zu -> %s/{events,"
                        "magnetization,rescaled,cycles}.csv\n",
                        res.records.size(), res.log.events.size(), dir.c_str());
            if (res.truncated) {
                std::fprintf(stderr,
                             "truncated: event budget exhausted before covering\n");
                return 3;
            }
            return 0;
        }
        if (cmd_verify->parsed()) {
            const Report rep = run_verify(suite, cfg);
            const std::string dir = ensure_out_dir(cfg);
            const std::string path = dir + "/report_" + suite + ".json";
            std::ofstream out(path);
            out << rep.to_json().dump(2) << "\n";
            print_report(rep);
            std::printf("report: %s\n", path.c_str());
            return rep.all_pass() ? 0 : 1;
        }
        if (cmd_sweep->parsed()) {
            const std::vector<SweepRow> rows = run_sweep(cfg);
            const std::string dir = ensure_out_dir(cfg);
            write_sweep_csv(dir + "/sweep.csv", rows);
            for (const SweepRow& r : rows) {
                std::printf("N %d  beta %s  median_ratio %s  ks_gumbel %s  "
                            "ks_frechet %s  median_supdist %s\n",
                            r.n, format_g17(r.beta).c_str(),
                            format_g17(r.median_ratio).c_str(),
                            format_g17(r.ks_gumbel).c_str(),
                            format_g17(r.ks_frechet).c_str(),
                            format_g17(r.median_supdist).c_str());
            }
            std::printf("sweep: %s/sweep.csv\n", dir.c_str());
            return 0;
        }
    } catch (const TruncationError& e) {
        std::fprintf(stderr, "truncated: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

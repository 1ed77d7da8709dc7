#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "dikmc/profile.hpp"

namespace dikmc {

// Ring-model parameters. c = ln N / beta is always derived, never stored.
struct Params {
    int n = 0;                 // ring size, >= 3
    double alpha = 1.0;        // dissipation rate, > 0
    double beta = 1.0;         // inverse temperature, > 0
    std::uint64_t seed = 1;    // master RNG seed

    double log_n() const { return std::log(static_cast<double>(n)); }
    double c() const { return log_n() / beta; }

    void validate() const {
        if (n < 3) throw std::invalid_argument("params: ring size must be >= 3");
        if (!(alpha > 0.0) || !std::isfinite(alpha)) {
            throw std::invalid_argument("params: alpha must be positive and finite");
        }
        if (!(beta > 0.0) || !std::isfinite(beta)) {
            throw std::invalid_argument("params: beta must be positive and finite");
        }
    }
};

enum class InitKind { constant, gamma_auto, profile };

// 4*beta - ln N + ln ln N: the self-selected field magnitude after one
// covering sweep; gamma_auto starts the chain there so half-cycle statistics
// are stationary from j = 1.
inline double gamma_auto_magnitude(const Params& p) {
    return 4.0 * p.beta - p.log_n() + std::log(p.log_n());
}

// Initial local fields: lambda_i(0) = base_i + Uniform[-noise_eps, noise_eps],
// with base_i = lambda0 (constant), -gamma_auto_magnitude (gamma_auto), or
// lambda0 * Phi(i/N) (profile).
struct InitialCondition {
    InitKind kind = InitKind::constant;
    double lambda0 = 0.0;
    double noise_eps = 0.0;
    Profile profile;

    void validate(const Params& p) const {
        if (!(noise_eps >= 0.0)) {
            throw std::invalid_argument("init: noise_eps must be >= 0");
        }
        if (!std::isfinite(lambda0)) {
            throw std::invalid_argument("init: lambda0 must be finite");
        }
        if (kind == InitKind::gamma_auto && !(gamma_auto_magnitude(p) > 0.0)) {
            throw std::invalid_argument(
                "init: gamma_auto needs 4*beta - ln N + ln ln N > 0");
        }
        if (kind == InitKind::profile) {
            if (profile.empty()) {
                throw std::invalid_argument("init: profile kind needs a profile");
            }
            profile.require_unit_band();
        }
    }

    // The field magnitude entering centered statistics: gamma = -lambda_i(0)
    // at the fastest site (profile minimum has Phi = 1).
    double field_magnitude(const Params& p) const {
        if (kind == InitKind::gamma_auto) return gamma_auto_magnitude(p);
        return -lambda0;
    }
};

} // namespace dikmc

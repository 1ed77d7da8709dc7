#pragma once

#include <cmath>
#include <cstdint>

namespace dikmc {

// Counter-style 64-bit generator (SplitMix64): the state walks by the golden
// gamma and each output is the Stafford finalizer of the state. Replica r of
// master seed s starts from avalanche(s + (r+1)*gamma), so replica streams
// are decorrelated for any seed without cross-thread coordination.
class Rng {
public:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

    explicit Rng(std::uint64_t state = 0) : state_(state) {}

    static std::uint64_t avalanche(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    static Rng for_replica(std::uint64_t seed, std::uint64_t replica) {
        return Rng(avalanche(seed + kGamma * (replica + 1)));
    }

    std::uint64_t next_u64() {
        state_ += kGamma;
        return avalanche(state_);
    }

    // Uniform on [0,1) with 53 random bits.
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Exp(1); finite because next_uniform() < 1.
    double next_exp() {
        return -std::log1p(-next_uniform());
    }

    // Uniform integer in {0, ..., n-1} (n small; scale-from-double keeps the
    // mapping simple and the bias below 2^-53 per draw).
    int next_index(int n) {
        int k = static_cast<int>(next_uniform() * n);
        return k < n ? k : n - 1;
    }

private:
    std::uint64_t state_;
};

} // namespace dikmc

#pragma once

#include <cmath>
#include <cstdint>

namespace lattice_walks {

// Counter-based 64-bit generator: output_i = mix64(key + i * golden), where
// mix64 is the SplitMix64 finalizer (Stafford mix13 constants).  The state is
// just (key, counter), so any draw is addressable and independent substreams
// are cheap: substream t of seed s uses key = mix64(s + 1) ^ mix64(t + 0x9E..).
// This gives bit-reproducible parallel trajectories without shared state.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    // Substream `index` of master `seed`; different (seed, index) pairs give
    // statistically independent streams.
    static CounterRng substream(std::uint64_t seed, std::uint64_t index) {
        return CounterRng(mix64(seed + 0x9E3779B97F4A7C15ULL) ^
                          mix64(index + 0xD1B54A32D192ED03ULL));
    }

    std::uint64_t next_u64() {
        return mix64(key_ + (counter_++) * 0x9E3779B97F4A7C15ULL);
    }

    // Uniform in (0, 1]: never returns 0, so log(u) is always finite.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Exponential holding time with the rate given in the log domain.
    // Works for log-rates far beyond exp() range: exp(-log_rate) underflows
    // gracefully to 0 when the rate is astronomically large.
    double exponential_log_rate(double log_rate) {
        const double e = -std::log(uniform());
        if (log_rate < 700.0) return e * std::exp(-log_rate);
        return std::exp(std::log(e) - log_rate);
    }

    std::uint64_t counter() const { return counter_; }

    static std::uint64_t mix64(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace lattice_walks

#pragma once

#include <cstdint>
#include <random>

namespace samp {

// mt19937_64 with hand-rolled real/normal draws. std::uniform_real_distribution
// and friends are implementation-defined, which would break the byte-identical
// reproducibility contract of the CLI outputs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Standard normal via Box-Muller; the pair is cached.
    double normal();

    double normal(double mu, double sigma) { return mu + sigma * normal(); }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

    // splitmix64 step; used to derive per-stream seeds from one root seed.
    static std::uint64_t derive(std::uint64_t root, std::uint64_t stream);

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace samp

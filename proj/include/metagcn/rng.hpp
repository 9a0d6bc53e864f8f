#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace metagcn {

std::uint64_t splitmix64(std::uint64_t x);

// Deterministic RNG. The engine (mt19937_64) is fully specified by the
// standard; the distributions here are hand-rolled because the std::
// distribution objects are implementation-defined and would break
// bit-reproducibility across toolchains.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    // Derive an independent stream for a sub-task of a seeded run, so that
    // e.g. splitting and weight init never share draws.
    static Rng stream(std::uint64_t seed, std::uint64_t salt) {
        return Rng(splitmix64(seed + 0x9e3779b97f4a7c15ULL * (salt + 1)));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n); n must be positive. Rejection sampling keeps
    // the draw unbiased and deterministic.
    std::size_t uniform_index(std::size_t n);

    // Standard normal via Box-Muller.
    double normal();

    template <typename T>
    void shuffle(std::vector<T>& v) {
        if (v.size() < 2) return;
        for (std::size_t i = v.size() - 1; i > 0; --i) {
            const std::size_t j = uniform_index(i + 1);
            std::swap(v[i], v[j]);
        }
    }

  private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace metagcn

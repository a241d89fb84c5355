#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace modeshift {

// Counter-based pseudorandom stream (splitmix64 over key + counter).
// Every stream is a pure function of its key, so draws are reproducible
// independent of thread scheduling. All distribution sampling is implemented
// here rather than via <random> distributions, whose sequences are
// implementation-defined and would break cross-toolchain reproducibility.
class RngStream {
   public:
    explicit RngStream(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64();

    // Uniform on [0, 1), 53-bit mantissa.
    double next_double();

    // Uniform integer in [0, n). n must be > 0.
    std::uint64_t next_below(std::uint64_t n);

    bool next_bernoulli(double p) { return next_double() < p; }

    // Standard normal via Box-Muller; the pair's second value is cached.
    double next_normal();

    double next_normal(double mean, double sd) { return mean + sd * next_normal(); }

    double next_lognormal(double mu, double sigma);

    // Index into `weights` with probability proportional to weight.
    // Total weight must be positive.
    std::size_t next_discrete(const double* weights, std::size_t n);

    std::uint64_t key() const { return key_; }

   private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool has_cached_normal_ = false;
    double cached_normal_ = 0.0;
};

// Derives an independent stream from (master_seed, label, index). Distinct
// (label, index) pairs give statistically independent streams; identical
// inputs always give the identical stream. This is the only sanctioned way
// to obtain randomness anywhere in the project.
RngStream derive_rng_stream(std::uint64_t master_seed, std::string_view label, std::uint64_t index);

// 64-bit FNV-1a, used for config hashing and stream derivation.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL);

}  // namespace modeshift

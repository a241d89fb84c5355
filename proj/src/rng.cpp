#include "modeshift/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace modeshift {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis) {
    std::uint64_t h = basis;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

RngStream derive_rng_stream(std::uint64_t master_seed, std::string_view label,
                            std::uint64_t index) {
    std::uint64_t h = fnv1a64(label);
    h = mix64(h ^ mix64(master_seed));
    h = mix64(h ^ mix64(index + kGamma));
    return RngStream(h);
}

std::uint64_t RngStream::next_u64() { return mix64(key_ + (++counter_) * kGamma); }

double RngStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::next_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("next_below: n must be > 0");
    // Lemire multiply-shift; bias is O(n / 2^64), negligible for our ranges.
    unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * n;
    return static_cast<std::uint64_t>(wide >> 64);
}

double RngStream::next_normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    double u1 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    cached_normal_ = r * std::sin(theta);
    has_cached_normal_ = true;
    return r * std::cos(theta);
}

double RngStream::next_lognormal(double mu, double sigma) {
    return std::exp(next_normal(mu, sigma));
}

std::size_t RngStream::next_discrete(const double* weights, std::size_t n) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += weights[i];
    if (!(total > 0.0)) throw std::invalid_argument("next_discrete: total weight must be > 0");
    double u = next_double() * total;
    for (std::size_t i = 0; i < n; ++i) {
        u -= weights[i];
        if (u < 0.0) return i;
    }
    return n - 1;
}

}  // namespace modeshift

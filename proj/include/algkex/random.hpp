#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace algkex {

std::uint64_t splitmix64(std::uint64_t x);

/// Child seed for a named component: FNV-1a of the label mixed into the
/// master seed with splitmix64.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label);
std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t index);

/// mt19937_64 with its own uniform draws, identical on every toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, n). n must be positive.
    std::uint64_t index(std::uint64_t n);
    /// Uniform in [lo, hi].
    std::int64_t range(std::int64_t lo, std::int64_t hi);
    /// Uniform double in [0, 1) with 53 bits of precision.
    double unit();
    bool bernoulli(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace algkex

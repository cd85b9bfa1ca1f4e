#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace wamc {

// Canonical reduction order for all batch statistics: a fixed binary tree
// over element index. Results are independent of thread count and identical
// between the serial and parallel simulation kernels.
double pairwise_sum(std::span<const double> v);

double pairwise_mean(std::span<const double> v);

struct MeanStats {
    double mean = 0.0;
    double std_err = 0.0;  // sqrt(sample variance / n)
    std::size_t count = 0;
};

// Mean and standard error, both accumulated in canonical order.
MeanStats mean_and_se(std::span<const double> v);

// Least-squares slope of y against x.
double ls_slope(std::span<const double> x, std::span<const double> y);

// Stable 64-bit string hash, used to derive per-method seed streams.
std::uint64_t fnv1a64(std::string_view s);

// SplitMix64 step; used to derive child seeds from a root seed.
std::uint64_t splitmix64(std::uint64_t& state);

// One-shot child seed: hash of (root, salt).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t salt);

}  // namespace wamc

#include "wamc/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wamc {

namespace {

constexpr std::uint32_t kW32A = 0x9E3779B9u;
constexpr std::uint32_t kW32B = 0xBB67AE85u;
constexpr std::uint32_t kM4x32A = 0xD2511F53u;
constexpr std::uint32_t kM4x32B = 0xCD9E8D57u;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(p);
    hi = static_cast<std::uint32_t>(p >> 32);
}

inline void philox_round(std::array<std::uint32_t, 4>& c, const std::array<std::uint32_t, 2>& k) {
    std::uint32_t lo0, hi0, lo1, hi1;
    mul_hi_lo(kM4x32A, c[0], lo0, hi0);
    mul_hi_lo(kM4x32B, c[2], lo1, hi1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

// (0,1] so that log() below is always finite
inline double u01(std::uint32_t x) {
    return (static_cast<double>(x) + 1.0) * 0x1p-32;
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::block(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    for (int r = 0; r < 10; ++r) {
        philox_round(ctr, key);
        key[0] += kW32A;
        key[1] += kW32B;
    }
    return ctr;
}

void fill_path_increments(const IncrementMeta& meta, int path, std::span<double> out) {
    const std::size_t cells = static_cast<std::size_t>(meta.steps) * meta.dims;
    if (out.size() != cells) throw std::invalid_argument("fill_path_increments: bad output size");
    if (meta.paths < 1 || meta.steps < 1 || meta.dims < 1)
        throw std::invalid_argument("fill_path_increments: empty stream requested");
    if (!(meta.dt > 0.0)) throw std::invalid_argument("fill_path_increments: dt must be positive");

    const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(meta.seed),
                                              static_cast<std::uint32_t>(meta.seed >> 32)};
    const double sd = std::sqrt(meta.dt);
    const std::uint32_t nblocks = static_cast<std::uint32_t>((cells + 3) / 4);
    std::size_t q = 0;
    for (std::uint32_t b = 0; b < nblocks; ++b) {
        const auto r = Philox4x32::block({b, static_cast<std::uint32_t>(path), meta.iteration, meta.trial}, key);
        // Box-Muller on the two uniform pairs of the block
        double z[4];
        for (int p = 0; p < 2; ++p) {
            const double u1 = u01(r[2 * p]);
            const double u2 = u01(r[2 * p + 1]);
            const double rad = std::sqrt(-2.0 * std::log(u1));
            const double ang = 2.0 * std::numbers::pi * u2;
            z[2 * p] = rad * std::cos(ang);
            z[2 * p + 1] = rad * std::sin(ang);
        }
        for (int j = 0; j < 4 && q < cells; ++j, ++q) out[q] = z[j] * sd;
    }
}

IncrementBatch sample_increments(std::uint64_t seed, std::uint32_t trial, std::uint32_t iteration,
                                 int paths, int steps, int dims, double dt) {
    if (paths < 1 || steps < 1 || dims < 1)
        throw std::invalid_argument("sample_increments: sizes must be >= 1");
    if (!(dt > 0.0)) throw std::invalid_argument("sample_increments: dt must be positive");
    IncrementBatch batch;
    batch.meta = {seed, trial, iteration, paths, steps, dims, dt};
    const std::size_t len = static_cast<std::size_t>(steps) * dims;
    batch.data.resize(static_cast<std::size_t>(paths) * len);
    for (int p = 0; p < paths; ++p) {
        fill_path_increments(batch.meta, p, {batch.data.data() + p * len, len});
    }
    return batch;
}

const char* normal_method_name() { return "philox4x32-10/box-muller"; }

}  // namespace wamc

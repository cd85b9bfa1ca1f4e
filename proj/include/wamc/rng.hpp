#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace wamc {

// Counter-based generator (Philox 4x32, 10 rounds). Every output block is a
// pure function of (key, counter), so any (path, step, dim) cell of a batch
// can be generated independently by any worker.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key);
};

// Identifies one increment stream. Disjoint (seed, trial, iteration) triples
// give statistically independent streams; identical meta reproduces the same
// values bit for bit.
struct IncrementMeta {
    std::uint64_t seed = 0;
    std::uint32_t trial = 0;
    std::uint32_t iteration = 0;
    int paths = 0;   // M
    int steps = 0;   // n
    int dims = 0;    // d
    double dt = 0.0; // T / n
};

// Brownian increments, layout [path][step][dim], each entry ~ N(0, dt).
struct IncrementBatch {
    IncrementMeta meta;
    std::vector<double> data;

    double at(int path, int step, int dim) const {
        return data[(static_cast<std::size_t>(path) * meta.steps + step) * meta.dims + dim];
    }
    std::span<const double> path(int p) const {
        const std::size_t len = static_cast<std::size_t>(meta.steps) * meta.dims;
        return {data.data() + p * len, len};
    }
};

// Fills one path's steps*dims increments; out.size() must be steps*dims.
void fill_path_increments(const IncrementMeta& meta, int path, std::span<double> out);

// Materialises the whole batch (delegates to fill_path_increments cell for cell).
IncrementBatch sample_increments(std::uint64_t seed, std::uint32_t trial, std::uint32_t iteration,
                                 int paths, int steps, int dims, double dt);

// Name of the uniform->normal transform, recorded in run metadata.
const char* normal_method_name();

}  // namespace wamc

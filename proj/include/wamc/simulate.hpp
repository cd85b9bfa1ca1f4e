#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wamc/model.hpp"
#include "wamc/rng.hpp"
#include "wamc/weights.hpp"

namespace wamc {

struct PathMeta {
    std::uint32_t trial = 0;
    std::uint32_t iteration = 0;
    int path = 0;
};

// Terminal state and accumulated weight product of one path.
struct WeightedSample {
    std::vector<double> terminal_state;
    double weight_product = 1.0;
    PathMeta meta;
};

struct PathResult {
    WeightedSample sample;
    double y = 0.0;  // payoff(terminal) * weight_product
    bool ok = true;
    int fail_step = -1;
    std::string reason;
};

// One Euler-Maruyama step: x + b(x) dt + sum_k sigma_k(x) dW^k.
void euler_step(const ModelSpec& model, std::span<const double> x, std::span<const double> dW,
                double dt, std::span<double> out);
std::vector<double> euler_step(const ModelSpec& model, std::span<const double> x,
                               std::span<const double> dW, double dt);

// Runs one path of `steps` Euler steps; the weight for step i is evaluated at
// the step's starting state with that step's increment. increments holds
// steps*dims values in [step][dim] order.
PathResult simulate_weighted(const ModelSpec& model, std::span<const double> x0,
                             const Payoff& payoff, std::span<const double> increments, int steps,
                             double dt, const StepWeight& weight, PathMeta meta = {});

struct PathFailure {
    int path = -1;
    int step = -1;
    std::string reason;
};

struct BatchResult {
    std::vector<double> y;  // indexed by path
    std::vector<PathFailure> failures;
};

// Batch of independent paths with increments streamed from meta. The parallel
// kernel writes each path's value into its own slot, so results do not depend
// on thread count; reduce with pairwise_sum/mean_and_se for reproducible
// statistics.
BatchResult simulate_paths(const ModelSpec& model, std::span<const double> x0,
                           const Payoff& payoff, const IncrementMeta& meta,
                           const StepWeight& weight);
// Serial reference implementation with the identical contract.
BatchResult simulate_paths_serial(const ModelSpec& model, std::span<const double> x0,
                                  const Payoff& payoff, const IncrementMeta& meta,
                                  const StepWeight& weight);

// Same over a materialised batch.
BatchResult simulate_batch(const ModelSpec& model, std::span<const double> x0,
                           const Payoff& payoff, const IncrementBatch& batch,
                           const StepWeight& weight);
BatchResult simulate_batch_serial(const ModelSpec& model, std::span<const double> x0,
                                  const Payoff& payoff, const IncrementBatch& batch,
                                  const StepWeight& weight);

}  // namespace wamc

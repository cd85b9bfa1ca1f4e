#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "wamc/model.hpp"
#include "wamc/optimize.hpp"
#include "wamc/simulate.hpp"

namespace wamc {

// Settings snapshot sufficient to reproduce an estimate bit for bit.
struct EstimateSettings {
    int n = 0;  // time steps (0 for the discretisation-free reference)
    std::string order;
    long paths = 0;  // MC path count (0 for SGD)
    int batch = 0;   // SGD batch size M
    int iters = 0;   // SGD iterations J
    std::string optimizer;
    std::string schedule;
    std::uint64_t seed = 0;
    std::uint32_t trial = 0;
};

struct EstimateResult {
    double value = 0.0;
    std::string method;  // WA-SGD | WA-MC | EM-MC | EXACT-MC
    EstimateSettings settings;
    std::optional<double> std_error;
    std::vector<double> trace;  // per-iteration theta when requested (WA-SGD)
};

// Algorithm: per iteration j draw a fresh M-path batch of weighted samples
// Y = f(X_T) prod M and take one optimizer step on (theta - Y)^2; the
// estimate is the last iterate.
EstimateResult estimate_wa_sgd(const ModelSpec& model, std::span<const double> x0,
                               const Payoff& payoff, double maturity, int n,
                               const TrainConfig& train, std::uint64_t seed,
                               std::uint32_t trial = 0);

// Plain mean of the weighted samples with standard error.
EstimateResult estimate_wa_mc(const ModelSpec& model, std::span<const double> x0,
                              const Payoff& payoff, double maturity, int n,
                              const std::string& order, long paths, std::uint64_t seed,
                              std::uint32_t trial = 0);

// Unweighted Euler-Maruyama baseline; seed-for-seed identical to
// estimate_wa_mc with order "1".
EstimateResult estimate_em_mc(const ModelSpec& model, std::span<const double> x0,
                              const Payoff& payoff, double maturity, int n, long paths,
                              std::uint64_t seed, std::uint32_t trial = 0);

// Discretisation-free reference for diagonal Black-Scholes models:
// X_T^i = x0^i exp(-sigma_i^2 T / 2 + sigma_i W_T^i).
EstimateResult estimate_exact_gbm_mc(const ModelSpec& model, std::span<const double> x0,
                                     const Payoff& payoff, double maturity, long paths,
                                     std::uint64_t seed, std::uint32_t trial = 0);

}  // namespace wamc

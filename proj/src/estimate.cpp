#include "wamc/estimate.hpp"

#include <cmath>
#include <stdexcept>

#include "wamc/numeric.hpp"
#include "wamc/rng.hpp"

namespace wamc {

namespace {

void throw_on_failures(const BatchResult& batch, const char* what) {
    if (batch.failures.empty()) return;
    std::string msg = std::string(what) + ": " + std::to_string(batch.failures.size()) +
                      " path failure(s); first at path " +
                      std::to_string(batch.failures.front().path) + " step " +
                      std::to_string(batch.failures.front().step) + " (" +
                      batch.failures.front().reason + ")";
    throw std::runtime_error(msg);
}

int checked_paths(long paths) {
    if (paths < 1 || paths > 2000000000L)
        throw std::invalid_argument("path count out of supported range");
    return static_cast<int>(paths);
}

}  // namespace

EstimateResult estimate_wa_sgd(const ModelSpec& model, std::span<const double> x0,
                               const Payoff& payoff, double maturity, int n,
                               const TrainConfig& train, std::uint64_t seed, std::uint32_t trial) {
    if (n < 1) throw std::invalid_argument("estimate_wa_sgd: n must be >= 1");
    const StepWeight weight = StepWeight::make(model, train.order);
    IncrementMeta meta;
    meta.seed = seed;
    meta.trial = trial;
    meta.paths = train.batch;
    meta.steps = n;
    meta.dims = model.d;
    meta.dt = maturity / n;

    std::vector<double> y;
    const auto source = [&](int j) -> std::span<const double> {
        meta.iteration = static_cast<std::uint32_t>(j);
        BatchResult batch = simulate_paths(model, x0, payoff, meta, weight);
        throw_on_failures(batch, "estimate_wa_sgd");
        y = std::move(batch.y);
        return y;
    };
    MinimizeResult min = run_minimization(source, train);

    EstimateResult res;
    res.value = min.theta;
    res.method = "WA-SGD";
    res.settings = {n,  train.order, 0, train.batch, train.iters, optimizer_name(train.optimizer),
                    format_schedule(train.schedule), seed, trial};
    res.trace = std::move(min.trace);
    return res;
}

EstimateResult estimate_wa_mc(const ModelSpec& model, std::span<const double> x0,
                              const Payoff& payoff, double maturity, int n,
                              const std::string& order, long paths, std::uint64_t seed,
                              std::uint32_t trial) {
    if (n < 1) throw std::invalid_argument("estimate_wa_mc: n must be >= 1");
    const StepWeight weight = StepWeight::make(model, order);
    IncrementMeta meta;
    meta.seed = seed;
    meta.trial = trial;
    meta.iteration = 0;
    meta.paths = checked_paths(paths);
    meta.steps = n;
    meta.dims = model.d;
    meta.dt = maturity / n;

    BatchResult batch = simulate_paths(model, x0, payoff, meta, weight);
    throw_on_failures(batch, "estimate_wa_mc");
    const MeanStats stats = mean_and_se(batch.y);

    EstimateResult res;
    res.value = stats.mean;
    res.method = order == "1" ? "EM-MC" : "WA-MC";
    res.settings = {n, order, paths, 0, 0, "", "", seed, trial};
    res.std_error = stats.std_err;
    return res;
}

EstimateResult estimate_em_mc(const ModelSpec& model, std::span<const double> x0,
                              const Payoff& payoff, double maturity, int n, long paths,
                              std::uint64_t seed, std::uint32_t trial) {
    EstimateResult res = estimate_wa_mc(model, x0, payoff, maturity, n, "1", paths, seed, trial);
    res.method = "EM-MC";
    return res;
}

EstimateResult estimate_exact_gbm_mc(const ModelSpec& model, std::span<const double> x0,
                                     const Payoff& payoff, double maturity, long paths,
                                     std::uint64_t seed, std::uint32_t trial) {
    if (!model.diag_vols)
        throw std::invalid_argument("estimate_exact_gbm_mc: model is not diagonal Black-Scholes");
    if (!(maturity > 0.0)) throw std::invalid_argument("estimate_exact_gbm_mc: maturity <= 0");
    const int d = model.d;
    const std::vector<double>& vols = *model.diag_vols;

    IncrementMeta meta;
    meta.seed = seed;
    meta.trial = trial;
    meta.iteration = 0;
    meta.paths = checked_paths(paths);
    meta.steps = 1;
    meta.dims = d;
    meta.dt = maturity;  // one increment holding W_T ~ N(0, T)

    std::vector<double> y(meta.paths, 0.0);
#pragma omp parallel
    {
        std::vector<double> w(d), terminal(d);
#pragma omp for schedule(static)
        for (int p = 0; p < meta.paths; ++p) {
            fill_path_increments(meta, p, w);
            for (int k = 0; k < d; ++k) {
                terminal[k] =
                    x0[k] * std::exp(-0.5 * vols[k] * vols[k] * maturity + vols[k] * w[k]);
            }
            y[p] = payoff.eval(terminal);
        }
    }
    const MeanStats stats = mean_and_se(y);

    EstimateResult res;
    res.value = stats.mean;
    res.method = "EXACT-MC";
    res.settings = {0, "", paths, 0, 0, "", "", seed, trial};
    res.std_error = stats.std_err;
    return res;
}

}  // namespace wamc

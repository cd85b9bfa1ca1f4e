#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace wamc {

// Piecewise-constant learning rates over iteration bands with closed upper
// bounds: band (prev_upto, upto] gets `rate`.
struct ScheduleSpec {
    struct Band {
        int upto = 0;  // inclusive
        double rate = 0.0;
    };
    std::vector<Band> bands;
    int total_iters = 0;
};

// Builds and validates a schedule; bands must have increasing bounds ending
// exactly at total_iters, rates in (0, 1].
ScheduleSpec make_schedule(std::vector<ScheduleSpec::Band> bands, int total_iters);

// Parses "0.5:600,0.01:1200,0.001:4000" (rate:upto, closed upper bounds).
ScheduleSpec parse_schedule(const std::string& text, int total_iters);
std::string format_schedule(const ScheduleSpec& s);

double lr_at(const ScheduleSpec& schedule, int j);

// Exact gradient of the mini-batch loss (1/M) sum (theta - y)^2.
double grad_loss(double theta, std::span<const double> batch_y);

struct OptimizerState {
    double theta = 0.0;
    int step = 0;
    // Adam accumulators and hyperparameters
    double m = 0.0;
    double v = 0.0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

void sgd_step(OptimizerState& state, double grad, double rate);
void adam_step(OptimizerState& state, double grad, double rate);

enum class OptimizerKind { Sgd, Adam };

OptimizerKind parse_optimizer(const std::string& name);
const char* optimizer_name(OptimizerKind k);

struct TrainConfig {
    int batch = 0;        // M
    int iters = 0;        // J
    int steps = 1;        // n (time steps; used by callers that build sources)
    std::string order = "2";
    OptimizerKind optimizer = OptimizerKind::Adam;
    ScheduleSpec schedule;
    double theta0 = 0.0;
    bool warm_start = false;  // start from the first batch mean
    bool record_trace = false;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
};

struct MinimizeResult {
    double theta = 0.0;
    std::vector<double> trace;  // per-iteration theta when requested
};

// Runs J iterations, each drawing a fresh batch from `source(j)` (j = 1..J),
// and returns the last iterate. Simulation errors are rethrown annotated with
// the iteration index.
MinimizeResult run_minimization(
    const std::function<std::span<const double>(int)>& source, const TrainConfig& config);

}  // namespace wamc

#include "wamc/optimize.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wamc/numeric.hpp"

namespace wamc {

ScheduleSpec make_schedule(std::vector<ScheduleSpec::Band> bands, int total_iters) {
    if (bands.empty()) throw std::invalid_argument("schedule: no bands");
    if (total_iters < 1) throw std::invalid_argument("schedule: total iterations must be >= 1");
    int prev = 0;
    for (const auto& b : bands) {
        if (b.upto <= prev) throw std::invalid_argument("schedule: band bounds must increase");
        if (!(b.rate > 0.0) || b.rate > 1.0)
            throw std::invalid_argument("schedule: rates must lie in (0, 1]");
        prev = b.upto;
    }
    if (prev != total_iters)
        throw std::invalid_argument("schedule: bands must cover [1, J] exactly");
    return {std::move(bands), total_iters};
}

ScheduleSpec parse_schedule(const std::string& text, int total_iters) {
    std::vector<ScheduleSpec::Band> bands;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("schedule: expected rate:upto, got '" + part + "'");
        ScheduleSpec::Band b;
        b.rate = std::stod(part.substr(0, colon));
        b.upto = std::stoi(part.substr(colon + 1));
        bands.push_back(b);
    }
    return make_schedule(std::move(bands), total_iters);
}

std::string format_schedule(const ScheduleSpec& s) {
    std::string out;
    char buf[64];
    for (std::size_t i = 0; i < s.bands.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g:%d", s.bands[i].rate, s.bands[i].upto);
        if (i) out += ',';
        out += buf;
    }
    return out;
}

double lr_at(const ScheduleSpec& schedule, int j) {
    if (j < 1 || j > schedule.total_iters)
        throw std::invalid_argument("lr_at: iteration outside [1, J]");
    for (const auto& b : schedule.bands) {
        if (j <= b.upto) return b.rate;
    }
    throw std::logic_error("lr_at: schedule does not cover iteration");
}

double grad_loss(double theta, std::span<const double> batch_y) {
    if (batch_y.empty()) throw std::invalid_argument("grad_loss: empty batch");
    return 2.0 * (theta - pairwise_mean(batch_y));
}

void sgd_step(OptimizerState& state, double grad, double rate) {
    state.theta -= rate * grad;
    state.step += 1;
}

void adam_step(OptimizerState& state, double grad, double rate) {
    state.step += 1;
    state.m = state.beta1 * state.m + (1.0 - state.beta1) * grad;
    state.v = state.beta2 * state.v + (1.0 - state.beta2) * grad * grad;
    const double mhat = state.m / (1.0 - std::pow(state.beta1, state.step));
    const double vhat = state.v / (1.0 - std::pow(state.beta2, state.step));
    state.theta -= rate * mhat / (std::sqrt(vhat) + state.eps);
}

OptimizerKind parse_optimizer(const std::string& name) {
    if (name == "sgd") return OptimizerKind::Sgd;
    if (name == "adam") return OptimizerKind::Adam;
    throw std::invalid_argument("unknown optimizer '" + name + "' (expected sgd or adam)");
}

const char* optimizer_name(OptimizerKind k) {
    return k == OptimizerKind::Sgd ? "sgd" : "adam";
}

MinimizeResult run_minimization(
    const std::function<std::span<const double>(int)>& source, const TrainConfig& config) {
    if (config.batch < 1 || config.iters < 1)
        throw std::invalid_argument("run_minimization: batch and iteration counts must be >= 1");
    if (config.schedule.total_iters != config.iters)
        throw std::invalid_argument("run_minimization: schedule does not cover J iterations");

    OptimizerState state;
    state.theta = config.theta0;
    state.beta1 = config.adam_beta1;
    state.beta2 = config.adam_beta2;
    state.eps = config.adam_eps;

    MinimizeResult res;
    if (config.record_trace) res.trace.reserve(config.iters);

    for (int j = 1; j <= config.iters; ++j) {
        std::span<const double> y;
        try {
            y = source(j);
        } catch (const std::exception& e) {
            throw std::runtime_error("iteration " + std::to_string(j) + ": " + e.what());
        }
        if (config.warm_start && j == 1) {
            state.theta = pairwise_mean(y);
            state.step += 1;
        } else {
            const double g = grad_loss(state.theta, y);
            const double rate = lr_at(config.schedule, j);
            if (config.optimizer == OptimizerKind::Sgd)
                sgd_step(state, g, rate);
            else
                adam_step(state, g, rate);
        }
        if (config.record_trace) res.trace.push_back(state.theta);
    }
    res.theta = state.theta;
    return res;
}

}  // namespace wamc

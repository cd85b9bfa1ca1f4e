#include "wamc/simulate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wamc {

void euler_step(const ModelSpec& model, std::span<const double> x, std::span<const double> dW,
                double dt, std::span<double> out) {
    const int d = model.d;
    if (model.diag_vols) {
        const auto& vols = *model.diag_vols;
        for (int k = 0; k < d; ++k) out[k] = x[k] + vols[k] * x[k] * dW[k];
        return;
    }
    std::vector<double> b(d);
    model.drift(x, b);
    Mat sig(d, d);
    model.diffusion(x, sig);
    for (int k = 0; k < d; ++k) {
        double s = x[k] + b[k] * dt;
        for (int i = 0; i < d; ++i) s += sig.at(k, i) * dW[i];
        out[k] = s;
    }
}

std::vector<double> euler_step(const ModelSpec& model, std::span<const double> x,
                               std::span<const double> dW, double dt) {
    std::vector<double> out(model.d);
    euler_step(model, x, dW, dt, out);
    return out;
}

PathResult simulate_weighted(const ModelSpec& model, std::span<const double> x0,
                             const Payoff& payoff, std::span<const double> increments, int steps,
                             double dt, const StepWeight& weight, PathMeta meta) {
    const int d = model.d;
    if (static_cast<std::size_t>(steps) * d != increments.size())
        throw std::invalid_argument("simulate_weighted: increments must hold steps*dims values");
    PathResult res;
    res.sample.meta = meta;
    std::vector<double> x(x0.begin(), x0.end());
    std::vector<double> next(d);
    double wprod = 1.0;
    for (int i = 0; i < steps; ++i) {
        const std::span<const double> dw = increments.subspan(static_cast<std::size_t>(i) * d, d);
        try {
            if (!weight.is_identity()) wprod *= weight.eval(model, x, dw, dt);
        } catch (const EllipticityError& e) {
            res.ok = false;
            res.fail_step = i;
            res.reason = e.what();
            res.y = std::numeric_limits<double>::quiet_NaN();
            return res;
        }
        euler_step(model, x, dw, dt, next);
        x.swap(next);
        for (int k = 0; k < d; ++k) {
            if (!std::isfinite(x[k])) {
                res.ok = false;
                res.fail_step = i;
                res.reason = "non-finite state";
                res.y = std::numeric_limits<double>::quiet_NaN();
                return res;
            }
        }
    }
    res.sample.terminal_state = std::move(x);
    res.sample.weight_product = wprod;
    res.y = payoff.eval(res.sample.terminal_state) * wprod;
    return res;
}

namespace {

struct PathStatus {
    int step = -1;
    std::uint8_t code = 0;  // 0 ok, 1 non-finite, 2 ellipticity
};

// Shared per-path body for the serial and OpenMP kernels; writes into slot p.
inline void run_one_path(const ModelSpec& model, const double* x0, const Payoff& payoff,
                         const IncrementMeta& meta, const StepWeight& weight, int p,
                         std::vector<double>& incr_buf, std::vector<double>& x,
                         std::vector<double>& next, double& y_slot, PathStatus& status) {
    const int d = meta.dims;
    const int n = meta.steps;
    fill_path_increments(meta, p, incr_buf);
    x.assign(x0, x0 + d);
    double wprod = 1.0;
    for (int i = 0; i < n; ++i) {
        const std::span<const double> dw{incr_buf.data() + static_cast<std::size_t>(i) * d,
                                         static_cast<std::size_t>(d)};
        if (!weight.is_identity()) {
            try {
                wprod *= weight.eval(model, x, dw, meta.dt);
            } catch (const EllipticityError&) {
                status = {i, 2};
                y_slot = std::numeric_limits<double>::quiet_NaN();
                return;
            }
        }
        euler_step(model, x, dw, meta.dt, next);
        x.swap(next);
        for (int k = 0; k < d; ++k) {
            if (!std::isfinite(x[k])) {
                status = {i, 1};
                y_slot = std::numeric_limits<double>::quiet_NaN();
                return;
            }
        }
    }
    y_slot = payoff.eval(x) * wprod;
}

BatchResult collect(const std::vector<double>& y, const std::vector<PathStatus>& status) {
    BatchResult res;
    res.y = y;
    for (std::size_t p = 0; p < status.size(); ++p) {
        if (status[p].code != 0) {
            res.failures.push_back({static_cast<int>(p), status[p].step,
                                    status[p].code == 2 ? "ellipticity violation" : "non-finite state"});
        }
    }
    return res;
}

}  // namespace

BatchResult simulate_paths_serial(const ModelSpec& model, std::span<const double> x0,
                                  const Payoff& payoff, const IncrementMeta& meta,
                                  const StepWeight& weight) {
    if (meta.dims != model.d)
        throw std::invalid_argument("simulate_paths: meta dims != model dimension");
    const std::size_t cells = static_cast<std::size_t>(meta.steps) * meta.dims;
    std::vector<double> y(meta.paths, 0.0);
    std::vector<PathStatus> status(meta.paths);
    std::vector<double> incr(cells), x(meta.dims), next(meta.dims);
    for (int p = 0; p < meta.paths; ++p)
        run_one_path(model, x0.data(), payoff, meta, weight, p, incr, x, next, y[p], status[p]);
    return collect(y, status);
}

BatchResult simulate_paths(const ModelSpec& model, std::span<const double> x0,
                           const Payoff& payoff, const IncrementMeta& meta,
                           const StepWeight& weight) {
    if (meta.dims != model.d)
        throw std::invalid_argument("simulate_paths: meta dims != model dimension");
    const std::size_t cells = static_cast<std::size_t>(meta.steps) * meta.dims;
    std::vector<double> y(meta.paths, 0.0);
    std::vector<PathStatus> status(meta.paths);
#pragma omp parallel
    {
        std::vector<double> incr(cells), x(meta.dims), next(meta.dims);
#pragma omp for schedule(static)
        for (int p = 0; p < meta.paths; ++p)
            run_one_path(model, x0.data(), payoff, meta, weight, p, incr, x, next, y[p], status[p]);
    }
    return collect(y, status);
}

namespace {

BatchResult run_batch(const ModelSpec& model, std::span<const double> x0, const Payoff& payoff,
                      const IncrementBatch& batch, const StepWeight& weight, bool parallel) {
    if (batch.meta.dims != model.d)
        throw std::invalid_argument("simulate_batch: batch dims != model dimension");
    const int paths = batch.meta.paths;
    std::vector<double> y(paths, 0.0);
    std::vector<PathStatus> status(paths);
    const auto body = [&](int p) {
        PathResult r = simulate_weighted(model, x0, payoff, batch.path(p), batch.meta.steps,
                                         batch.meta.dt, weight,
                                         {batch.meta.trial, batch.meta.iteration, p});
        y[p] = r.y;
        if (!r.ok) status[p] = {r.fail_step, r.reason == "non-finite state" ? std::uint8_t{1} : std::uint8_t{2}};
    };
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int p = 0; p < paths; ++p) body(p);
    } else {
        for (int p = 0; p < paths; ++p) body(p);
    }
    return collect(y, status);
}

}  // namespace

BatchResult simulate_batch(const ModelSpec& model, std::span<const double> x0,
                           const Payoff& payoff, const IncrementBatch& batch,
                           const StepWeight& weight) {
    return run_batch(model, x0, payoff, batch, weight, true);
}

BatchResult simulate_batch_serial(const ModelSpec& model, std::span<const double> x0,
                                  const Payoff& payoff, const IncrementBatch& batch,
                                  const StepWeight& weight) {
    return run_batch(model, x0, payoff, batch, weight, false);
}

}  // namespace wamc

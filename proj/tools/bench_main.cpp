// Compares the serial reference path kernel against the OpenMP one and checks
// that both produce bit-identical batch results.

#include <chrono>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wamc/model.hpp"
#include "wamc/numeric.hpp"
#include "wamc/simulate.hpp"

using namespace wamc;

namespace {

double now_s() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct Case {
    const char* name;
    int d;
    int n;
    int paths;
    double maturity;
};

void run_case(const Case& c) {
    const ModelSpec model = black_scholes_model(c.d, 0.2);
    const std::vector<double> x0(c.d, 100.0);
    const Payoff payoff = basket_call(100.0);
    const StepWeight weight = StepWeight::make(model, "2");
    IncrementMeta meta{/*seed=*/42, /*trial=*/0, /*iteration=*/0, c.paths, c.n, c.d,
                       c.maturity / c.n};

    const double t0 = now_s();
    const BatchResult serial = simulate_paths_serial(model, x0, payoff, meta, weight);
    const double t1 = now_s();
    const BatchResult parallel = simulate_paths(model, x0, payoff, meta, weight);
    const double t2 = now_s();

    bool identical = serial.y.size() == parallel.y.size();
    for (std::size_t i = 0; identical && i < serial.y.size(); ++i) {
        const bool both_nan = std::isnan(serial.y[i]) && std::isnan(parallel.y[i]);
        identical = both_nan || serial.y[i] == parallel.y[i];
    }
    const double mean = pairwise_mean(serial.y);
    const double ts = t1 - t0, tp = t2 - t1;
    std::printf("%-28s paths=%-8d serial %7.3fs (%6.2f Mpath-steps/s)  omp %7.3fs  speedup %4.2fx  mean=%.6f  identical=%s\n",
                c.name, c.paths, ts, 1e-6 * c.paths * c.n / ts, tp, ts / tp, mean,
                identical ? "yes" : "NO");
    if (!identical) std::exit(1);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; comparing two serial runs\n");
#endif
    run_case({"bs d=10 n=4 order 2", 10, 4, 200000, 2.0});
    run_case({"bs d=10 n=32 order 2", 10, 32, 50000, 2.0});
    run_case({"bs d=100 n=4 order 2", 100, 4, 20000, 1.0});
    return 0;
}

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wamc/config.hpp"

namespace wamc {

// One learning-rate band selected by strike: applies when K < k_below, or
// K <= k_upto, whichever constraint is present (a band with neither matches
// every K). Bands are tried in file order.
struct KBand {
    std::optional<double> k_below;
    std::optional<double> k_upto;
    std::string rates;  // "rate:upto,rate:upto,..." with closed upper bounds
};

struct MethodSpec {
    std::string name;  // section suffix, also the CSV method tag
    std::string kind;  // wa-sgd | wa-mc | em-mc | exact-mc
    std::string order = "2";
    std::vector<int> steps;  // n grid; ignored for exact-mc
    long paths = 0;          // wa-mc / em-mc
    int batch = 0;           // wa-sgd M
    int iters = 0;           // wa-sgd J
    std::string optimizer = "adam";
    bool warm_start = false;
    std::vector<KBand> bands;  // wa-sgd
};

struct ExperimentConfig {
    int d = 0;
    std::vector<double> sigma;  // per coordinate
    double maturity = 0.0;
    std::vector<double> x0;
    std::string payoff_family;  // basket_call | max_call
    std::vector<double> strikes;
    int trials = 1;
    std::string reference = "exact-mc";  // exact-mc | oracle
    long reference_paths = 0;
    std::vector<MethodSpec> methods;

    static ExperimentConfig from_config(const FlatConfig& cfg);
    FlatConfig to_config() const;

    const KBand& band_for(const MethodSpec& method, double strike) const;
};

struct CellStats {
    std::string method;
    double strike = 0.0;
    int n = 0;
    std::vector<double> values;    // per trial
    std::vector<double> std_errs;  // per trial (nan when not applicable)
    std::vector<std::uint64_t> seeds;
    double mean = 0.0;
    double spread = 0.0;  // sample standard deviation over trials
};

struct RefValue {
    double strike = 0.0;
    double value = 0.0;
    double err = 0.0;
    std::uint64_t seed = 0;
};

struct SeriesPoint {
    int n = 0;
    double error = 0.0;        // |mean - ref| at the worst strike
    double combined_se = 0.0;  // trial-mean SE combined with reference error
    bool included = false;     // enters the slope fit (error > 3 * combined_se)
};

struct MethodSeries {
    std::string method;
    double worst_k = 0.0;
    bool tie_broken_low = false;  // argmax tie resolved toward the smaller K
    std::vector<SeriesPoint> points;
    std::optional<double> slope;  // absent when fewer than 2 points survive
    std::string note;
};

struct ConvergenceReport {
    ExperimentConfig config;
    std::uint64_t root_seed = 0;
    std::vector<CellStats> cells;
    std::vector<RefValue> refs;
    std::vector<MethodSeries> series;
    std::vector<std::string> failures;
    bool complete = true;
};

// Executes every (method, strike, n, trial) cell with hierarchical seeds,
// computes references, aggregates and fits convergence orders. Cell failures
// are recorded and the study continues.
ConvergenceReport run_study(const ExperimentConfig& config, std::uint64_t root_seed);

// Worst-strike error series for one method: the strike is the argmax of
// |mean - ref| on the coarsest grid (n = 1), ties broken toward smaller K.
MethodSeries error_metric(const ConvergenceReport& report, const std::string& method);

// Least-squares slope of log(error) against log(n), negated so second-order
// decay reports 2.0. Zero errors are excluded; fewer than 2 usable points is
// an error.
double fit_order(std::span<const int> ns, std::span<const double> errors);

// CSV pair: <dir>/trials.csv (method,K,n,trial,value,std_err,seed) and
// <dir>/aggregates.csv (method,K,n,mean,spread,ref,ref_err). Doubles print
// with 17 significant digits; identical reports serialise byte-identically.
void emit_csv(const ConvergenceReport& report, const std::string& dir);

// Log-log error plot with slope guide lines, one polyline per method.
void emit_svg(const ConvergenceReport& report, const std::string& path);

// Human-readable summary (worst strikes, series, slopes, failures).
void emit_text(const ConvergenceReport& report, const std::string& path);

// Dispatcher for the formats above; format is "csv", "svg" or "text".
void emit(const ConvergenceReport& report, const std::string& format, const std::string& path);

struct TrialRow {
    std::string method;
    double strike = 0.0;
    int n = 0;
    int trial = 0;
    double value = 0.0;
    double std_err = 0.0;
    std::uint64_t seed = 0;
};

std::vector<TrialRow> read_trials_csv(const std::string& path);

// Mean and spread exactly as run_study computes them (shared reduction).
void aggregate_values(std::span<const double> values, double& mean, double& spread);

}  // namespace wamc

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wamc/estimate.hpp"
#include "wamc/experiment.hpp"
#include "wamc/numeric.hpp"
#include "wamc/oracle.hpp"
#include "wamc/recipes.hpp"

namespace {

std::vector<double> broadcast(std::vector<double> v, int d, const char* what) {
    if (static_cast<int>(v.size()) == 1) v.assign(d, v[0]);
    if (static_cast<int>(v.size()) != d)
        throw CLI::ValidationError(std::string(what) + " needs 1 or d values");
    return v;
}

int cmd_run(const std::string& config_path, std::uint64_t seed, const std::string& out_dir,
            int trials_override, const std::string& methods_filter) {
    wamc::ExperimentConfig cfg =
        wamc::ExperimentConfig::from_config(wamc::FlatConfig::parse_file(config_path));
    if (trials_override > 0) cfg.trials = trials_override;
    if (!methods_filter.empty()) {
        std::vector<wamc::MethodSpec> keep;
        std::string part;
        std::stringstream ss(methods_filter);
        std::vector<std::string> wanted;
        while (std::getline(ss, part, ',')) wanted.push_back(part);
        for (const auto& m : cfg.methods) {
            for (const auto& w : wanted)
                if (m.name == w) keep.push_back(m);
        }
        if (keep.empty()) {
            std::fprintf(stderr, "no configured method matches --methods %s\n",
                         methods_filter.c_str());
            return 2;
        }
        cfg.methods = std::move(keep);
    }

    const wamc::ConvergenceReport report = wamc::run_study(cfg, seed);
    wamc::emit_csv(report, out_dir);
    wamc::emit_svg(report, out_dir + "/convergence.svg");
    wamc::emit_text(report, out_dir + "/report.txt");

    std::printf("study complete=%s seed=%llu -> %s\n", report.complete ? "yes" : "no",
                static_cast<unsigned long long>(seed), out_dir.c_str());
    for (const auto& s : report.series) {
        if (s.slope)
            std::printf("  %s: worst K=%g fitted order=%.3f\n", s.method.c_str(), s.worst_k,
                        *s.slope);
        else
            std::printf("  %s: worst K=%g (%s)\n", s.method.c_str(), s.worst_k, s.note.c_str());
    }
    for (const auto& f : report.failures) std::printf("  failure: %s\n", f.c_str());
    return report.complete ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted weak-approximation solver for E[f(X_T)] of high-dimensional SDEs"};
    app.require_subcommand(1);

    // --- run ---
    auto* run = app.add_subcommand("run", "Run a convergence study from a config file");
    std::string config_path, out_dir = "out", methods_filter;
    std::uint64_t seed = 1;
    int trials_override = 0;
    run->add_option("--config", config_path, "experiment config file")->required();
    run->add_option("--seed", seed, "root seed")->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--trials", trials_override, "override the config's trial count");
    run->add_option("--methods", methods_filter, "comma list of method names to run");

    // --- estimate ---
    auto* est = app.add_subcommand("estimate", "Run a single estimator");
    std::string method = "wa-mc", payoff_name = "basket-call", order = "2", optimizer = "adam";
    std::string schedule_text, trace_path;
    int d = 1, n = 1, batch = 1024, iters = 4000;
    unsigned trial = 0;
    long paths = 100000;
    double maturity = 2.0, strike = 100.0;
    bool warm_start = false;
    std::vector<double> sigma{0.2}, x0{100.0};
    est->add_option("--method", method, "wa-sgd | wa-mc | em-mc | exact-mc")->required();
    est->add_option("--d", d, "state dimension")->required();
    est->add_option("--sigma", sigma, "volatility (1 value or d values)");
    est->add_option("--x0", x0, "initial state (1 value or d values)");
    est->add_option("--t", maturity, "maturity T")->required();
    est->add_option("--payoff", payoff_name, "basket-call | max-call");
    est->add_option("--k", strike, "strike")->required();
    est->add_option("--n", n, "time steps");
    est->add_option("--order", order, "weight order key (1, 2, or registered tag)");
    est->add_option("--paths", paths, "MC paths");
    est->add_option("--batch", batch, "SGD batch size M");
    est->add_option("--iters", iters, "SGD iterations J");
    est->add_option("--optimizer", optimizer, "sgd | adam");
    est->add_option("--schedule", schedule_text, "rate:upto,... (closed upper bounds)");
    est->add_flag("--warm-start", warm_start, "start from the first batch mean");
    est->add_option("--seed", seed, "stream seed")->required();
    est->add_option("--trial", trial, "trial index");
    est->add_option("--trace", trace_path, "write per-iteration theta CSV (wa-sgd)");

    // --- oracle ---
    auto* orc = app.add_subcommand("oracle", "Closed-form / quadrature reference prices");
    auto* orc_bs = orc->add_subcommand("bs", "single-asset call, zero rate");
    double ox0 = 100.0, ok = 100.0, osigma = 0.2, ot = 2.0;
    int od = 1;
    orc_bs->add_option("--x0", ox0)->required();
    orc_bs->add_option("--k", ok)->required();
    orc_bs->add_option("--sigma", osigma)->required();
    orc_bs->add_option("--t", ot)->required();
    auto* orc_max = orc->add_subcommand("max-call", "best-of call on d iid lognormal assets");
    orc_max->add_option("--x0", ox0)->required();
    orc_max->add_option("--k", ok)->required();
    orc_max->add_option("--sigma", osigma)->required();
    orc_max->add_option("--t", ot)->required();
    orc_max->add_option("--d", od)->required();
    orc->require_subcommand(1);

    // --- validate-recipes ---
    auto* val = app.add_subcommand("validate-recipes", "Check the reproduction manifest");
    std::string manifest = "docs/recipes.cfg", repo_root = ".";
    val->add_option("--manifest", manifest, "manifest path");
    val->add_option("--root", repo_root, "repo root for resolving configs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(config_path, seed, out_dir, trials_override, methods_filter);

        if (est->parsed()) {
            sigma = broadcast(sigma, d, "--sigma");
            x0 = broadcast(x0, d, "--x0");
            const wamc::ModelSpec model = wamc::black_scholes_model(d, sigma);
            const wamc::Payoff payoff = payoff_name == "max-call" ? wamc::max_call(strike)
                                                                  : wamc::basket_call(strike);
            wamc::EstimateResult r;
            if (method == "wa-sgd") {
                wamc::TrainConfig train;
                train.batch = batch;
                train.iters = iters;
                train.steps = n;
                train.order = order;
                train.optimizer = wamc::parse_optimizer(optimizer);
                train.warm_start = warm_start;
                train.record_trace = !trace_path.empty();
                if (schedule_text.empty())
                    throw std::runtime_error("wa-sgd needs --schedule");
                train.schedule = wamc::parse_schedule(schedule_text, iters);
                r = wamc::estimate_wa_sgd(model, x0, payoff, maturity, n, train, seed, trial);
            } else if (method == "wa-mc") {
                r = wamc::estimate_wa_mc(model, x0, payoff, maturity, n, order, paths, seed, trial);
            } else if (method == "em-mc") {
                r = wamc::estimate_em_mc(model, x0, payoff, maturity, n, paths, seed, trial);
            } else if (method == "exact-mc") {
                r = wamc::estimate_exact_gbm_mc(model, x0, payoff, maturity, paths, seed, trial);
            } else {
                throw std::runtime_error("unknown --method " + method);
            }
            std::printf("method=%s value=%.17g", r.method.c_str(), r.value);
            if (r.std_error) std::printf(" std_err=%.17g", *r.std_error);
            std::printf(" n=%d order=%s seed=%llu trial=%u\n", r.settings.n,
                        r.settings.order.c_str(),
                        static_cast<unsigned long long>(r.settings.seed), r.settings.trial);
            if (!trace_path.empty() && !r.trace.empty()) {
                FILE* f = std::fopen(trace_path.c_str(), "wb");
                if (!f) throw std::runtime_error("cannot write " + trace_path);
                std::fprintf(f, "iteration,theta\n");
                for (std::size_t j = 0; j < r.trace.size(); ++j)
                    std::fprintf(f, "%zu,%.17g\n", j + 1, r.trace[j]);
                std::fclose(f);
            }
            return 0;
        }

        if (orc->parsed()) {
            wamc::OraclePrice p;
            if (orc_bs->parsed())
                p = wamc::bs_call(ox0, ok, osigma, ot);
            else
                p = wamc::max_call_iid(ox0, ok, osigma, ot, od);
            std::printf("value=%.12f method=%s error_bound=%.3g\n", p.value, p.method.c_str(),
                        p.error_bound);
            return 0;
        }

        if (val->parsed()) {
            const wamc::RecipeReport rep = wamc::validate_recipes(manifest, repo_root);
            std::printf("%zu recipe(s)\n", rep.recipes.size());
            for (const auto& r : rep.recipes)
                std::printf("  %s: %s [%s]\n", r.name.c_str(), r.command.c_str(),
                            r.runtime_class.c_str());
            for (const auto& issue : rep.issues) std::printf("ISSUE: %s\n", issue.c_str());
            return rep.ok() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}

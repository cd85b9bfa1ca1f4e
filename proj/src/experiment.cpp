#include "wamc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wamc/estimate.hpp"
#include "wamc/numeric.hpp"
#include "wamc/optimize.hpp"
#include "wamc/oracle.hpp"

namespace wamc {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += fmt17(v[i]);
    }
    return out;
}

std::string fmt_list(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out;
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::runtime_error("expected true/false, got '" + v + "'");
}

}  // namespace

ExperimentConfig ExperimentConfig::from_config(const FlatConfig& cfg) {
    ExperimentConfig ec;
    const std::string model_kind = cfg.get("model", "kind");
    if (model_kind != "black_scholes")
        throw std::runtime_error("unsupported model kind '" + model_kind + "'");
    ec.d = static_cast<int>(cfg.get_long("model", "d"));
    if (ec.d < 1) throw std::runtime_error("[model] d must be >= 1");
    ec.sigma = cfg.get_double_list("model", "sigma");
    if (static_cast<int>(ec.sigma.size()) == 1) ec.sigma.assign(ec.d, ec.sigma[0]);
    if (static_cast<int>(ec.sigma.size()) != ec.d)
        throw std::runtime_error("[model] sigma must have 1 or d entries");
    ec.maturity = cfg.get_double("model", "t");
    ec.x0 = cfg.get_double_list("model", "x0");
    if (static_cast<int>(ec.x0.size()) == 1) ec.x0.assign(ec.d, ec.x0[0]);
    if (static_cast<int>(ec.x0.size()) != ec.d)
        throw std::runtime_error("[model] x0 must have 1 or d entries");

    ec.payoff_family = cfg.get("payoff", "family");
    if (ec.payoff_family != "basket_call" && ec.payoff_family != "max_call")
        throw std::runtime_error("[payoff] family must be basket_call or max_call");
    ec.strikes = cfg.get_double_list("payoff", "strikes");

    ec.trials = static_cast<int>(cfg.get_long("study", "trials"));
    if (ec.trials < 1) throw std::runtime_error("[study] trials must be >= 1");
    ec.reference = cfg.get("study", "reference");
    if (ec.reference != "exact-mc" && ec.reference != "oracle")
        throw std::runtime_error("[study] reference must be exact-mc or oracle");
    ec.reference_paths =
        ec.reference == "exact-mc" ? cfg.get_long("study", "reference_paths") : 0;

    for (const std::string& sec : cfg.section_names()) {
        if (sec.rfind("method.", 0) != 0) continue;
        if (sec.find(".band", 7) != std::string::npos) continue;  // handled with the method
        MethodSpec m;
        m.name = sec.substr(7);
        if (m.name.empty()) throw std::runtime_error("empty method name in [" + sec + "]");
        m.kind = cfg.get(sec, "kind");
        if (m.kind != "wa-sgd" && m.kind != "wa-mc" && m.kind != "em-mc" && m.kind != "exact-mc")
            throw std::runtime_error("[" + sec + "] kind must be wa-sgd, wa-mc, em-mc or exact-mc (got '" +
                                     m.kind + "')");
        if (m.kind == "wa-sgd" || m.kind == "wa-mc") m.order = cfg.get(sec, "order");
        if (m.kind != "exact-mc") {
            m.steps = cfg.get_int_list(sec, "steps");
            for (int n : m.steps)
                if (n < 1) throw std::runtime_error("[" + sec + "] steps must be >= 1");
        }
        if (m.kind == "wa-mc" || m.kind == "em-mc" || m.kind == "exact-mc")
            m.paths = cfg.get_long(sec, "paths");
        if (m.kind == "wa-sgd") {
            m.batch = static_cast<int>(cfg.get_long(sec, "batch"));
            m.iters = static_cast<int>(cfg.get_long(sec, "iters"));
            m.optimizer = cfg.get_or(sec, "optimizer", "adam");
            if (cfg.has(sec, "warm_start")) m.warm_start = parse_bool(cfg.get(sec, "warm_start"));
            for (int bi = 1;; ++bi) {
                const std::string bsec = sec + ".band" + std::to_string(bi);
                if (!cfg.has_section(bsec)) break;
                KBand band;
                if (cfg.has(bsec, "k_below")) band.k_below = cfg.get_double(bsec, "k_below");
                if (cfg.has(bsec, "k_upto")) band.k_upto = cfg.get_double(bsec, "k_upto");
                band.rates = cfg.get(bsec, "rates");
                parse_schedule(band.rates, m.iters);  // validate now
                m.bands.push_back(std::move(band));
            }
            if (m.bands.empty())
                throw std::runtime_error("[" + sec + "] wa-sgd needs at least one .band section");
        }
        ec.methods.push_back(std::move(m));
    }
    if (ec.methods.empty()) throw std::runtime_error("config defines no [method.*] sections");
    for (const auto& m : ec.methods) {
        if (m.kind != "wa-sgd") continue;
        for (double k : ec.strikes) ec.band_for(m, k);  // every strike needs a band
    }
    std::set<std::string> names;
    for (const auto& m : ec.methods)
        if (!names.insert(m.name).second)
            throw std::runtime_error("duplicate method name '" + m.name + "'");

    cfg.finish();
    return ec;
}

const KBand& ExperimentConfig::band_for(const MethodSpec& method, double strike) const {
    for (const auto& band : method.bands) {
        if (band.k_below && !(strike < *band.k_below)) continue;
        if (band.k_upto && !(strike <= *band.k_upto)) continue;
        return band;
    }
    throw std::runtime_error("method '" + method.name + "': no schedule band admits K = " +
                             fmt17(strike));
}

FlatConfig ExperimentConfig::to_config() const {
    FlatConfig cfg;
    cfg.set("model", "kind", "black_scholes");
    cfg.set("model", "d", std::to_string(d));
    cfg.set("model", "sigma", fmt_list(sigma));
    cfg.set("model", "t", fmt17(maturity));
    cfg.set("model", "x0", fmt_list(x0));
    cfg.set("payoff", "family", payoff_family);
    cfg.set("payoff", "strikes", fmt_list(strikes));
    cfg.set("study", "trials", std::to_string(trials));
    cfg.set("study", "reference", reference);
    if (reference == "exact-mc")
        cfg.set("study", "reference_paths", std::to_string(reference_paths));
    for (const auto& m : methods) {
        const std::string sec = "method." + m.name;
        cfg.set(sec, "kind", m.kind);
        if (m.kind == "wa-sgd" || m.kind == "wa-mc") cfg.set(sec, "order", m.order);
        if (m.kind != "exact-mc") cfg.set(sec, "steps", fmt_list(m.steps));
        if (m.kind == "wa-mc" || m.kind == "em-mc" || m.kind == "exact-mc")
            cfg.set(sec, "paths", std::to_string(m.paths));
        if (m.kind == "wa-sgd") {
            cfg.set(sec, "batch", std::to_string(m.batch));
            cfg.set(sec, "iters", std::to_string(m.iters));
            cfg.set(sec, "optimizer", m.optimizer);
            if (m.warm_start) cfg.set(sec, "warm_start", "true");
            for (std::size_t i = 0; i < m.bands.size(); ++i) {
                const std::string bsec = sec + ".band" + std::to_string(i + 1);
                if (m.bands[i].k_below) cfg.set(bsec, "k_below", fmt17(*m.bands[i].k_below));
                if (m.bands[i].k_upto) cfg.set(bsec, "k_upto", fmt17(*m.bands[i].k_upto));
                cfg.set(bsec, "rates", m.bands[i].rates);
            }
        }
    }
    return cfg;
}

void aggregate_values(std::span<const double> values, double& mean, double& spread) {
    const MeanStats s = mean_and_se(values);
    mean = s.mean;
    spread = values.size() > 1 ? s.std_err * std::sqrt(static_cast<double>(values.size())) : 0.0;
}

namespace {

std::uint64_t cell_seed(std::uint64_t root, const std::string& method, int k_index, int n,
                        int trial) {
    const std::uint64_t salt = (static_cast<std::uint64_t>(k_index) << 40) |
                               (static_cast<std::uint64_t>(n) << 20) |
                               static_cast<std::uint64_t>(trial);
    return derive_seed(root ^ fnv1a64(method), salt);
}

Payoff make_payoff(const ExperimentConfig& cfg, double strike) {
    return cfg.payoff_family == "basket_call" ? basket_call(strike) : max_call(strike);
}

RefValue compute_reference(const ExperimentConfig& cfg, const ModelSpec& model, double strike,
                           int k_index, std::uint64_t root) {
    RefValue ref;
    ref.strike = strike;
    if (cfg.reference == "exact-mc") {
        ref.seed = cell_seed(root, "reference", k_index, 0, 0);
        const EstimateResult r = estimate_exact_gbm_mc(model, cfg.x0, make_payoff(cfg, strike),
                                                       cfg.maturity, cfg.reference_paths, ref.seed);
        ref.value = r.value;
        ref.err = r.std_error.value_or(0.0);
        return ref;
    }
    // closed-form / quadrature references need iid coordinates
    for (int k = 1; k < cfg.d; ++k) {
        if (cfg.sigma[k] != cfg.sigma[0] || cfg.x0[k] != cfg.x0[0])
            throw std::runtime_error("oracle reference requires uniform sigma and x0");
    }
    if (cfg.payoff_family == "basket_call") {
        if (cfg.d != 1)
            throw std::runtime_error("oracle reference for basket_call is only exact at d = 1");
        const OraclePrice p = bs_call(cfg.x0[0], strike, cfg.sigma[0], cfg.maturity);
        ref.value = p.value;
        ref.err = p.error_bound;
    } else {
        const OraclePrice p = max_call_iid(cfg.x0[0], strike, cfg.sigma[0], cfg.maturity, cfg.d);
        ref.value = p.value;
        ref.err = p.error_bound;
    }
    return ref;
}

}  // namespace

ConvergenceReport run_study(const ExperimentConfig& config, std::uint64_t root_seed) {
    ConvergenceReport report;
    report.config = config;
    report.root_seed = root_seed;

    ModelSpec model = black_scholes_model(config.d, config.sigma);

    for (std::size_t ki = 0; ki < config.strikes.size(); ++ki) {
        try {
            report.refs.push_back(
                compute_reference(config, model, config.strikes[ki], static_cast<int>(ki), root_seed));
        } catch (const std::exception& e) {
            report.failures.push_back("reference K=" + fmt17(config.strikes[ki]) + ": " + e.what());
            report.complete = false;
        }
    }

    for (const auto& method : config.methods) {
        const std::vector<int> steps = method.kind == "exact-mc" ? std::vector<int>{0} : method.steps;
        for (std::size_t ki = 0; ki < config.strikes.size(); ++ki) {
            const double strike = config.strikes[ki];
            const Payoff payoff = make_payoff(config, strike);
            for (int n : steps) {
                CellStats cell;
                cell.method = method.name;
                cell.strike = strike;
                cell.n = n;
                for (int trial = 0; trial < config.trials; ++trial) {
                    const std::uint64_t seed =
                        cell_seed(root_seed, method.name, static_cast<int>(ki), n, trial);
                    try {
                        EstimateResult r;
                        if (method.kind == "wa-sgd") {
                            TrainConfig train;
                            train.batch = method.batch;
                            train.iters = method.iters;
                            train.steps = n;
                            train.order = method.order;
                            train.optimizer = parse_optimizer(method.optimizer);
                            train.warm_start = method.warm_start;
                            train.schedule = parse_schedule(
                                config.band_for(method, strike).rates, method.iters);
                            r = estimate_wa_sgd(model, config.x0, payoff, config.maturity, n, train,
                                                seed, static_cast<std::uint32_t>(trial));
                        } else if (method.kind == "wa-mc") {
                            r = estimate_wa_mc(model, config.x0, payoff, config.maturity, n,
                                               method.order, method.paths, seed,
                                               static_cast<std::uint32_t>(trial));
                        } else if (method.kind == "em-mc") {
                            r = estimate_em_mc(model, config.x0, payoff, config.maturity, n,
                                               method.paths, seed, static_cast<std::uint32_t>(trial));
                        } else {
                            r = estimate_exact_gbm_mc(model, config.x0, payoff, config.maturity,
                                                      method.paths, seed,
                                                      static_cast<std::uint32_t>(trial));
                        }
                        cell.values.push_back(r.value);
                        cell.std_errs.push_back(
                            r.std_error.value_or(std::numeric_limits<double>::quiet_NaN()));
                        cell.seeds.push_back(seed);
                    } catch (const std::exception& e) {
                        report.failures.push_back("cell method=" + method.name +
                                                  " K=" + fmt17(strike) + " n=" + std::to_string(n) +
                                                  " trial=" + std::to_string(trial) + ": " + e.what());
                        report.complete = false;
                    }
                }
                if (!cell.values.empty()) aggregate_values(cell.values, cell.mean, cell.spread);
                report.cells.push_back(std::move(cell));
            }
        }
    }

    for (const auto& method : config.methods) {
        if (method.kind == "exact-mc") continue;
        try {
            report.series.push_back(error_metric(report, method.name));
        } catch (const std::exception& e) {
            report.failures.push_back("series " + method.name + ": " + e.what());
            report.complete = false;
        }
    }
    return report;
}

namespace {

const CellStats* find_cell(const ConvergenceReport& report, const std::string& method,
                           double strike, int n) {
    for (const auto& c : report.cells)
        if (c.method == method && c.strike == strike && c.n == n && !c.values.empty()) return &c;
    return nullptr;
}

const RefValue* find_ref(const ConvergenceReport& report, double strike) {
    for (const auto& r : report.refs)
        if (r.strike == strike) return &r;
    return nullptr;
}

double cell_se(const CellStats& cell, int trials) {
    if (trials > 1 && static_cast<int>(cell.values.size()) > 1)
        return cell.spread / std::sqrt(static_cast<double>(cell.values.size()));
    if (!cell.std_errs.empty() && std::isfinite(cell.std_errs[0])) return cell.std_errs[0];
    return 0.0;
}

}  // namespace

MethodSeries error_metric(const ConvergenceReport& report, const std::string& method) {
    const MethodSpec* spec = nullptr;
    for (const auto& m : report.config.methods)
        if (m.name == method) spec = &m;
    if (!spec) throw std::invalid_argument("error_metric: unknown method '" + method + "'");
    if (spec->kind == "exact-mc")
        throw std::invalid_argument("error_metric: not defined for the reference method");
    if (std::find(spec->steps.begin(), spec->steps.end(), 1) == spec->steps.end())
        throw std::invalid_argument("error_metric: method '" + method + "' has no n = 1 cells");

    MethodSeries series;
    series.method = method;

    // argmax_K |mean(K, n=1) - ref(K)|, ties toward the smaller strike
    double best = -1.0;
    for (double strike : report.config.strikes) {
        const CellStats* cell = find_cell(report, method, strike, 1);
        const RefValue* ref = find_ref(report, strike);
        if (!cell || !ref) continue;
        const double err = std::fabs(cell->mean - ref->value);
        if (err > best + 1e-15 * std::max(1.0, best)) {
            best = err;
            series.worst_k = strike;
        } else if (std::fabs(err - best) <= 1e-15 * std::max(1.0, best) && strike < series.worst_k) {
            series.worst_k = strike;  // exact tie: keep the smaller strike
            series.tie_broken_low = true;
        }
    }
    if (best < 0.0)
        throw std::runtime_error("error_metric: no usable n = 1 cells for method '" + method + "'");

    const RefValue* ref = find_ref(report, series.worst_k);
    for (int n : spec->steps) {
        const CellStats* cell = find_cell(report, method, series.worst_k, n);
        if (!cell) continue;
        SeriesPoint pt;
        pt.n = n;
        pt.error = std::fabs(cell->mean - ref->value);
        pt.combined_se = std::hypot(cell_se(*cell, report.config.trials), ref->err);
        pt.included = pt.error > 3.0 * pt.combined_se && pt.error > 0.0;
        series.points.push_back(pt);
    }

    std::vector<int> ns;
    std::vector<double> errs;
    for (const auto& pt : series.points) {
        if (pt.included) {
            ns.push_back(pt.n);
            errs.push_back(pt.error);
        }
    }
    if (ns.size() >= 2) {
        series.slope = fit_order(ns, errs);
    } else {
        series.note = "slope not fitted: fewer than 2 points resolve bias above 3x statistical error";
    }
    return series;
}

double fit_order(std::span<const int> ns, std::span<const double> errors) {
    if (ns.size() != errors.size()) throw std::invalid_argument("fit_order: length mismatch");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (errors[i] > 0.0) {
            lx.push_back(std::log(static_cast<double>(ns[i])));
            ly.push_back(std::log(errors[i]));
        }
    }
    if (lx.size() < 2) throw std::invalid_argument("fit_order: need at least 2 positive errors");
    return -ls_slope(lx, ly);
}

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace

void emit_csv(const ConvergenceReport& report, const std::string& dir) {
    std::filesystem::create_directories(dir);
    std::string trials = "method,K,n,trial,value,std_err,seed\n";
    for (const auto& cell : report.cells) {
        for (std::size_t t = 0; t < cell.values.size(); ++t) {
            trials += cell.method + "," + fmt17(cell.strike) + "," + std::to_string(cell.n) + "," +
                      std::to_string(t) + "," + fmt17(cell.values[t]) + "," +
                      fmt17(cell.std_errs[t]) + "," + std::to_string(cell.seeds[t]) + "\n";
        }
    }
    write_file(dir + "/trials.csv", trials);

    std::string agg = "method,K,n,mean,spread,ref,ref_err\n";
    for (const auto& cell : report.cells) {
        if (cell.values.empty()) continue;
        const RefValue* ref = find_ref(report, cell.strike);
        agg += cell.method + "," + fmt17(cell.strike) + "," + std::to_string(cell.n) + "," +
               fmt17(cell.mean) + "," + fmt17(cell.spread) + "," +
               (ref ? fmt17(ref->value) : "nan") + "," + (ref ? fmt17(ref->err) : "nan") + "\n";
    }
    write_file(dir + "/aggregates.csv", agg);
}

void emit_text(const ConvergenceReport& report, const std::string& path) {
    std::ostringstream out;
    out << "root_seed = " << report.root_seed << "\n";
    out << "complete = " << (report.complete ? "yes" : "no") << "\n";
    out << "increment stream = philox4x32-10/box-muller\n\n";
    out << "references:\n";
    for (const auto& r : report.refs)
        out << "  K=" << fmt17(r.strike) << "  ref=" << fmt17(r.value) << "  err=" << fmt17(r.err)
            << "\n";
    for (const auto& s : report.series) {
        out << "\nmethod " << s.method << ": worst K = " << fmt17(s.worst_k);
        if (s.tie_broken_low) out << " (argmax tie broken toward smaller K)";
        out << "\n";
        for (const auto& pt : s.points) {
            out << "  n=" << pt.n << "  E(n)=" << fmt17(pt.error) << "  3*se="
                << fmt17(3.0 * pt.combined_se) << (pt.included ? "" : "  [excluded from fit]")
                << "\n";
        }
        if (s.slope)
            out << "  fitted order = " << fmt17(*s.slope) << "\n";
        else
            out << "  " << s.note << "\n";
    }
    if (!report.failures.empty()) {
        out << "\nfailures:\n";
        for (const auto& f : report.failures) out << "  " << f << "\n";
    }
    write_file(path, out.str());
}

void emit_svg(const ConvergenceReport& report, const std::string& path) {
    const double width = 760, height = 540;
    const double ml = 70, mr = 190, mt = 30, mb = 55;
    const double pw = width - ml - mr, ph = height - mt - mb;

    double nmin = 1e300, nmax = 0, emin = 1e300, emax = 0;
    for (const auto& s : report.series) {
        for (const auto& pt : s.points) {
            if (pt.error <= 0.0) continue;
            nmin = std::min(nmin, double(pt.n));
            nmax = std::max(nmax, double(pt.n));
            emin = std::min(emin, pt.error);
            emax = std::max(emax, pt.error);
        }
    }
    if (!(nmax > 0)) {
        nmin = 1;
        nmax = 2;
        emin = 0.1;
        emax = 1;
    }
    if (nmin == nmax) nmax = nmin * 2;
    emin /= 2;
    emax *= 2;

    const auto xmap = [&](double n) {
        return ml + pw * (std::log(n) - std::log(nmin)) / (std::log(nmax) - std::log(nmin));
    };
    const auto ymap = [&](double e) {
        return mt + ph * (1.0 - (std::log(e) - std::log(emin)) / (std::log(emax) - std::log(emin)));
    };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "' viewBox='0 0 " << width << " " << height << "'>\n";
    svg << "<rect width='100%' height='100%' fill='white'/>\n";
    svg << "<rect x='" << ml << "' y='" << mt << "' width='" << pw << "' height='" << ph
        << "' fill='none' stroke='black'/>\n";

    // axis ticks: powers of 2 in n, powers of 10 in error
    for (double n = 1; n <= nmax * 1.0001; n *= 2) {
        if (n < nmin * 0.999) continue;
        const double x = xmap(n);
        svg << "<line x1='" << x << "' y1='" << mt + ph << "' x2='" << x << "' y2='" << mt + ph + 5
            << "' stroke='black'/>\n";
        svg << "<text x='" << x << "' y='" << mt + ph + 20
            << "' font-size='12' text-anchor='middle'>" << int(n) << "</text>\n";
    }
    for (int p = -12; p <= 12; ++p) {
        const double e = std::pow(10.0, p);
        if (e < emin || e > emax) continue;
        const double yy = ymap(e);
        svg << "<line x1='" << ml - 5 << "' y1='" << yy << "' x2='" << ml << "' y2='" << yy
            << "' stroke='black'/>\n";
        svg << "<text x='" << ml - 8 << "' y='" << yy + 4
            << "' font-size='12' text-anchor='end'>1e" << p << "</text>\n";
    }
    svg << "<text x='" << ml + pw / 2 << "' y='" << height - 14
        << "' font-size='13' text-anchor='middle'>time steps n</text>\n";
    svg << "<text x='18' y='" << mt + ph / 2
        << "' font-size='13' text-anchor='middle' transform='rotate(-90 18 " << mt + ph / 2
        << ")'>worst-strike error</text>\n";

    // reference slope guides through the first series' first point
    for (const auto& s : report.series) {
        if (s.points.empty() || s.points.front().error <= 0) continue;
        const double e0 = s.points.front().error;
        const double n0 = s.points.front().n;
        for (int order = 1; order <= 2; ++order) {
            svg << "<line x1='" << xmap(n0) << "' y1='" << ymap(e0) << "' x2='" << xmap(nmax)
                << "' y2='" << ymap(e0 * std::pow(n0 / nmax, order))
                << "' stroke='#aaaaaa' stroke-dasharray='4,4'/>\n";
        }
        break;
    }

    int ci = 0;
    for (const auto& s : report.series) {
        const char* color = colors[ci % 6];
        std::string pts;
        for (const auto& pt : s.points) {
            if (pt.error <= 0.0) continue;
            if (!pts.empty()) pts += " ";
            pts += std::to_string(xmap(pt.n)) + "," + std::to_string(ymap(pt.error));
        }
        if (!pts.empty()) {
            svg << "<polyline points='" << pts << "' fill='none' stroke='" << color
                << "' stroke-width='2'/>\n";
            for (const auto& pt : s.points) {
                if (pt.error <= 0.0) continue;
                svg << "<circle cx='" << xmap(pt.n) << "' cy='" << ymap(pt.error)
                    << "' r='3.5' fill='" << color << "'/>\n";
            }
        }
        const double ly = mt + 16 + 18 * ci;
        svg << "<line x1='" << ml + pw + 12 << "' y1='" << ly << "' x2='" << ml + pw + 34
            << "' y2='" << ly << "' stroke='" << color << "' stroke-width='2'/>\n";
        svg << "<text x='" << ml + pw + 40 << "' y='" << ly + 4 << "' font-size='12'>" << s.method;
        if (s.slope) svg << " (order " << std::round(*s.slope * 100) / 100 << ")";
        svg << "</text>\n";
        ++ci;
    }
    svg << "</svg>\n";
    write_file(path, svg.str());
}

void emit(const ConvergenceReport& report, const std::string& format, const std::string& path) {
    if (format == "csv")
        emit_csv(report, path);
    else if (format == "svg")
        emit_svg(report, path);
    else if (format == "text")
        emit_text(report, path);
    else
        throw std::invalid_argument("emit: unknown format '" + format + "'");
}

std::vector<TrialRow> read_trials_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    if (line != "method,K,n,trial,value,std_err,seed")
        throw std::runtime_error(path + ": unexpected header");
    std::vector<TrialRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string f[7];
        for (int i = 0; i < 7; ++i)
            if (!std::getline(ss, f[i], ','))
                throw std::runtime_error(path + ": short row '" + line + "'");
        TrialRow r;
        r.method = f[0];
        r.strike = std::stod(f[1]);
        r.n = std::stoi(f[2]);
        r.trial = std::stoi(f[3]);
        r.value = std::stod(f[4]);
        r.std_err = std::stod(f[5]);
        r.seed = std::stoull(f[6]);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace wamc

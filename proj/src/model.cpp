#include "wamc/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wamc {

std::vector<double> apply_L(const ModelSpec& model, int i, int j, std::span<const double> x) {
    const int d = model.d;
    if (i < 0 || i > d || j < 0 || j > d)
        throw std::invalid_argument("apply_L: field index out of range");

    Mat jac(d, d);
    model.first_deriv(j, x, jac);
    std::vector<double> out(d, 0.0);

    if (i >= 1) {
        Mat sig(d, d);
        model.diffusion(x, sig);
        for (int c = 0; c < d; ++c) {
            double s = 0.0;
            for (int k = 0; k < d; ++k) s += jac.at(c, k) * sig.at(k, i - 1);
            out[c] = s;
        }
        return out;
    }

    std::vector<double> b(d);
    model.drift(x, b);
    Mat sig(d, d);
    model.diffusion(x, sig);
    std::vector<Mat> hess;
    model.second_deriv(j, x, hess);
    for (int c = 0; c < d; ++c) {
        double s = 0.0;
        for (int k = 0; k < d; ++k) s += jac.at(c, k) * b[k];
        double q = 0.0;
        for (int r = 0; r < d; ++r) {
            for (int k = 0; k < d; ++k) {
                const double srk = sig.at(k, r);
                if (srk == 0.0) continue;
                for (int l = 0; l < d; ++l) {
                    q += srk * sig.at(l, r) * hess[c].at(k, l);
                }
            }
        }
        out[c] = s + 0.5 * q;
    }
    return out;
}

ModelSpec black_scholes_model(int d, std::span<const double> sigma) {
    if (d < 1) throw std::invalid_argument("black_scholes_model: d must be >= 1");
    if (static_cast<int>(sigma.size()) != d)
        throw std::invalid_argument("black_scholes_model: sigma size != d");
    for (double s : sigma) {
        if (!(s > 0.0)) throw std::invalid_argument("black_scholes_model: vols must be positive");
    }
    std::vector<double> vols(sigma.begin(), sigma.end());
    double vmin = *std::min_element(vols.begin(), vols.end());

    ModelSpec m;
    m.d = d;
    m.descriptor = "black-scholes diag(d=" + std::to_string(d) + "); positive orthant";
    m.diag_vols = vols;
    // sigma_i(x) = vol_i x_i e_i degenerates as x_i -> 0; the floor encodes a
    // positive-orthant domain restriction around the experiment scale.
    m.ellipticity_floor = 1e-6 * vmin * vmin;
    m.drift = [d](std::span<const double>, std::span<double> out) {
        for (int k = 0; k < d; ++k) out[k] = 0.0;
    };
    m.diffusion = [d, vols](std::span<const double> x, Mat& out) {
        out = Mat(d, d);
        for (int k = 0; k < d; ++k) out.at(k, k) = vols[k] * x[k];
    };
    m.first_deriv = [d, vols](int j, std::span<const double>, Mat& out) {
        out = Mat(d, d);
        if (j >= 1) out.at(j - 1, j - 1) = vols[j - 1];
    };
    m.second_deriv = [d](int, std::span<const double>, std::vector<Mat>& out) {
        out.assign(d, Mat(d, d));
    };
    return m;
}

ModelSpec black_scholes_model(int d, double sigma) {
    std::vector<double> v(d, sigma);
    return black_scholes_model(d, v);
}

Payoff basket_call(double strike) {
    if (!std::isfinite(strike)) throw std::invalid_argument("basket_call: strike must be finite");
    Payoff p;
    p.family = "basket_call";
    p.strike = strike;
    p.eval = [strike](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += v;
        return std::max(s / static_cast<double>(x.size()) - strike, 0.0);
    };
    return p;
}

Payoff max_call(double strike) {
    if (!std::isfinite(strike)) throw std::invalid_argument("max_call: strike must be finite");
    Payoff p;
    p.family = "max_call";
    p.strike = strike;
    p.eval = [strike](std::span<const double> x) {
        double best = 0.0;
        for (double v : x) best = std::max(best, std::max(v - strike, 0.0));
        return best;
    };
    return p;
}

void attach_fd_derivatives(ModelSpec& model, double scale) {
    const int d = model.d;
    const double h1 = scale * std::cbrt(std::numeric_limits<double>::epsilon());
    const double h2 = scale * std::pow(std::numeric_limits<double>::epsilon(), 0.25);
    auto drift = model.drift;
    auto diffusion = model.diffusion;

    // field j evaluated at x: j == 0 -> b(x), j >= 1 -> column j-1 of sigma(x)
    auto field = [d, drift, diffusion](int j, std::span<const double> x, std::span<double> out) {
        if (j == 0) {
            drift(x, out);
        } else {
            Mat sig(d, d);
            diffusion(x, sig);
            for (int k = 0; k < d; ++k) out[k] = sig.at(k, j - 1);
        }
    };

    model.first_deriv = [d, field, h1](int j, std::span<const double> x, Mat& out) {
        out = Mat(d, d);
        std::vector<double> xp(x.begin(), x.end()), fp(d), fm(d);
        for (int k = 0; k < d; ++k) {
            const double h = h1 * std::max(1.0, std::fabs(x[k]));
            xp[k] = x[k] + h;
            field(j, xp, fp);
            xp[k] = x[k] - h;
            field(j, xp, fm);
            xp[k] = x[k];
            for (int c = 0; c < d; ++c) out.at(c, k) = (fp[c] - fm[c]) / (2.0 * h);
        }
    };
    model.second_deriv = [d, field, h2](int j, std::span<const double> x, std::vector<Mat>& out) {
        out.assign(d, Mat(d, d));
        std::vector<double> xp(x.begin(), x.end());
        std::vector<double> f0(d), fpp(d), fpm(d), fmp(d), fmm(d);
        field(j, x, f0);
        for (int k = 0; k < d; ++k) {
            const double hk = h2 * std::max(1.0, std::fabs(x[k]));
            // diagonal second difference
            xp[k] = x[k] + hk;
            field(j, xp, fpp);
            xp[k] = x[k] - hk;
            field(j, xp, fmm);
            xp[k] = x[k];
            for (int c = 0; c < d; ++c)
                out[c].at(k, k) = (fpp[c] - 2.0 * f0[c] + fmm[c]) / (hk * hk);
            for (int l = k + 1; l < d; ++l) {
                const double hl = h2 * std::max(1.0, std::fabs(x[l]));
                xp[k] = x[k] + hk; xp[l] = x[l] + hl;
                field(j, xp, fpp);
                xp[l] = x[l] - hl;
                field(j, xp, fpm);
                xp[k] = x[k] - hk; xp[l] = x[l] + hl;
                field(j, xp, fmp);
                xp[l] = x[l] - hl;
                field(j, xp, fmm);
                xp[k] = x[k]; xp[l] = x[l];
                for (int c = 0; c < d; ++c) {
                    const double v = (fpp[c] - fpm[c] - fmp[c] + fmm[c]) / (4.0 * hk * hl);
                    out[c].at(k, l) = v;
                    out[c].at(l, k) = v;
                }
            }
        }
    };
    // finite differences of the analytic diagonal shortcut would no longer be
    // exact companions; drop the tag so everything routes through the fields
    model.diag_vols.reset();
}

void validate_ellipticity(const ModelSpec& model, std::span<const std::vector<double>> probes) {
    const int d = model.d;
    Mat sig(d, d);
    for (const auto& x : probes) {
        model.diffusion(x, sig);
        Mat a(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                double s = 0.0;
                for (int k = 0; k < d; ++k) s += sig.at(r, k) * sig.at(c, k);
                a.at(r, c) = s;
            }
        if (!psd_with_shift(a, model.ellipticity_floor)) throw EllipticityError(x);
    }
}

}  // namespace wamc

// Test-only helpers: deterministic randomness, random polynomial models with
// analytic derivatives, and independent oracles (Gaussian half-moment closed
// forms and nested quadrature) for the 1-D weighted scheme. These stay
// independent of the library's simulation path so they can serve as oracles.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <vector>

#include "wamc/model.hpp"
#include "wamc/numeric.hpp"
#include "wamc/rng.hpp"

namespace testsupport {

struct TestRng {
    std::uint64_t state;
    explicit TestRng(std::uint64_t seed) : state(seed) {}
    double uniform() {  // [0,1)
        return static_cast<double>(wamc::splitmix64(state) >> 11) * 0x1p-53;
    }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    double normal() {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
};

// Polynomial coefficient fields V_j^c(x) = a0 + a1.x + x^T A2 x / 2 with the
// diffusion kept diagonally dominant near the sampled states so sigma(x)
// stays invertible.
inline wamc::ModelSpec make_poly_model(int d, std::uint64_t seed) {
    TestRng rng(seed);
    struct Coeffs {
        std::vector<double> a0;               // [j][c]
        std::vector<double> a1;               // [j][c][k]
        std::vector<double> a2;               // [j][c][k][l], symmetric in (k,l)
        int d;
        double at0(int j, int c) const { return a0[j * d + c]; }
        double at1(int j, int c, int k) const { return a1[(j * d + c) * d + k]; }
        double at2(int j, int c, int k, int l) const {
            return a2[((j * d + c) * d + k) * d + l];
        }
    };
    auto coeffs = std::make_shared<Coeffs>();
    coeffs->d = d;
    coeffs->a0.resize((d + 1) * d);
    coeffs->a1.resize((d + 1) * static_cast<std::size_t>(d) * d);
    coeffs->a2.resize((d + 1) * static_cast<std::size_t>(d) * d * d);
    for (int j = 0; j <= d; ++j) {
        for (int c = 0; c < d; ++c) {
            double base = 0.3 * rng.uniform(-1.0, 1.0);
            if (j >= 1 && c == j - 1) base = 1.5 + 0.5 * rng.uniform();  // dominant diagonal
            coeffs->a0[j * d + c] = base;
            for (int k = 0; k < d; ++k)
                coeffs->a1[(j * d + c) * d + k] = 0.2 * rng.uniform(-1.0, 1.0);
            for (int k = 0; k < d; ++k)
                for (int l = 0; l <= k; ++l) {
                    const double v = 0.1 * rng.uniform(-1.0, 1.0);
                    coeffs->a2[((j * d + c) * d + k) * d + l] = v;
                    coeffs->a2[((j * d + c) * d + l) * d + k] = v;
                }
        }
    }
    auto field_value = [coeffs](int j, std::span<const double> x, int c) {
        const int d = coeffs->d;
        double v = coeffs->at0(j, c);
        for (int k = 0; k < d; ++k) {
            v += coeffs->at1(j, c, k) * x[k];
            for (int l = 0; l < d; ++l) v += 0.5 * coeffs->at2(j, c, k, l) * x[k] * x[l];
        }
        return v;
    };

    wamc::ModelSpec m;
    m.d = d;
    m.descriptor = "test polynomial model";
    m.ellipticity_floor = 0.25;
    m.drift = [field_value, d](std::span<const double> x, std::span<double> out) {
        for (int c = 0; c < d; ++c) out[c] = field_value(0, x, c);
    };
    m.diffusion = [field_value, d](std::span<const double> x, wamc::Mat& out) {
        out = wamc::Mat(d, d);
        for (int i = 1; i <= d; ++i)
            for (int c = 0; c < d; ++c) out.at(c, i - 1) = field_value(i, x, c);
    };
    m.first_deriv = [coeffs, d](int j, std::span<const double> x, wamc::Mat& out) {
        out = wamc::Mat(d, d);
        for (int c = 0; c < d; ++c)
            for (int k = 0; k < d; ++k) {
                double v = coeffs->at1(j, c, k);
                for (int l = 0; l < d; ++l) v += coeffs->at2(j, c, k, l) * x[l];
                out.at(c, k) = v;
            }
    };
    m.second_deriv = [coeffs, d](int j, std::span<const double>, std::vector<wamc::Mat>& out) {
        out.assign(d, wamc::Mat(d, d));
        for (int c = 0; c < d; ++c)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) out[c].at(k, l) = coeffs->at2(j, c, k, l);
    };
    return m;
}

inline wamc::ModelSpec make_constant_model(int d, double drift_level, double diag, double offdiag) {
    wamc::ModelSpec m;
    m.d = d;
    m.descriptor = "constant-coefficient test model";
    m.ellipticity_floor = 0.25 * diag * diag;
    m.drift = [d, drift_level](std::span<const double>, std::span<double> out) {
        for (int k = 0; k < d; ++k) out[k] = drift_level;
    };
    m.diffusion = [d, diag, offdiag](std::span<const double>, wamc::Mat& out) {
        out = wamc::Mat(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) out.at(r, c) = r == c ? diag : offdiag;
    };
    m.first_deriv = [d](int, std::span<const double>, wamc::Mat& out) { out = wamc::Mat(d, d); };
    m.second_deriv = [d](int, std::span<const double>, std::vector<wamc::Mat>& out) {
        out.assign(d, wamc::Mat(d, d));
    };
    return m;
}

// ---------------------------------------------------------------------------
// Independent oracle for the 1-D zero-drift model x -> x (1 + sigma w):
// expectations of hinge * order-2 weight through Gaussian half-moments.

// I_k(c) = int_c^inf w^k phi_t(w) dw
inline std::array<double, 5> half_moments(double c, double t) {
    const double phi = std::exp(-c * c / (2.0 * t)) / std::sqrt(2.0 * std::numbers::pi * t);
    std::array<double, 5> I;
    I[0] = 0.5 * std::erfc(c / std::sqrt(2.0 * t));
    I[1] = t * phi;
    for (int k = 2; k <= 4; ++k) I[k] = t * std::pow(c, k - 1) * phi + t * (k - 1) * I[k - 2];
    return I;
}

inline std::array<double, 5> full_moments(double t) {
    return {1.0, 0.0, t, 0.0, 3.0 * t * t};
}

// Coefficients of m_t(w) = 1 + (s/2t)(w^3 - 3tw) + (s^2/4)(w^2 - t)
inline std::array<double, 4> weight_poly(double sigma, double t) {
    return {1.0 - 0.25 * sigma * sigma * t, -1.5 * sigma, 0.25 * sigma * sigma,
            sigma / (2.0 * t)};
}

// E[(alpha (1 + sigma w) - K)^+ m_t(w)] in closed form.
inline double hinge_weight_expectation(double alpha, double strike, double sigma, double t) {
    const auto m = weight_poly(sigma, t);
    const double a = alpha - strike;
    const double b = alpha * sigma;
    std::array<double, 5> p{};
    for (int k = 0; k < 4; ++k) {
        p[k] += a * m[k];
        p[k + 1] += b * m[k];
    }
    if (b == 0.0) return std::max(a, 0.0);
    const double c = -a / b;
    double acc = 0.0;
    if (b > 0.0) {
        const auto I = half_moments(c, t);
        for (int k = 0; k <= 4; ++k) acc += p[k] * I[k];
    } else {
        const auto F = full_moments(t);
        const auto I = half_moments(c, t);
        for (int k = 0; k <= 4; ++k) acc += p[k] * (F[k] - I[k]);
    }
    return acc;
}

namespace detail {
// 15-point Kronrod nodes/weights (positive half)
constexpr double kX[8] = {0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
                          0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
                          0.2077849550078985, 0.0};
constexpr double kW[8] = {0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
                          0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
                          0.2044329400752989, 0.2094821410847278};

template <class F>
double kronrod_panels(const F& f, double a, double b, int panels) {
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + (b - a) * p / panels;
        const double hi = a + (b - a) * (p + 1) / panels;
        const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        double acc = 0.0;
        for (int i = 0; i < 8; ++i) {
            double fv = f(c + h * kX[i]);
            if (kX[i] != 0.0) fv += f(c - h * kX[i]);
            acc += kW[i] * fv;
        }
        total += acc * h;
    }
    return total;
}
}  // namespace detail

// E[ f_K(Xbar_n) prod_i m(dW_i) ] for the 1-D zero-drift multiplicative model,
// by nesting quadrature over the first n-1 steps and the closed form over the
// last. Exact up to quadrature error (integrand smooth; domain +-10 sd).
inline double wa2_value_1d(int n, double x0, double strike, double sigma, double maturity,
                           int panels = 8) {
    const double t = maturity / n;
    if (n == 1) return hinge_weight_expectation(x0, strike, sigma, t);
    const auto m = weight_poly(sigma, t);
    const double sd = std::sqrt(t);
    const double lim = 10.0 * sd;
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * t);
    std::function<double(int, double)> level = [&](int step, double alpha) -> double {
        if (step == n - 1) return hinge_weight_expectation(alpha, strike, sigma, t);
        const auto f = [&](double w) {
            const double mw = m[0] + w * (m[1] + w * (m[2] + w * m[3]));
            const double phi = norm * std::exp(-w * w / (2.0 * t));
            return mw * phi * level(step + 1, alpha * (1.0 + sigma * w));
        };
        return detail::kronrod_panels(f, -lim, lim, panels);
    };
    return level(0, x0);
}

// Coupled estimate of the weak-approximation bias: mean over paths of
// f(Xbar_T) prod M - f(X_T^exact) with both terminals driven by the same
// increments (E f(X_exact) equals the closed form exactly, so the estimator
// is unbiased for the bias with far smaller variance than plain differences).
struct CoupledBias {
    double bias_m1 = 0.0, se_m1 = 0.0;
    double bias_m2 = 0.0, se_m2 = 0.0;
};

inline CoupledBias coupled_bias_1d(double x0, double strike, double sigma, double maturity, int n,
                                   long paths, std::uint64_t seed) {
    const double dt = maturity / n;
    const long chunk = 1L << 20;
    const long nchunks = (paths + chunk - 1) / chunk;
    std::vector<double> s1(nchunks, 0.0), q1(nchunks, 0.0), s2(nchunks, 0.0), q2(nchunks, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (long ci = 0; ci < nchunks; ++ci) {
        const long lo = ci * chunk;
        const long hi = std::min(paths, lo + chunk);
        std::vector<double> incr(n);
        double a1 = 0.0, b1 = 0.0, a2 = 0.0, b2 = 0.0;
        wamc::IncrementMeta meta{seed, 0, 0, static_cast<int>(paths), n, 1, dt};
        for (long p = lo; p < hi; ++p) {
            wamc::fill_path_increments(meta, static_cast<int>(p), incr);
            double x = x0, w = 1.0, sum = 0.0;
            for (int i = 0; i < n; ++i) {
                const double dw = incr[i];
                w *= 1.0 + (sigma / (2.0 * dt)) * (dw * dw * dw - 3.0 * dt * dw) +
                     0.25 * sigma * sigma * (dw * dw - dt);
                x *= 1.0 + sigma * dw;
                sum += dw;
            }
            const double exact = x0 * std::exp(-0.5 * sigma * sigma * maturity + sigma * sum);
            const double fe = std::max(exact - strike, 0.0);
            const double d1 = std::max(x - strike, 0.0) - fe;
            const double d2 = std::max(x - strike, 0.0) * w - fe;
            a1 += d1;
            b1 += d1 * d1;
            a2 += d2;
            b2 += d2 * d2;
        }
        s1[ci] = a1;
        q1[ci] = b1;
        s2[ci] = a2;
        q2[ci] = b2;
    }
    CoupledBias out;
    const double np = static_cast<double>(paths);
    const double m1 = wamc::pairwise_sum(s1) / np;
    const double m2 = wamc::pairwise_sum(s2) / np;
    out.bias_m1 = m1;
    out.bias_m2 = m2;
    out.se_m1 = std::sqrt((wamc::pairwise_sum(q1) / np - m1 * m1) / np);
    out.se_m2 = std::sqrt((wamc::pairwise_sum(q2) / np - m2 * m2) / np);
    return out;
}

}  // namespace testsupport

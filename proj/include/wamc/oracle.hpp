#pragma once

#include <string>

namespace wamc {

// Standard normal CDF via erfc; absolute error below 1e-14 over the range
// used here, so independent reimplementations agree to 1e-8 comfortably.
double norm_cdf(double x);

struct OraclePrice {
    double value = 0.0;
    std::string method;        // "closed-form" | "quadrature"
    double error_bound = 0.0;  // 0 for closed forms
};

// Zero-rate call on a single lognormal asset:
// x0*Phi(d1) - K*Phi(d2), d1 = (ln(x0/K) + sigma^2 T / 2)/(sigma sqrt(T)).
OraclePrice bs_call(double x0, double strike, double sigma, double maturity);

// E[(max_i X_T^i - K)^+] for d iid lognormal assets, computed as
// int_K^inf (1 - F(y)^d) dy on a log-transformed domain with Gauss-Kronrod
// panels; the reported bound adds the Kronrod-Gauss discrepancy and an
// analytic tail bound. Refined until bound <= 1e-4 * value.
OraclePrice max_call_iid(double x0, double strike, double sigma, double maturity, int d);

// Fixed panel count variant (no refinement loop); for convergence tests.
OraclePrice max_call_iid_panels(double x0, double strike, double sigma, double maturity, int d,
                                int panels);

}  // namespace wamc

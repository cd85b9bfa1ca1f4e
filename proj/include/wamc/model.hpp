#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wamc/linalg.hpp"

namespace wamc {

// Thrown when sigma(x) fails the ellipticity requirement at some state.
struct EllipticityError : std::runtime_error {
    std::vector<double> state;
    int step_index = -1;  // set when the failure surfaces mid-path
    explicit EllipticityError(std::vector<double> x, int step = -1)
        : std::runtime_error("ellipticity violation: sigma(x) not invertible"),
          state(std::move(x)),
          step_index(step) {}
};

// Coefficient fields of the SDE dX = b(X)dt + sum_i sigma_i(X) dW^i together
// with their first and second derivatives. Field index 0 is the drift b,
// fields 1..d are the diffusion columns. Immutable after construction.
struct ModelSpec {
    int d = 0;

    // b(x) -> out (size d)
    std::function<void(std::span<const double>, std::span<double>)> drift;
    // sigma(x) -> out (d x d, column i is field i+1)
    std::function<void(std::span<const double>, Mat&)> diffusion;
    // Jacobian of field j at x: out(c,k) = d V_j^c / d x_k
    std::function<void(int, std::span<const double>, Mat&)> first_deriv;
    // Hessians of field j at x: out[c] is d x d with (k,l) = d^2 V_j^c / dx_k dx_l
    std::function<void(int, std::span<const double>, std::vector<Mat>&)> second_deriv;

    double ellipticity_floor = 0.0;
    std::string descriptor;

    // Set for diagonal constant-vol models (zero drift, sigma_i(x) = vol_i x_i e_i);
    // simulation and weights take O(d) shortcuts when present.
    std::optional<std::vector<double>> diag_vols;
};

// Hinge payoffs from the experiment suite.
struct Payoff {
    std::function<double(std::span<const double>)> eval;
    std::string family;
    double strike = 0.0;
};

// (L_i V_j)(x) componentwise: L_0 uses drift and the diffusion-weighted
// Hessian, L_i (i>=1) is the directional derivative along sigma_i.
std::vector<double> apply_L(const ModelSpec& model, int i, int j, std::span<const double> x);

// Zero-drift model with diffusion diag(sigma_i x_i); valid on the positive
// orthant (recorded in the descriptor).
ModelSpec black_scholes_model(int d, std::span<const double> sigma);
ModelSpec black_scholes_model(int d, double sigma);

Payoff basket_call(double strike);
Payoff max_call(double strike);

// Replaces first_deriv/second_deriv with central finite differences of the
// model's own drift/diffusion (step scale * eps^{1/3}); for user-defined
// models without closed-form derivatives and for consistency tests.
void attach_fd_derivatives(ModelSpec& model, double scale = 1.0);

// Samples sigma(x)sigma(x)^T - floor*I >= 0 at each probe state; throws
// EllipticityError at the first violating state.
void validate_ellipticity(const ModelSpec& model, std::span<const std::vector<double>> probes);

}  // namespace wamc

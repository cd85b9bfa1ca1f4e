#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "wamc/linalg.hpp"
#include "wamc/model.hpp"

namespace wamc {

// Contracted coefficients of the order-2 weight at a state x:
//   B^{i3}_{i1,i2} = sum_{i4} (L_{i1} V_{i2})^{i4}(x) * (sigma^{-1})^{i3,i4}(x)
// stored sparsely: one block per (i1,i2) pair that has any nonzero entry,
// with the nonzero i3 components listed. i1,i2 range over 0..d (0 = drift
// field, with the step-length convention W^0 := dt), i3 over 1..d.
struct WeightCoeffs {
    struct Entry {
        int i3 = 0;  // 1-based
        double b = 0.0;
    };
    struct Block {
        int i1 = 0;
        int i2 = 0;
        std::vector<Entry> entries;
        double b_sq_sum = 0.0;  // sum of b^2 over entries
    };
    int d = 0;
    std::vector<Block> blocks;
    std::vector<double> state;  // x the coefficients were computed at
    Mat inv_sigma;
};

// M^{(1)} is identically one.
double weight_order1(std::span<const double> x, std::span<const double> dW, double dt);

// Builds WeightCoeffs at x; sigma^{-1}(x) by LU solve with partial pivoting,
// pivot floor tied to the model's ellipticity floor. Throws EllipticityError
// when sigma(x) is numerically singular.
WeightCoeffs precompute_coeffs(const ModelSpec& model, std::span<const double> x);

// Order-2 weight via the factored contraction over nonzero blocks.
double weight_order2(const WeightCoeffs& coeffs, std::span<const double> dW, double dt);

// Same value for diagonal constant-vol models, O(d) and state-free.
double weight_order2_diag(std::span<const double> vols, std::span<const double> dW, double dt);

// Direct transcription with all indices nested; reference evaluator used as
// the oracle in equivalence tests (cost grows like d^6).
double weight_order2_naive(const ModelSpec& model, std::span<const double> x,
                           std::span<const double> dW, double dt);

// Plug-in seam for externally supplied higher-order weights. A weight is any
// function (model, x, dW, dt) -> scalar registered under an order tag.
using WeightFn =
    std::function<double(const ModelSpec&, std::span<const double>, std::span<const double>, double)>;

void register_weight(const std::string& tag, WeightFn fn);
bool weight_registered(const std::string& tag);

// Per-step weight evaluator resolved from an order key ("1", "2", or a
// registered tag). For "2" on diagonal models the coefficients are
// state-independent and computed once.
class StepWeight {
  public:
    static StepWeight make(const ModelSpec& model, const std::string& order_key);

    double eval(const ModelSpec& model, std::span<const double> x, std::span<const double> dW,
                double dt) const;

    const std::string& order_key() const { return key_; }
    bool is_identity() const { return kind_ == Kind::One; }

  private:
    enum class Kind { One, Diag, Factored, Plugin };
    Kind kind_ = Kind::One;
    std::string key_;
    std::vector<double> vols_;  // Diag
    WeightFn plugin_;           // Plugin
};

}  // namespace wamc

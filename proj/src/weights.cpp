#include "wamc/weights.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace wamc {

double weight_order1(std::span<const double>, std::span<const double>, double) { return 1.0; }

WeightCoeffs precompute_coeffs(const ModelSpec& model, std::span<const double> x) {
    const int d = model.d;
    WeightCoeffs coeffs;
    coeffs.d = d;
    coeffs.state.assign(x.begin(), x.end());

    Mat sig(d, d);
    model.diffusion(x, sig);
    const double pivot_floor = 1e-3 * std::sqrt(std::max(model.ellipticity_floor, 0.0));
    Lu lu = lu_factor(sig, pivot_floor);
    if (!lu.ok) throw EllipticityError(std::vector<double>(x.begin(), x.end()));
    coeffs.inv_sigma = lu_inverse(lu);

    std::vector<double> bcol(d);
    for (int i1 = 0; i1 <= d; ++i1) {
        for (int i2 = 0; i2 <= d; ++i2) {
            const std::vector<double> v = apply_L(model, i1, i2, x);
            bool any = false;
            for (double c : v) {
                if (c != 0.0) {
                    any = true;
                    break;
                }
            }
            if (!any) continue;
            lu_solve(lu, v, bcol);
            WeightCoeffs::Block block;
            block.i1 = i1;
            block.i2 = i2;
            for (int i3 = 1; i3 <= d; ++i3) {
                const double b = bcol[i3 - 1];
                if (b == 0.0) continue;
                block.entries.push_back({i3, b});
                block.b_sq_sum += b * b;
            }
            if (!block.entries.empty()) coeffs.blocks.push_back(std::move(block));
        }
    }
    return coeffs;
}

double weight_order2(const WeightCoeffs& coeffs, std::span<const double> dW, double dt) {
    double first = 0.0;
    double second = 0.0;
    for (const auto& block : coeffs.blocks) {
        const double w1 = block.i1 == 0 ? dt : dW[block.i1 - 1];
        const double w2 = block.i2 == 0 ? dt : dW[block.i2 - 1];
        const bool diag12 = block.i1 == block.i2 && block.i1 != 0;
        double g = 0.0;
        for (const auto& e : block.entries) {
            const double w3 = dW[e.i3 - 1];
            double poly = w1 * w2 * w3;
            if (diag12) poly -= dt * w3;
            if (block.i2 == e.i3) poly -= dt * w1;
            if (block.i1 == e.i3) poly -= dt * w2;
            first += e.b * poly;
            g += e.b * w3;
        }
        if (block.i1 >= 1 && block.i2 >= 1) second += g * g - dt * block.b_sq_sum;
    }
    return 1.0 + first / (2.0 * dt) + 0.25 * second;
}

double weight_order2_diag(std::span<const double> vols, std::span<const double> dW, double dt) {
    double first = 0.0;
    double second = 0.0;
    for (std::size_t i = 0; i < vols.size(); ++i) {
        const double w = dW[i];
        const double s = vols[i];
        first += s * (w * w * w - 3.0 * dt * w);
        second += s * s * (w * w - dt);
    }
    return 1.0 + first / (2.0 * dt) + 0.25 * second;
}

double weight_order2_naive(const ModelSpec& model, std::span<const double> x,
                           std::span<const double> dW, double dt) {
    const int d = model.d;
    Mat sig(d, d);
    model.diffusion(x, sig);
    const double pivot_floor = 1e-3 * std::sqrt(std::max(model.ellipticity_floor, 0.0));
    Lu lu = lu_factor(sig, pivot_floor);
    if (!lu.ok) throw EllipticityError(std::vector<double>(x.begin(), x.end()));
    const Mat inv = lu_inverse(lu);

    // L_{i1} V_{i2} for all pairs up front
    std::vector<std::vector<double>> lv(static_cast<std::size_t>(d + 1) * (d + 1));
    for (int i1 = 0; i1 <= d; ++i1)
        for (int i2 = 0; i2 <= d; ++i2) lv[i1 * (d + 1) + i2] = apply_L(model, i1, i2, x);

    auto w = [&](int i) { return i == 0 ? dt : dW[i - 1]; };

    double first = 0.0;
    for (int i1 = 0; i1 <= d; ++i1) {
        for (int i2 = 0; i2 <= d; ++i2) {
            const auto& v = lv[i1 * (d + 1) + i2];
            for (int i3 = 1; i3 <= d; ++i3) {
                for (int i4 = 1; i4 <= d; ++i4) {
                    double poly = w(i1) * w(i2) * w(i3);
                    if (i1 == i2 && i1 != 0) poly -= dt * w(i3);
                    if (i2 == i3) poly -= dt * w(i1);
                    if (i1 == i3) poly -= dt * w(i2);
                    first += v[i4 - 1] * inv.at(i3 - 1, i4 - 1) * poly;
                }
            }
        }
    }

    double second = 0.0;
    for (int i1 = 1; i1 <= d; ++i1) {
        for (int i2 = 1; i2 <= d; ++i2) {
            const auto& v = lv[i1 * (d + 1) + i2];
            for (int i3 = 1; i3 <= d; ++i3)
                for (int i4 = 1; i4 <= d; ++i4)
                    for (int i5 = 1; i5 <= d; ++i5)
                        for (int i6 = 1; i6 <= d; ++i6) {
                            const double pair = w(i3) * w(i5) - (i3 == i5 ? dt : 0.0);
                            second += v[i4 - 1] * v[i6 - 1] * inv.at(i3 - 1, i4 - 1) *
                                      inv.at(i5 - 1, i6 - 1) * pair;
                        }
        }
    }
    return 1.0 + first / (2.0 * dt) + 0.25 * second;
}

namespace {

std::map<std::string, WeightFn>& registry() {
    static std::map<std::string, WeightFn> reg;
    return reg;
}

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

void register_weight(const std::string& tag, WeightFn fn) {
    if (tag == "1" || tag == "2") throw std::invalid_argument("register_weight: tag is built in");
    std::lock_guard<std::mutex> lock(registry_mutex());
    registry()[tag] = std::move(fn);
}

bool weight_registered(const std::string& tag) {
    if (tag == "1" || tag == "2") return true;
    std::lock_guard<std::mutex> lock(registry_mutex());
    return registry().count(tag) > 0;
}

StepWeight StepWeight::make(const ModelSpec& model, const std::string& order_key) {
    StepWeight sw;
    sw.key_ = order_key;
    if (order_key == "1") {
        sw.kind_ = Kind::One;
        return sw;
    }
    if (order_key == "2") {
        if (model.diag_vols) {
            sw.kind_ = Kind::Diag;
            sw.vols_ = *model.diag_vols;
        } else {
            sw.kind_ = Kind::Factored;
        }
        return sw;
    }
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto it = registry().find(order_key);
    if (it == registry().end())
        throw std::invalid_argument("unknown weight order '" + order_key +
                                    "' (accepted: 1, 2, or a registered tag)");
    sw.kind_ = Kind::Plugin;
    sw.plugin_ = it->second;
    return sw;
}

double StepWeight::eval(const ModelSpec& model, std::span<const double> x,
                        std::span<const double> dW, double dt) const {
    switch (kind_) {
        case Kind::One:
            return 1.0;
        case Kind::Diag:
            // the closed form is the x-free limit of the generic contraction;
            // only an exactly singular diffusion (some x_i == 0) is an error
            for (std::size_t i = 0; i < vols_.size(); ++i) {
                if (vols_[i] * x[i] == 0.0)
                    throw EllipticityError(std::vector<double>(x.begin(), x.end()));
            }
            return weight_order2_diag(vols_, dW, dt);
        case Kind::Factored:
            return weight_order2(precompute_coeffs(model, x), dW, dt);
        case Kind::Plugin:
            return plugin_(model, x, dW, dt);
    }
    return 1.0;
}

}  // namespace wamc

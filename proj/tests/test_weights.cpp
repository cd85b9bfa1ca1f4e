#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "wamc/weights.hpp"

using namespace wamc;
using testsupport::make_constant_model;
using testsupport::make_poly_model;
using testsupport::TestRng;

TEST_CASE("order-1 weight is identically one") {
    TestRng rng(3);
    CHECK(weight_order1({}, {}, 1.0) == 1.0);
    std::vector<double> x(100), dw(100);
    for (int i = 0; i < 100; ++i) {
        x[i] = rng.uniform(-5.0, 5.0);
        dw[i] = rng.normal();
    }
    CHECK(weight_order1(x, dw, 0.01) == 1.0);
    CHECK(weight_order1(std::vector<double>{0.0}, std::vector<double>{0.0}, 2.0) == 1.0);
}

TEST_CASE("coefficients vanish for constant-coefficient models") {
    const ModelSpec m = make_constant_model(3, 0.5, 1.1, 0.2);
    const std::vector<double> x{0.1, 0.2, 0.3};
    const WeightCoeffs coeffs = precompute_coeffs(m, x);
    CHECK(coeffs.blocks.empty());
    CHECK(coeffs.state == x);
}

TEST_CASE("coefficients of 1-D Black-Scholes collapse to the volatility") {
    const ModelSpec m = black_scholes_model(1, 0.2);
    const std::vector<double> x{100.0};
    const WeightCoeffs coeffs = precompute_coeffs(m, x);
    REQUIRE(coeffs.blocks.size() == 1);
    CHECK(coeffs.blocks[0].i1 == 1);
    CHECK(coeffs.blocks[0].i2 == 1);
    REQUIRE(coeffs.blocks[0].entries.size() == 1);
    CHECK(coeffs.blocks[0].entries[0].i3 == 1);
    CHECK(coeffs.blocks[0].entries[0].b == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(coeffs.inv_sigma.at(0, 0) == doctest::Approx(1.0 / 20.0));
}

TEST_CASE("diagonal d=2 model produces only B^1_{1,1} and B^2_{2,2}") {
    const ModelSpec m = black_scholes_model(2, std::vector<double>{0.2, 0.35});
    const WeightCoeffs coeffs = precompute_coeffs(m, std::vector<double>{100.0, 80.0});
    REQUIRE(coeffs.blocks.size() == 2);
    for (const auto& block : coeffs.blocks) {
        CHECK(block.i1 == block.i2);
        REQUIRE(block.entries.size() == 1);
        CHECK(block.entries[0].i3 == block.i1);
        const double vol = block.i1 == 1 ? 0.2 : 0.35;
        CHECK(block.entries[0].b == doctest::Approx(vol).epsilon(1e-14));
    }
}

TEST_CASE("precompute is pure: same state, same coefficients") {
    const ModelSpec m = make_poly_model(2, 4242);
    const std::vector<double> x{0.2, -0.3};
    const WeightCoeffs a = precompute_coeffs(m, x);
    const WeightCoeffs b = precompute_coeffs(m, x);
    REQUIRE(a.blocks.size() == b.blocks.size());
    for (std::size_t i = 0; i < a.blocks.size(); ++i) {
        CHECK(a.blocks[i].i1 == b.blocks[i].i1);
        CHECK(a.blocks[i].i2 == b.blocks[i].i2);
        REQUIRE(a.blocks[i].entries.size() == b.blocks[i].entries.size());
        for (std::size_t e = 0; e < a.blocks[i].entries.size(); ++e)
            CHECK(a.blocks[i].entries[e].b == b.blocks[i].entries[e].b);
    }
}

TEST_CASE("order-2 weight fixtures for 1-D Black-Scholes") {
    const ModelSpec m = black_scholes_model(1, 0.2);
    const std::vector<double> x{100.0};
    const WeightCoeffs coeffs = precompute_coeffs(m, x);
    // M = 1 + (sigma/2dt)(W^3 - 3 dt W) + (sigma^2/4)(W^2 - dt) at dt=1, W=1:
    // 1 + 0.1*(1-3) + 0.01*(1-1) = 0.8
    const std::vector<double> w1{1.0};
    CHECK(weight_order2(coeffs, w1, 1.0) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(weight_order2_naive(m, x, w1, 1.0) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(weight_order2_diag(std::vector<double>{0.2}, w1, 1.0) ==
          doctest::Approx(0.8).epsilon(1e-14));
    // at W = 0 the odd monomials drop but the quadratic keeps its
    // compensator: M(0) = 1 - sigma^2 dt / 4 (unit mean holds in expectation,
    // not pointwise)
    const std::vector<double> w0{0.0};
    CHECK(weight_order2(coeffs, w0, 1.0) == doctest::Approx(0.99).epsilon(1e-14));
    CHECK(weight_order2_naive(m, x, w0, 1.0) == doctest::Approx(0.99).epsilon(1e-14));
}

TEST_CASE("constant-coefficient model gives unit weight for any increment") {
    const ModelSpec m = make_constant_model(2, 0.3, 1.4, 0.3);
    const WeightCoeffs coeffs = precompute_coeffs(m, std::vector<double>{0.0, 0.0});
    TestRng rng(8);
    for (int it = 0; it < 50; ++it) {
        const std::vector<double> dw{rng.normal(), rng.normal()};
        CHECK(weight_order2(coeffs, dw, 0.5) == 1.0);
        CHECK(weight_order2_naive(m, std::vector<double>{0.0, 0.0}, dw, 0.5) == 1.0);
    }
}

TEST_CASE("factored evaluator equals the naive transcription on random models") {
    int checked = 0;
    for (int d = 1; d <= 3; ++d) {
        for (int rep = 0; rep < 40; ++rep) {
            const ModelSpec m = make_poly_model(d, 10000 + d * 1000 + rep);
            TestRng rng(20000 + d * 1000 + rep);
            std::vector<double> x(d), dw(d);
            for (auto& v : x) v = rng.uniform(-0.5, 0.5);
            for (auto& v : dw) v = rng.normal() * 0.7;
            const double dt = rng.uniform(0.1, 1.5);
            const WeightCoeffs coeffs = precompute_coeffs(m, x);
            const double fast = weight_order2(coeffs, dw, dt);
            const double naive = weight_order2_naive(m, x, dw, dt);
            CHECK(std::fabs(fast - naive) <= 1e-12 * (1.0 + std::fabs(naive)));
            ++checked;
        }
    }
    CHECK(checked == 120);
}

TEST_CASE("diagonal shortcut equals the generic factored route") {
    const std::vector<double> vols{0.2, 0.45, 0.31};
    const ModelSpec m = black_scholes_model(3, vols);
    TestRng rng(99);
    for (int it = 0; it < 50; ++it) {
        std::vector<double> x{rng.uniform(50.0, 150.0), rng.uniform(50.0, 150.0),
                              rng.uniform(50.0, 150.0)};
        std::vector<double> dw{rng.normal(), rng.normal(), rng.normal()};
        const double dt = rng.uniform(0.1, 2.0);
        const WeightCoeffs coeffs = precompute_coeffs(m, x);
        CHECK(weight_order2(coeffs, dw, dt) ==
              doctest::Approx(weight_order2_diag(vols, dw, dt)).epsilon(1e-13));
    }
}

TEST_CASE("singular diffusion raises an ellipticity error carrying the state") {
    const ModelSpec m = black_scholes_model(2, 0.2);
    const std::vector<double> x{100.0, 0.0};
    CHECK_THROWS_AS(precompute_coeffs(m, x), EllipticityError);
    CHECK_THROWS_AS(weight_order2_naive(m, x, std::vector<double>{0.1, 0.1}, 0.5),
                    EllipticityError);
}

TEST_CASE("weight registry resolves plug-ins and rejects unknown orders") {
    const ModelSpec m = black_scholes_model(1, 0.2);
    CHECK_THROWS_AS(StepWeight::make(m, "3"), std::invalid_argument);
    CHECK_FALSE(weight_registered("3"));

    register_weight("test-order-3",
                    [](const ModelSpec&, std::span<const double>, std::span<const double> dw,
                       double) { return 1.0 + 0.5 * dw[0]; });
    CHECK(weight_registered("test-order-3"));
    const StepWeight sw = StepWeight::make(m, "test-order-3");
    const std::vector<double> x{100.0}, dw{0.2};
    CHECK(sw.eval(m, x, dw, 1.0) == doctest::Approx(1.1));

    CHECK_THROWS_AS(register_weight("1", {}), std::invalid_argument);
    CHECK_THROWS_AS(register_weight("2", {}), std::invalid_argument);
}

TEST_CASE("StepWeight order keys") {
    const ModelSpec diag = black_scholes_model(2, 0.2);
    const StepWeight one = StepWeight::make(diag, "1");
    CHECK(one.is_identity());
    const StepWeight two = StepWeight::make(diag, "2");
    CHECK_FALSE(two.is_identity());
    const std::vector<double> x{100.0, 100.0}, dw{0.3, -0.4};
    // diagonal shortcut and the per-step factored path agree
    ModelSpec generic = diag;
    generic.diag_vols.reset();
    const StepWeight two_generic = StepWeight::make(generic, "2");
    CHECK(two.eval(diag, x, dw, 0.5) ==
          doctest::Approx(two_generic.eval(generic, x, dw, 0.5)).epsilon(1e-13));
}

#include <cmath>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "wamc/numeric.hpp"

using namespace wamc;

TEST_CASE("pairwise sum matches plain summation") {
    testsupport::TestRng rng(11);
    std::vector<double> v(1037);
    long double plain = 0.0;
    for (auto& x : v) {
        x = rng.uniform(-1.0, 1.0);
        plain += x;
    }
    CHECK(pairwise_sum(v) == doctest::Approx(static_cast<double>(plain)).epsilon(1e-12));
}

TEST_CASE("mean_and_se on a known sample") {
    std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    const MeanStats s = mean_and_se(v);
    CHECK(s.mean == doctest::Approx(2.5));
    // sample variance 5/3, se = sqrt(5/12)
    CHECK(s.std_err == doctest::Approx(std::sqrt(5.0 / 12.0)));
    CHECK(s.count == 4);
}

TEST_CASE("ls_slope recovers an exact line") {
    std::vector<double> x{0.0, 1.0, 2.0, 3.0};
    std::vector<double> y{1.0, 3.0, 5.0, 7.0};
    CHECK(ls_slope(x, y) == doctest::Approx(2.0));
}

TEST_CASE("derive_seed is deterministic and salt-sensitive") {
    CHECK(derive_seed(42, 7) == derive_seed(42, 7));
    CHECK(derive_seed(42, 7) != derive_seed(42, 8));
    CHECK(derive_seed(42, 7) != derive_seed(43, 7));
    CHECK(fnv1a64("wa2") != fnv1a64("em"));
}

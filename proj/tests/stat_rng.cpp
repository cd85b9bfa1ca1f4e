// Moment and independence checks on the increment streams. Tolerances are
// 4-standard-error bands at the stated sample sizes; seeds are fixed, so
// every run evaluates the same draw.
#include <cmath>
#include <vector>

#include "doctest.h"
#include "wamc/rng.hpp"

using namespace wamc;

namespace {

struct Moments {
    double mean, var, skew, exkurt;
    std::size_t n;
};

Moments moments(std::span<const double> v) {
    long double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    for (double x : v) {
        s1 += x;
        s2 += static_cast<long double>(x) * x;
        s3 += static_cast<long double>(x) * x * x;
        s4 += static_cast<long double>(x) * x * x * x;
    }
    const long double n = static_cast<long double>(v.size());
    const long double m = s1 / n;
    const long double m2 = s2 / n - m * m;
    const long double m3 = s3 / n - 3 * m * (s2 / n) + 2 * m * m * m;
    const long double m4 =
        s4 / n - 4 * m * (s3 / n) + 6 * m * m * (s2 / n) - 3 * m * m * m * m;
    return {static_cast<double>(m), static_cast<double>(m2),
            static_cast<double>(m3 / std::pow(static_cast<double>(m2), 1.5)),
            static_cast<double>(m4 / (m2 * m2) - 3.0), v.size()};
}

}  // namespace

TEST_CASE("pooled increments match N(0, dt) through the fourth moment") {
    const double dt = 0.25;
    const IncrementBatch batch = sample_increments(2025, 0, 0, 1000000, 1, 1, dt);
    const Moments m = moments(batch.data);
    const double rn = std::sqrt(static_cast<double>(m.n));
    CHECK(std::fabs(m.mean) <= 4.0 * std::sqrt(dt) / rn);
    CHECK(std::fabs(m.var - dt) <= 4.0 * dt * std::sqrt(2.0) / rn);
    CHECK(std::fabs(m.skew) <= 4.0 * std::sqrt(6.0) / rn);
    CHECK(std::fabs(m.exkurt) <= 4.0 * std::sqrt(24.0) / rn);
}

TEST_CASE("unit-variance stream satisfies the documented bounds") {
    const IncrementBatch batch = sample_increments(7, 0, 0, 1000000, 1, 1, 1.0);
    const Moments m = moments(batch.data);
    CHECK(std::fabs(m.mean) < 4e-3);

    const IncrementBatch q = sample_increments(8, 0, 0, 1000000, 1, 1, 0.25);
    const Moments mq = moments(q.data);
    CHECK(std::fabs(mq.var - 0.25) < 0.002);
}

TEST_CASE("cross-dimension correlation is statistically zero") {
    const IncrementBatch batch = sample_increments(99, 0, 0, 500000, 1, 2, 1.0);
    long double sxy = 0;
    for (int p = 0; p < batch.meta.paths; ++p)
        sxy += static_cast<long double>(batch.at(p, 0, 0)) * batch.at(p, 0, 1);
    const double corr = static_cast<double>(sxy) / batch.meta.paths;
    CHECK(std::fabs(corr) <= 4.0 / std::sqrt(static_cast<double>(batch.meta.paths)));
}

TEST_CASE("streams from different trials are empirically independent") {
    const IncrementBatch a = sample_increments(404, 0, 0, 500000, 1, 1, 1.0);
    const IncrementBatch b = sample_increments(404, 1, 0, 500000, 1, 1, 1.0);
    long double sxy = 0;
    for (std::size_t i = 0; i < a.data.size(); ++i)
        sxy += static_cast<long double>(a.data[i]) * b.data[i];
    const double corr = static_cast<double>(sxy) / static_cast<double>(a.data.size());
    CHECK(std::fabs(corr) <= 4.0 / std::sqrt(static_cast<double>(a.data.size())));

    const IncrementBatch c = sample_increments(404, 0, 1, 500000, 1, 1, 1.0);
    long double sxz = 0;
    for (std::size_t i = 0; i < a.data.size(); ++i)
        sxz += static_cast<long double>(a.data[i]) * c.data[i];
    CHECK(std::fabs(static_cast<double>(sxz) / static_cast<double>(a.data.size())) <=
          4.0 / std::sqrt(static_cast<double>(a.data.size())));
}

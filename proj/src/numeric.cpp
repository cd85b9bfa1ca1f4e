#include "wamc/numeric.hpp"

#include <cstdlib>

namespace wamc {

namespace {

double pairwise_sum_rec(const double* p, std::size_t n) {
    if (n <= 16) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += p[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_rec(p, half) + pairwise_sum_rec(p + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> v) {
    return pairwise_sum_rec(v.data(), v.size());
}

double pairwise_mean(std::span<const double> v) {
    if (v.empty()) return 0.0;
    return pairwise_sum(v) / static_cast<double>(v.size());
}

MeanStats mean_and_se(std::span<const double> v) {
    MeanStats s;
    s.count = v.size();
    if (v.empty()) return s;
    s.mean = pairwise_mean(v);
    if (v.size() < 2) return s;
    // second pass in the same canonical order
    double ss = 0.0;
    {
        // reuse pairwise reduction over squared deviations without
        // materialising them: small fixed-size blocks keep the order stable
        const std::size_t n = v.size();
        const double mu = s.mean;
        // recursion mirrors pairwise_sum_rec
        struct Rec {
            const double* p;
            double mu;
            double run(std::size_t lo, std::size_t n) const {
                if (n <= 16) {
                    double acc = 0.0;
                    for (std::size_t i = lo; i < lo + n; ++i) {
                        const double d = p[i] - mu;
                        acc += d * d;
                    }
                    return acc;
                }
                const std::size_t half = n / 2;
                return run(lo, half) + run(lo + half, n - half);
            }
        } rec{v.data(), mu};
        ss = rec.run(0, n);
    }
    const double nd = static_cast<double>(v.size());
    const double var = ss / (nd - 1.0);
    s.std_err = std::sqrt(var / nd);
    return s;
}

double ls_slope(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    double xb = 0.0, yb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        xb += x[i];
        yb += y[i];
    }
    xb /= static_cast<double>(n);
    yb /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (x[i] - xb) * (y[i] - yb);
        den += (x[i] - xb) * (x[i] - xb);
    }
    return num / den;
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t salt) {
    std::uint64_t s = root ^ (salt * 0x9e3779b97f4a7c15ull);
    return splitmix64(s);
}

}  // namespace wamc

#pragma once

#include <span>
#include <vector>

namespace wamc {

// Small dense row-major matrix. Sized for coefficient fields (d up to a few
// hundred); not a general-purpose linear algebra type.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

    double& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
    std::span<double> row(int r) { return {a.data() + static_cast<std::size_t>(r) * cols, static_cast<std::size_t>(cols)}; }
    std::span<const double> row(int r) const { return {a.data() + static_cast<std::size_t>(r) * cols, static_cast<std::size_t>(cols)}; }
};

// LU factorisation with partial pivoting. `ok` is false when a pivot falls
// below `pivot_floor` in magnitude.
struct Lu {
    Mat lu;
    std::vector<int> perm;
    bool ok = false;
};

Lu lu_factor(Mat m, double pivot_floor);

void lu_solve(const Lu& f, std::span<const double> b, std::span<double> out);

// Inverse via LU; requires f.ok.
Mat lu_inverse(const Lu& f);

// Tests A - shift*I positive semidefinite via Cholesky (A symmetric).
bool psd_with_shift(const Mat& sym, double shift);

}  // namespace wamc

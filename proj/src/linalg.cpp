#include "wamc/linalg.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wamc {

Lu lu_factor(Mat m, double pivot_floor) {
    const int n = m.rows;
    if (n != m.cols) throw std::invalid_argument("lu_factor: matrix not square");
    Lu f;
    f.perm.resize(n);
    std::iota(f.perm.begin(), f.perm.end(), 0);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::fabs(m.at(k, k));
        for (int r = k + 1; r < n; ++r) {
            const double v = std::fabs(m.at(r, k));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (!(best > pivot_floor)) {
            f.lu = std::move(m);
            f.ok = false;
            return f;
        }
        if (piv != k) {
            for (int c = 0; c < n; ++c) std::swap(m.at(k, c), m.at(piv, c));
            std::swap(f.perm[k], f.perm[piv]);
        }
        const double inv = 1.0 / m.at(k, k);
        for (int r = k + 1; r < n; ++r) {
            const double l = m.at(r, k) * inv;
            m.at(r, k) = l;
            for (int c = k + 1; c < n; ++c) m.at(r, c) -= l * m.at(k, c);
        }
    }
    f.lu = std::move(m);
    f.ok = true;
    return f;
}

void lu_solve(const Lu& f, std::span<const double> b, std::span<double> out) {
    if (!f.ok) throw std::runtime_error("lu_solve: singular factorisation");
    const int n = f.lu.rows;
    for (int i = 0; i < n; ++i) out[i] = b[f.perm[i]];
    for (int i = 1; i < n; ++i) {
        double s = out[i];
        for (int j = 0; j < i; ++j) s -= f.lu.at(i, j) * out[j];
        out[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = out[i];
        for (int j = i + 1; j < n; ++j) s -= f.lu.at(i, j) * out[j];
        out[i] = s / f.lu.at(i, i);
    }
}

Mat lu_inverse(const Lu& f) {
    const int n = f.lu.rows;
    Mat inv(n, n);
    std::vector<double> e(n, 0.0), col(n);
    for (int c = 0; c < n; ++c) {
        e[c] = 1.0;
        lu_solve(f, e, col);
        e[c] = 0.0;
        for (int r = 0; r < n; ++r) inv.at(r, c) = col[r];
    }
    return inv;
}

bool psd_with_shift(const Mat& sym, double shift) {
    const int n = sym.rows;
    Mat l(n, n);
    // tolerance keeps exact-boundary cases (smallest eigenvalue == shift)
    // from failing on round-off
    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::fabs(sym.at(i, i)));
    const double tol = 1e-12 * std::max(1.0, scale);
    for (int j = 0; j < n; ++j) {
        double diag = sym.at(j, j) - shift;
        for (int k = 0; k < j; ++k) diag -= l.at(j, k) * l.at(j, k);
        if (diag < -tol) return false;
        diag = std::max(diag, 0.0);
        l.at(j, j) = std::sqrt(diag);
        for (int i = j + 1; i < n; ++i) {
            double s = sym.at(i, j);
            for (int k = 0; k < j; ++k) s -= l.at(i, k) * l.at(j, k);
            l.at(i, j) = l.at(j, j) > 0.0 ? s / l.at(j, j) : 0.0;
        }
    }
    return true;
}

}  // namespace wamc

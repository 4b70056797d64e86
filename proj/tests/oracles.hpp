#pragma once

// Test-only reference computations. Nothing here calls into the library's
// numerical code, so each can cross-check the production path.

#include <algorithm>
#include <array>
#include <functional>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using M3 = std::array<std::array<double, 3>, 3>;

inline double det3_cofactor(const M3& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

inline M3 inverse3_adjugate(const M3& a) {
    const double d = det3_cofactor(a);
    M3 inv{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            // cofactor C_ji, transposed into place
            const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
            const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            inv[i][j] = (a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0]) / d;
        }
    }
    return inv;
}

/// Roots of the characteristic cubic of a symmetric 3x3 matrix, descending,
/// via the trigonometric closed form evaluated in long double.
inline std::array<double, 3> symmetric_eigenvalues_cubic(const M3& m) {
    using L = long double;
    const L a00 = m[0][0], a11 = m[1][1], a22 = m[2][2];
    const L a01 = m[0][1], a02 = m[0][2], a12 = m[1][2];
    const L p1 = a01 * a01 + a02 * a02 + a12 * a12;
    const L q = (a00 + a11 + a22) / 3;
    if (p1 == 0) {
        std::array<double, 3> e = {double(a00), double(a11), double(a22)};
        std::sort(e.begin(), e.end(), std::greater<>());
        return e;
    }
    const L p2 = (a00 - q) * (a00 - q) + (a11 - q) * (a11 - q) + (a22 - q) * (a22 - q) + 2 * p1;
    const L p = std::sqrt(p2 / 6);
    const L b00 = (a00 - q) / p, b11 = (a11 - q) / p, b22 = (a22 - q) / p;
    const L b01 = a01 / p, b02 = a02 / p, b12 = a12 / p;
    const L detb = b00 * (b11 * b22 - b12 * b12) - b01 * (b01 * b22 - b12 * b02) + b02 * (b01 * b12 - b11 * b02);
    L r = detb / 2;
    r = r < -1 ? -1 : (r > 1 ? 1 : r);
    const L phi = std::acos(r) / 3;
    const L pi = std::numbers::pi_v<long double>;
    const L e1 = q + 2 * p * std::cos(phi);
    const L e3 = q + 2 * p * std::cos(phi + 2 * pi / 3);
    const L e2 = 3 * q - e1 - e3;
    return {double(e1), double(e2), double(e3)};
}

/// Random correlation matrix from a Gram matrix of random vectors.
inline M3 random_correlation(std::mt19937_64& rng, int dims = 5) {
    std::normal_distribution<double> g;
    std::vector<std::array<double, 3>> b(dims);
    for (auto& row : b) {
        for (auto& x : row) {
            x = g(rng);
        }
    }
    M3 gram{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            for (const auto& row : b) {
                gram[i][j] += row[i] * row[j];
            }
        }
    }
    M3 r{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            r[i][j] = i == j ? 1.0 : gram[i][j] / std::sqrt(gram[i][i] * gram[j][j]);
        }
    }
    return r;
}

/// Pearson r from raw sums, no centering pass.
inline double pearson_direct(const std::vector<double>& x, const std::vector<double>& y) {
    long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    const long double n = static_cast<long double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += (long double)x[i] * x[i];
        syy += (long double)y[i] * y[i];
        sxy += (long double)x[i] * y[i];
    }
    return double((n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy)));
}

/// Varimax criterion for a p x 2 loading matrix given as columns.
inline double varimax_criterion2(const std::vector<double>& c0, const std::vector<double>& c1) {
    const double p = static_cast<double>(c0.size());
    double total = 0.0;
    for (const auto* col : {&c0, &c1}) {
        double s2 = 0.0, s4 = 0.0;
        for (const double v : *col) {
            s2 += v * v;
            s4 += v * v * v * v;
        }
        total += s4 / p - (s2 / p) * (s2 / p);
    }
    return total;
}

}  // namespace oracle

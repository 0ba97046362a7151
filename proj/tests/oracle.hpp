#pragma once

// Test-only reference computations. Nothing here calls into the library's
// inference path; the rule consequents are transcribed separately and
// the centroid uses continuous midpoint quadrature, not uniform samples.

#include <algorithm>
#include <array>
#include <cmath>
#include <string_view>

namespace oracle {

// The 25 model rules, in file order: (kd term, ks term) -> ka term,
// terms indexed 0 = Very Small .. 4 = Very Big.
inline constexpr std::array<std::array<int, 3>, 25> kRules = {{
    {0, 0, 0}, {0, 1, 0}, {0, 2, 0}, {0, 3, 0}, {0, 4, 0},  //
    {1, 0, 0}, {1, 1, 1}, {1, 2, 1}, {1, 3, 1}, {1, 4, 1},  //
    {2, 0, 0}, {2, 1, 0}, {2, 2, 2}, {2, 3, 2}, {2, 4, 2},  //
    {3, 0, 0}, {3, 1, 1}, {3, 2, 2}, {3, 3, 3}, {3, 4, 3},  //
    {4, 0, 0}, {4, 1, 1}, {4, 2, 2}, {4, 3, 3}, {4, 4, 4},
}};

inline double centre(int term) { return 0.25 * term; }

// Hat of half-width 1/4 around the term centre, restricted to [0, 1].
inline double hat(double x, int term) {
    if (x < 0.0 || x > 1.0) return 0.0;
    return std::max(0.0, 1.0 - std::abs(x - centre(term)) * 4.0);
}

enum class Operators { larsen, clip };  // product/scale or min/clip

// Continuous centroid of the model's Mamdani output under `ops`.
inline double table_one(double kd, double ks, Operators ops = Operators::larsen, int cells = 200000) {
    std::array<double, 5> height{};
    for (const auto& row : kRules) {
        const double a = hat(kd, row[0]);
        const double b = hat(ks, row[1]);
        const double s = ops == Operators::larsen ? a * b : std::min(a, b);
        height[row[2]] = std::max(height[row[2]], s);
    }
    double num = 0.0;
    double den = 0.0;
    const double h = 1.0 / cells;
    for (int k = 0; k < cells; ++k) {
        const double x = (k + 0.5) * h;
        double mu = 0.0;
        for (int t = 0; t < 5; ++t) {
            if (height[t] <= 0.0) continue;
            const double shaped = ops == Operators::larsen ? height[t] * hat(x, t) : std::min(height[t], hat(x, t));
            mu = std::max(mu, shaped);
        }
        num += x * mu;
        den += mu;
    }
    return num / den;
}

// Closed-form centroid of a fully fired output term: 1/12 and 11/12 for the
// half-triangles at the edges, the centre otherwise.
inline double term_centroid(int term) {
    if (term == 0) return 0.25 / 3.0;
    if (term == 4) return 1.0 - 0.25 / 3.0;
    return centre(term);
}

// Bilinear interpolation of a kd-major grid on sorted axes.
template <class Grid>
double bilinear(const Grid& g, double kd, double ks) {
    auto locate = [](const auto& axis, double v) {
        auto it = std::upper_bound(axis.begin(), axis.end(), v);
        std::size_t i = it == axis.begin() ? 0 : static_cast<std::size_t>(it - axis.begin()) - 1;
        return std::min(i, axis.size() - 2);
    };
    const std::size_t i = locate(g.kd_samples, kd);
    const std::size_t j = locate(g.ks_samples, ks);
    const double u = (kd - g.kd_samples[i]) / (g.kd_samples[i + 1] - g.kd_samples[i]);
    const double v = (ks - g.ks_samples[j]) / (g.ks_samples[j + 1] - g.ks_samples[j]);
    return (1 - u) * (1 - v) * g.at(i, j) + u * (1 - v) * g.at(i + 1, j) + u * v * g.at(i + 1, j + 1) +
           (1 - u) * v * g.at(i, j + 1);
}

// R^2 of the least-squares line through (xs, ys).
template <class Xs, class Ys>
double r_squared(const Xs& xs, const Ys& ys) {
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    return sxy * sxy / (sxx * syy);
}

}  // namespace oracle

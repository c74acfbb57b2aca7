#pragma once

// Reference implementations used only by tests. None of them call into the production
// solvers, classifiers or renderer; they work on plain std::vector data.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
/// Column-major: cols[j][i] is row i of column j.
using Cols = std::vector<Vec>;

inline double dot(const Vec& a, const Vec& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

/// Gaussian elimination with partial pivoting on a dense row-major system.
inline Vec dense_solve(std::vector<Vec> a, Vec b)
{
    const std::size_t n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a[i][k]) > std::abs(a[piv][k]))
                piv = i;
        std::swap(a[k], a[piv]);
        std::swap(b[k], b[piv]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j)
                a[i][j] -= f * a[k][j];
            b[i] -= f * b[k];
        }
    }
    Vec x(n);
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t j = k + 1; j < n; ++j)
            s -= a[k][j] * x[j];
        x[k] = s / a[k][k];
    }
    return x;
}

/// (X^T X + mu I)^{-1} X^T y by explicit normal equations and dense elimination.
inline Vec ridge(const Cols& x, const Vec& y, double mu)
{
    const std::size_t n = x.size();
    std::vector<Vec> a(n, Vec(n));
    Vec rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            a[i][j] = dot(x[i], x[j]) + (i == j ? mu : 0.0);
        rhs[i] = dot(x[i], y);
    }
    return dense_solve(std::move(a), std::move(rhs));
}

inline double lasso_objective(const Cols& x, const Vec& y, const Vec& alpha, double lambda)
{
    Vec r = y;
    for (std::size_t j = 0; j < x.size(); ++j)
        for (std::size_t i = 0; i < y.size(); ++i)
            r[i] -= alpha[j] * x[j][i];
    double l1 = 0.0;
    for (double a : alpha)
        l1 += std::abs(a);
    return 0.5 * dot(r, r) + lambda * l1;
}

/// Cyclic coordinate descent for 0.5*||y - X a||^2 + lambda*||a||_1.
inline Vec lasso_coordinate_descent(const Cols& x, const Vec& y, double lambda,
                                    int sweeps = 200000, double tol = 1e-15)
{
    const std::size_t n = x.size();
    Vec alpha(n, 0.0);
    Vec r = y;
    Vec sq(n);
    for (std::size_t j = 0; j < n; ++j)
        sq[j] = dot(x[j], x[j]);
    for (int s = 0; s < sweeps; ++s) {
        double max_delta = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (sq[j] == 0.0)
                continue;
            const double rho = dot(x[j], r) + sq[j] * alpha[j];
            const double mag = std::abs(rho) - lambda;
            const double next = mag > 0.0 ? std::copysign(mag, rho) / sq[j] : 0.0;
            const double delta = next - alpha[j];
            if (delta != 0.0) {
                for (std::size_t i = 0; i < y.size(); ++i)
                    r[i] -= delta * x[j][i];
                alpha[j] = next;
            }
            max_delta = std::max(max_delta, std::abs(delta));
        }
        if (max_delta < tol)
            break;
    }
    return alpha;
}

/// Per-class reconstruction by explicit per-column accumulation.
inline std::map<std::string, Vec> accumulate(const Cols& x, const std::vector<std::string>& labels,
                                             const Vec& alpha)
{
    std::map<std::string, Vec> out;
    for (std::size_t j = 0; j < x.size(); ++j) {
        auto& c = out.try_emplace(labels[j], Vec(x[j].size(), 0.0)).first->second;
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] += alpha[j] * x[j][i];
    }
    return out;
}

/// Ridge coefficients, class reconstructions, Euclidean errors, first-smallest label.
inline std::string crc_label(const Cols& x, const std::vector<std::string>& labels, const Vec& y,
                             double mu)
{
    const Vec alpha = ridge(x, y, mu);
    std::string best;
    double best_err = std::numeric_limits<double>::infinity();
    for (const auto& [label, c] : accumulate(x, labels, alpha)) {
        double e = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i)
            e += (y[i] - c[i]) * (y[i] - c[i]);
        e = std::sqrt(e);
        if (e < best_err) {
            best_err = e;
            best = label;
        }
    }
    return best;
}

/// Per-class errors after a ridge solve, keyed by label.
inline std::map<std::string, double> crc_errors(const Cols& x, const std::vector<std::string>& labels,
                                                const Vec& y, double mu)
{
    const Vec alpha = ridge(x, y, mu);
    std::map<std::string, double> out;
    for (const auto& [label, c] : accumulate(x, labels, alpha)) {
        double e = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i)
            e += (y[i] - c[i]) * (y[i] - c[i]);
        out[label] = std::sqrt(e);
    }
    return out;
}

/// Removes the worst class `rounds` times (ties: later label), then labels by smallest error.
inline std::string crc_eliminate(Cols x, std::vector<std::string> labels, const Vec& y, double mu,
                                 std::size_t rounds)
{
    for (std::size_t r = 0; r < rounds; ++r) {
        const auto errs = crc_errors(x, labels, y, mu);
        std::string worst;
        double worst_err = -1.0;
        for (const auto& [label, e] : errs)
            if (e >= worst_err) {
                worst_err = e;
                worst = label;
            }
        Cols kx;
        std::vector<std::string> kl;
        for (std::size_t j = 0; j < x.size(); ++j)
            if (labels[j] != worst) {
                kx.push_back(x[j]);
                kl.push_back(labels[j]);
            }
        x = std::move(kx);
        labels = std::move(kl);
    }
    std::string best;
    double best_err = std::numeric_limits<double>::infinity();
    for (const auto& [label, e] : crc_errors(x, labels, y, mu))
        if (e < best_err) {
            best_err = e;
            best = label;
        }
    return best;
}

inline Vec normalized(Vec v)
{
    const double n = std::sqrt(dot(v, v));
    for (double& e : v)
        e /= n;
    return v;
}

/// One textured point.
struct Point {
    double x, y, z, gray;
};

/// Point-at-a-time pinhole splatter with an explicit 3x3 rotation (row-major).
inline Vec scalar_render(const std::vector<Point>& pts, const double (&r)[3][3], const double (&t)[3],
                         double f, double ox, double oy, int w, int h)
{
    Vec img(static_cast<std::size_t>(w) * h, 0.0);
    Vec depth(img.size(), std::numeric_limits<double>::infinity());
    for (const auto& p : pts) {
        const double vx = r[0][0] * p.x + r[0][1] * p.y + r[0][2] * p.z + t[0];
        const double vy = r[1][0] * p.x + r[1][1] * p.y + r[1][2] * p.z + t[1];
        const double vz = r[2][0] * p.x + r[2][1] * p.y + r[2][2] * p.z + t[2];
        if (!(vz > 0.0))
            continue;
        const double sx = ox + f * vx / vz;
        const double sy = oy - f * vy / vz;
        const double col = std::floor(sx + 0.5);
        const double row = std::floor(sy + 0.5);
        if (col < 0 || row < 0 || col >= w || row >= h)
            continue;
        const auto idx = static_cast<std::size_t>(row) * w + static_cast<std::size_t>(col);
        if (vz < depth[idx]) {
            depth[idx] = vz;
            img[idx] = p.gray;
        }
    }
    return img;
}

} // namespace oracle

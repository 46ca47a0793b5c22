#include "wgm/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wgm::tridiag {

namespace {

void check_shape(std::span<const double> diag, std::span<const double> off) {
    if (diag.empty()) throw std::invalid_argument("tridiag: empty matrix");
    if (off.size() + 1 != diag.size())
        throw std::invalid_argument("tridiag: off-diagonal size must be n-1");
}

// LU factorization of (T - shift I) with partial pivoting between adjacent
// rows; solves in place. Layout after factorization: dl = multipliers,
// d = U diagonal, du/du2 = first/second U superdiagonals.
struct PivotedLu {
    std::vector<double> dl, d, du, du2;
    std::vector<int> swapped;

    PivotedLu(std::span<const double> diag, std::span<const double> off, double shift) {
        const std::size_t n = diag.size();
        d.resize(n);
        du.assign(n > 1 ? n - 1 : 0, 0.0);
        dl.assign(n > 1 ? n - 1 : 0, 0.0);
        du2.assign(n > 2 ? n - 2 : 0, 0.0);
        swapped.assign(n > 1 ? n - 1 : 0, 0);
        for (std::size_t i = 0; i < n; ++i) d[i] = diag[i] - shift;
        for (std::size_t i = 0; i + 1 < n; ++i) { dl[i] = off[i]; du[i] = off[i]; }
        constexpr double tiny = std::numeric_limits<double>::min() * 16.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(d[i]) >= std::abs(dl[i])) {
                if (std::abs(d[i]) < tiny) d[i] = d[i] < 0 ? -tiny : tiny;
                const double m = dl[i] / d[i];
                dl[i] = m;
                d[i + 1] -= m * du[i];
            } else {
                // swap rows i, i+1
                swapped[i] = 1;
                const double m = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = m;
                const double tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - m * d[i + 1];
                if (i + 2 < n) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -m * du[i + 1];
                }
            }
        }
        if (std::abs(d[n - 1]) < tiny) d[n - 1] = d[n - 1] < 0 ? -tiny : tiny;
    }

    void solve(std::vector<double>& b) const {
        const std::size_t n = d.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (swapped[i]) std::swap(b[i], b[i + 1]);
            b[i + 1] -= dl[i] * b[i];
        }
        b[n - 1] /= d[n - 1];
        if (n >= 2) {
            const std::size_t i = n - 2;
            b[i] = (b[i] - du[i] * b[i + 1]) / d[i];
        }
        for (std::size_t k = n; k-- > 2;) {
            const std::size_t i = k - 2;
            double v = b[i] - du[i] * b[i + 1];
            if (i < du2.size()) v -= du2[i] * b[i + 2];
            b[i] = v / d[i];
        }
    }
};

}  // namespace

int count_below(std::span<const double> diag, std::span<const double> off, double x) {
    check_shape(diag, off);
    // Sturm count: negative pivots of the shifted LDL^T recurrence
    int count = 0;
    double t = diag[0] - x;
    if (t < 0.0) ++count;
    constexpr double tiny = std::numeric_limits<double>::min() * 4.0;
    for (std::size_t i = 1; i < diag.size(); ++i) {
        if (t == 0.0) t = tiny;
        t = (diag[i] - x) - off[i - 1] * off[i - 1] / t;
        if (t < 0.0) ++count;
    }
    return count;
}

std::pair<double, double> spectrum_bounds(std::span<const double> diag,
                                          std::span<const double> off) {
    check_shape(diag, off);
    const std::size_t n = diag.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        const double left = i > 0 ? std::abs(off[i - 1]) : 0.0;
        const double right = i + 1 < n ? std::abs(off[i]) : 0.0;
        lo = std::min(lo, diag[i] - left - right);
        hi = std::max(hi, diag[i] + left + right);
    }
    return {lo, hi};
}

namespace {

// bisect for the smallest x with count_below(x) >= k+1
double bisect_index(std::span<const double> diag, std::span<const double> off, int k,
                    double lo, double hi, double rel_tol) {
    const double scale = std::max({std::abs(lo), std::abs(hi), 1e-300});
    while (hi - lo > rel_tol * scale) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (count_below(diag, off, mid) >= k + 1) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double eigenvalue_by_index(std::span<const double> diag, std::span<const double> off,
                           int k, double rel_tol) {
    check_shape(diag, off);
    if (k < 0 || static_cast<std::size_t>(k) >= diag.size())
        throw std::invalid_argument("eigenvalue_by_index: index out of range");
    auto [lo, hi] = spectrum_bounds(diag, off);
    const double pad = 1e-12 * (std::abs(lo) + std::abs(hi) + 1.0);
    return bisect_index(diag, off, k, lo - pad, hi + pad, rel_tol);
}

std::vector<double> eigenvalues_in_window(std::span<const double> diag,
                                          std::span<const double> off, double lo,
                                          double hi, int max_count, double rel_tol) {
    check_shape(diag, off);
    if (!(lo < hi)) throw std::invalid_argument("eigenvalues_in_window: lo < hi violated");
    const int k_lo = count_below(diag, off, lo);
    const int k_hi = count_below(diag, off, hi);
    std::vector<double> out;
    auto bounds = spectrum_bounds(diag, off);
    for (int k = k_lo; k < k_hi && static_cast<int>(out.size()) < max_count; ++k)
        out.push_back(bisect_index(diag, off, k, std::max(lo, bounds.first - 1.0),
                                   std::min(hi, bounds.second + 1.0), rel_tol));
    return out;
}

std::vector<double> eigenvector(std::span<const double> diag, std::span<const double> off,
                                double lambda) {
    check_shape(diag, off);
    const std::size_t n = diag.size();
    // deterministic start vector with no symmetry the iteration could preserve
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = 1.0 + 0.37 * std::sin(2.7 * static_cast<double>(i + 1));
    const PivotedLu lu(diag, off, lambda);
    double norm = 0.0;
    for (int iter = 0; iter < 4; ++iter) {
        lu.solve(v);
        norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw std::runtime_error("inverse iteration: solve degenerated");
        for (double& x : v) x /= norm;
        // residual small relative to the matrix scale means converged
        double res = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double r = (diag[i] - lambda) * v[i];
            if (i > 0) r += off[i - 1] * v[i - 1];
            if (i + 1 < n) r += off[i] * v[i + 1];
            res += r * r;
            scale = std::max(scale, std::abs(diag[i]));
        }
        if (std::sqrt(res) <= 1e-13 * (scale + std::abs(lambda))) break;
    }
    return v;
}

}  // namespace wgm::tridiag

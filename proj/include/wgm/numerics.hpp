#pragma once

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

// Small numerics toolbox shared by all modules: fixed-order Gauss-Legendre
// panels with adaptive bisection, golden-section minimization, bisection root
// finding, least-squares fits, and a monotone cubic interpolant.

namespace wgm::num {

namespace detail {
// 16-point Gauss-Legendre abscissae/weights on [-1, 1].
inline constexpr std::array<double, 8> kGlNodes = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
inline constexpr std::array<double, 8> kGlWeights = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};
}  // namespace detail

template <class F>
double gauss16(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
        const double dx = half * detail::kGlNodes[i];
        acc += detail::kGlWeights[i] * (f(mid - dx) + f(mid + dx));
    }
    return acc * half;
}

template <class F>
double integrate_impl(F&& f, double a, double b, double abs_tol, double whole, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gauss16(f, a, mid);
    const double right = gauss16(f, mid, b);
    const double err = std::abs(left + right - whole);
    if (err <= abs_tol || depth >= 40) return left + right;
    return integrate_impl(f, a, mid, 0.5 * abs_tol, left, depth + 1) +
           integrate_impl(f, mid, b, 0.5 * abs_tol, right, depth + 1);
}

/// Adaptive Gauss-Legendre integration to an absolute tolerance.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol) {
    if (a == b) return 0.0;
    // accept at half the requested tolerance: the GL error estimate is itself approximate
    return integrate_impl(f, a, b, 0.5 * abs_tol, gauss16(f, a, b), 0);
}

/// Golden-section minimization on [a, b]; returns the argmin to relative tolerance.
template <class F>
double golden_min(F&& f, double a, double b, double rel_tol) {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    while (b - a > rel_tol * scale) {
        if (f1 <= f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

/// Bisection root of f on [a, b]; f(a) and f(b) must differ in sign.
template <class F>
double bisect_root(F&& f, double a, double b, double rel_tol) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0) == (fb > 0))
        throw std::invalid_argument("bisect_root: no sign change on bracket");
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    while (b - a > rel_tol * scale) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;  // spacing below representable
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (fa > 0)) { a = mid; fa = fm; }
        else { b = mid; fb = fm; }
    }
    return 0.5 * (a + b);
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct QuadFit {
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;  // c0 + c1 x + c2 x^2
    double rmse = 0.0;
};

QuadFit fit_quadratic(std::span<const double> x, std::span<const double> y);

/// Fritsch-Carlson monotone cubic Hermite interpolant. Preserves the
/// monotonicity of the sampled data on each interval.
class Pchip {
public:
    Pchip(std::vector<double> x, std::vector<double> y);

    double value(double s) const;
    double derivative(double s) const;
    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }

private:
    std::size_t interval(double s) const;
    std::vector<double> x_, y_, m_;
};

/// Index-parallel loop over [0, count); results keyed by index stay
/// deterministic regardless of scheduling. Serial when threads <= 1.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const std::size_t n_workers =
        std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    pool.reserve(n_workers);
    for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

/// SplitMix64: tiny deterministic generator for seeded invariant checks.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    /// uniform in [a, b)
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

private:
    std::uint64_t state_;
};

}  // namespace wgm::num

#include "wgm/quasimode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "wgm/numerics.hpp"

namespace wgm {

namespace {

// plateau geometry of the bump: support [-7/8, -1/8], flat on [-5/8, -3/8]
constexpr double kSuppLo = -0.875;
constexpr double kRampUpHi = -0.625;
constexpr double kRampDownLo = -0.375;
constexpr double kSuppHi = -0.125;
constexpr double kRampWidth = 0.25;

struct Sm {  // value and two derivatives of the exponential smoothstep pieces
    double v = 0.0, d1 = 0.0, d2 = 0.0;
};

Sm gfun(double t) {
    if (t <= 0.0) return {};
    const double v = std::exp(-1.0 / t);
    const double inv2 = 1.0 / (t * t);
    return {v, v * inv2, v * (inv2 * inv2 - 2.0 * inv2 / t)};
}

// sigma(t) = g(t) / (g(t) + g(1-t)): 0 at t<=0, 1 at t>=1, C^inf
Sm smoothstep(double t) {
    if (t <= 0.0) return {};
    if (t >= 1.0) return {1.0, 0.0, 0.0};
    const Sm a = gfun(t);
    const Sm braw = gfun(1.0 - t);
    const Sm b{braw.v, -braw.d1, braw.d2};
    const double den = a.v + b.v;
    const double dd = a.d1 + b.d1;
    const double dd2 = a.d2 + b.d2;
    Sm s;
    s.v = a.v / den;
    s.d1 = (a.d1 * den - a.v * dd) / (den * den);
    s.d2 = ((a.d2 * den - a.v * dd2) * den - 2.0 * dd * (a.d1 * den - a.v * dd)) /
           (den * den * den);
    return s;
}

Sm bump_all(double x) {
    if (x <= kSuppLo || x >= kSuppHi) return {};
    if (x >= kRampUpHi && x <= kRampDownLo) return {1.0, 0.0, 0.0};
    if (x < kRampUpHi) {
        const Sm s = smoothstep((x - kSuppLo) / kRampWidth);
        return {s.v, s.d1 / kRampWidth, s.d2 / (kRampWidth * kRampWidth)};
    }
    const Sm s = smoothstep((kSuppHi - x) / kRampWidth);
    return {s.v, -s.d1 / kRampWidth, s.d2 / (kRampWidth * kRampWidth)};
}

}  // namespace

double bump(double x) { return bump_all(x).v; }
double bump_deriv1(double x) { return bump_all(x).d1; }
double bump_deriv2(double x) { return bump_all(x).d2; }

double bump_l2_squared() {
    static const double value = num::integrate(
        [](double x) {
            const double b = bump(x);
            return b * b;
        },
        kSuppLo, kSuppHi, 1e-13);
    return value;
}

double Quasimode::value(double r) const {
    const double scale = std::pow(h, -2.0 / 3.0);
    return std::pow(h, -1.0 / 3.0) * bump(scale * (r - rho_E));
}

double Quasimode::deriv1(double r) const {
    const double scale = std::pow(h, -2.0 / 3.0);
    return bump_deriv1(scale * (r - rho_E)) / h;  // h^{-1/3} * h^{-2/3}
}

double Quasimode::deriv2(double r) const {
    const double scale = std::pow(h, -2.0 / 3.0);
    return std::pow(h, -5.0 / 3.0) * bump_deriv2(scale * (r - rho_E));
}

Quasimode make_quasimode(const EffectivePotential& pot, double E, double h) {
    if (!pot.admissible)
        throw std::invalid_argument("quasimode: potential is not admissible");
    if (!(E >= pot.E0 && E <= pot.E0 + 0.5 * pot.eta0))
        throw std::invalid_argument("quasimode: E outside the experiment window [E0, E0+eta0/2]");
    if (!(h > 0.0)) throw std::invalid_argument("quasimode: h must be positive");
    const double rho = turning_point(pot, E);
    const double width = std::pow(h, 2.0 / 3.0);
    const double s_min = pot.domain.s_min();
    if (!(rho - width > s_min)) {
        const double h0 = std::pow(rho - s_min, 1.5);
        std::ostringstream os;
        os << "quasimode: support violation, need h < h_0 = " << h0;
        throw std::invalid_argument(os.str());
    }
    Quasimode q;
    q.E = E;
    q.h = h;
    q.rho_E = rho;
    q.support_lo = rho + kSuppLo * width;
    q.support_hi = rho + kSuppHi * width;
    return q;
}

std::vector<double> build_quasimode(const EffectivePotential& pot, double E, double h,
                                    const RadialGrid& grid) {
    const Quasimode q = make_quasimode(pot, E, h);
    std::size_t inside = 0;
    for (double s : grid.nodes)
        if (s > q.support_lo && s < q.support_hi) ++inside;
    if (inside < 32) {
        std::ostringstream os;
        os << "build_quasimode: grid resolves the h^{2/3} scale with only " << inside
           << " nodes (need >= 32)";
        throw std::invalid_argument(os.str());
    }
    std::vector<double> samples(grid.nodes.size());
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) samples[i] = q.value(grid.nodes[i]);
    return samples;
}

QuasimodeResidual quasimode_residual(const DomainSpec& spec, double E, double h) {
    const EffectivePotential pot = effective_potential(spec);
    const Quasimode q = make_quasimode(pot, E, h);
    const bool const_coeff = spec.coeff.piecewise_constant();

    auto defect = [&](double r) {
        const auto [radius, radius_d] = spec.profile.eval(r);
        const double c = spec.coeff.minus(r);  // support lies in the minus region
        double c_d = 0.0;
        if (!const_coeff) {
            const double eps = 1e-6 * (pot.domain.s_max() - pot.domain.s_min());
            c_d = (spec.coeff.minus(r + eps) - spec.coeff.minus(r - eps)) / (2.0 * eps);
        }
        const double v = c / (radius * radius);
        // -(h^2/R)(c R f')' + (V - E) f, expanded with analytic f derivatives
        return -h * h * (c * q.deriv2(r) + (c * radius_d / radius + c_d) * q.deriv1(r)) +
               (v - E) * q.value(r);
    };

    const double lo = q.support_lo, hi = q.support_hi;
    const double tol = 1e-13;
    QuasimodeResidual out;
    const double num_w = num::integrate(
        [&](double r) {
            const double d = defect(r);
            return d * d * spec.profile.radius(r);
        },
        lo, hi, tol);
    const double num_p = num::integrate(
        [&](double r) {
            const double d = defect(r);
            return d * d;
        },
        lo, hi, tol);
    const double den_w = num::integrate(
        [&](double r) {
            const double f = q.value(r);
            return f * f * spec.profile.radius(r);
        },
        lo, hi, tol);
    const double den_p = num::integrate(
        [&](double r) {
            const double f = q.value(r);
            return f * f;
        },
        lo, hi, tol);
    out.weighted = std::sqrt(num_w / den_w);
    out.plain = std::sqrt(num_p / den_p);
    out.norm_plain = std::sqrt(den_p);
    return out;
}

QuasimodeReport residual_scaling(const DomainSpec& spec, double E,
                                 std::span<const double> h_list) {
    if (h_list.size() < 2)
        throw std::invalid_argument("residual_scaling: need at least two h values");
    for (std::size_t i = 1; i < h_list.size(); ++i)
        if (!(h_list[i] < h_list[i - 1]))
            throw std::invalid_argument("residual_scaling: h list must be decreasing");

    QuasimodeReport report;
    report.E = E;
    report.support_ok = true;
    std::vector<double> log_h, log_res;
    for (double h : h_list) {
        const QuasimodeResidual res = quasimode_residual(spec, E, h);  // throws naming h_0
        report.h_values.push_back(h);
        report.residuals.push_back(res.weighted);
        report.residuals_plain.push_back(res.plain);
        report.norms_plain.push_back(res.norm_plain);
        log_h.push_back(std::log(h));
        log_res.push_back(std::log(res.weighted));
    }
    report.fitted_slope = num::fit_line(log_h, log_res).slope;

    // self-adjoint spectral distance: an actual eigenvalue of L_n must lie
    // within the measured residual of E n^2 for each h = 1/n
    report.spectral_distance_ok = true;
    for (std::size_t i = 0; i < report.h_values.size(); ++i) {
        const double h = report.h_values[i];
        const double n_real = 1.0 / h;
        const int n = static_cast<int>(std::lround(n_real));
        if (n < 1 || std::abs(n_real - n) > 1e-9) {
            report.eigen_distance.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;  // the distance check is defined for integer 1/h only
        }
        const double n2 = static_cast<double>(n) * n;
        const RadialGrid grid = build_grid(spec, required_nodes(spec, n));
        const RadialOperator op = assemble_operator(spec, grid, n);
        const double res = report.residuals[i];
        const auto pairs = eigen_window(op, n2 * (E - res), n2 * (E + res), 64);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : pairs) best = std::min(best, std::abs(p.lambda / n2 - E));
        report.eigen_distance.push_back(best);
        if (!(best <= res)) report.spectral_distance_ok = false;
    }
    return report;
}

}  // namespace wgm

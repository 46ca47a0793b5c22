#include "wgm/modes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "wgm/agmon.hpp"
#include "wgm/numerics.hpp"

namespace wgm {

namespace {

// trapezoid of psi^2 R over [a, b] with linear interpolation at the cut ends
double band_integral(const std::vector<double>& psi, const RadialGrid& grid, double a,
                     double b) {
    if (!(a < b)) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < grid.nodes.size(); ++i) {
        const double lo = grid.nodes[i], hi = grid.nodes[i + 1];
        if (hi <= a || lo >= b) continue;
        const double f0 = psi[i] * psi[i] * grid.radii[i];
        const double f1 = psi[i + 1] * psi[i + 1] * grid.radii[i + 1];
        const double x0 = std::max(lo, a), x1 = std::min(hi, b);
        const double t0 = (x0 - lo) / (hi - lo), t1 = (x1 - lo) / (hi - lo);
        const double g0 = f0 + (f1 - f0) * t0;
        const double g1 = f0 + (f1 - f0) * t1;
        total += 0.5 * (g0 + g1) * (x1 - x0);
    }
    return total;
}

}  // namespace

WGMode wgm_mode(const DomainSpec& spec, int n, const RadialGrid& grid) {
    if (n < 1) throw std::invalid_argument("wgm_mode: n must be positive");
    const int needed = required_nodes(spec, n, grid.pole_cut > 0 ? grid.pole_cut : kAutoPoleCut);
    if (static_cast<int>(grid.nodes.size()) < needed) {
        std::ostringstream os;
        os << "wgm_mode: grid under-resolves n=" << n << ", need >= " << needed
           << " nodes, got " << grid.nodes.size();
        throw std::invalid_argument(os.str());
    }
    const EffectivePotential pot = effective_potential(spec);

    WGMode mode;
    mode.grid = grid;
    mode.admissible_domain = pot.admissible;
    const RadialOperator op = assemble_operator(spec, grid, n);
    mode.pair = lowest_eigenpair(op);
    mode.E_semi = mode.pair.lambda / (static_cast<double>(n) * n);
    mode.in_energy_window =
        mode.E_semi > pot.E0 && mode.E_semi < pot.E0 + pot.eta0 && pot.admissible;
    // full-mode norm: 2 pi * integral psi^2 R ds against the radial 1/(2 pi)
    mode.u_norm = std::sqrt(
        2.0 * std::numbers::pi *
        band_integral(mode.pair.psi, grid, grid.nodes.front(), grid.nodes.back()));
    return mode;
}

double mode_mass(const WGMode& mode, std::array<double, 2> omega) {
    return std::sqrt(2.0 * std::numbers::pi *
                     band_integral(mode.pair.psi, mode.grid, omega[0], omega[1]));
}

double localization(const WGMode& mode, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("localization: eps must be positive");
    const double s0 = mode.grid.nodes[mode.grid.interface_index];
    const double lo = mode.grid.nodes.front(), hi = mode.grid.nodes.back();
    const double inner = band_integral(mode.pair.psi, mode.grid, lo, std::max(lo, s0 - eps));
    const double outer = band_integral(mode.pair.psi, mode.grid, std::min(hi, s0 + eps), hi);
    return std::sqrt(2.0 * std::numbers::pi * (inner + outer));
}

DecayFit decay_fit(const DomainSpec& spec, std::span<const int> n_values,
                   std::array<double, 2> omega, int threads) {
    if (n_values.size() < 5)
        throw std::invalid_argument("decay_fit: need at least 5 n values");
    for (std::size_t i = 1; i < n_values.size(); ++i)
        if (!(n_values[i] > n_values[i - 1]))
            throw std::invalid_argument("decay_fit: n values must be increasing");
    if (!(omega[0] < omega[1]) || omega[0] < spec.s_min() || omega[1] > spec.s_max())
        throw std::invalid_argument("decay_fit: omega must be a band inside the domain");

    const EffectivePotential pot = effective_potential(spec);
    DecayFit fit;
    fit.omega = omega;
    fit.admissible_domain = pot.admissible;
    fit.n_values.assign(n_values.begin(), n_values.end());

    // Agmon prediction: distance is monotone away from the interface, so the
    // minimum over the band sits at the endpoint nearest s0 (0 if the band
    // touches the allowed region)
    const double s0 = spec.interface_location();
    if (pot.admissible) {
        if (omega[0] <= s0 && s0 <= omega[1]) fit.d_pred = 0.0;
        else if (omega[1] < s0) fit.d_pred = agmon_distance(pot, pot.E0, omega[1]);
        else fit.d_pred = agmon_distance(pot, pot.E0, omega[0]);
    }

    fit.masses.assign(n_values.size(), 0.0);
    fit.lambdas.assign(n_values.size(), 0.0);
    num::parallel_for(n_values.size(), threads, [&](std::size_t i) {
        const int n = n_values[i];
        const RadialGrid grid = build_grid(spec, required_nodes(spec, n));
        const WGMode mode = wgm_mode(spec, n, grid);
        fit.masses[i] = mode_mass(mode, omega);
        fit.lambdas[i] = mode.pair.lambda;
    });
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        const bool below = !(fit.masses[i] > kMassFloor);
        fit.floor_mask.push_back(below);
        if (!below) {
            xs.push_back(static_cast<double>(n_values[i]));
            ys.push_back(std::log(fit.masses[i]));
        }
    }
    if (xs.size() < 3)
        throw std::runtime_error("decay_fit: fewer than 3 masses above the numerical floor");

    const num::LineFit line = num::fit_line(xs, ys);
    fit.d_fit = -line.slope;
    fit.intercept = line.intercept;
    fit.r_squared = line.r_squared;
    fit.no_exponential_regime = fit.d_pred <= 1e-9 || !(fit.d_fit > 0.0);
    fit.within_bracket = !fit.no_exponential_regime && fit.d_fit >= 0.8 * fit.d_pred &&
                         fit.d_fit <= 1.3 * fit.d_pred;
    return fit;
}

SaturationReport spectral_saturation(const DecayFit& fit) {
    SaturationReport report;
    report.applicable = fit.admissible_domain && !fit.no_exponential_regime;
    if (!report.applicable) return report;

    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < fit.n_values.size(); ++i) {
        if (fit.floor_mask[i]) continue;
        xs.push_back(static_cast<double>(fit.n_values[i]));
        ys.push_back(std::log(fit.masses[i]));
    }
    const num::LineFit line = num::fit_line(xs, ys);
    report.r_squared = line.r_squared;
    report.positive_rate = line.slope < 0.0;

    // curvature detector: a quadratic term contributing more than both an
    // absolute unit and 10x the quadratic-fit scatter over the sweep span
    // means the decay is not a straight exponential in n
    const num::QuadFit quad = num::fit_quadratic(xs, ys);
    report.curvature = quad.c2;
    const double span = xs.back() - xs.front();
    const double contribution = std::abs(quad.c2) * span * span;
    const bool curved = contribution > 1.0 && contribution > 10.0 * quad.rmse;
    report.super_exponential = curved && quad.c2 < 0.0;
    report.sub_exponential = curved && quad.c2 > 0.0;
    report.linear = report.r_squared >= 0.98 && !curved;
    report.pass = report.linear && report.positive_rate && !report.super_exponential;
    return report;
}

}  // namespace wgm

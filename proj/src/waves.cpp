#include "wgm/waves.hpp"

#include <cmath>
#include <stdexcept>

#include "wgm/agmon.hpp"
#include "wgm/numerics.hpp"

namespace wgm {

double frequency_ratio(const WGMode& mode) { return std::sqrt(1.0 + mode.pair.lambda); }

WaveObservation wave_norm(const WGMode& mode, std::array<double, 2> omega, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("wave_norm: T must be positive");
    if (!(omega[0] < omega[1]))
        throw std::invalid_argument("wave_norm: omega must be a nonempty interval");

    WaveObservation obs;
    obs.n = mode.pair.n;
    obs.lambda = mode.pair.lambda;
    obs.T = T;
    obs.omega = omega;
    const double root = std::sqrt(mode.pair.lambda);
    obs.time_factor = 0.5 * T + std::sin(2.0 * root * T) / (4.0 * root);
    obs.mass_omega = mode_mass(mode, omega);
    obs.spacetime_norm = std::sqrt(obs.time_factor) * obs.mass_omega;
    obs.Lambda = frequency_ratio(mode);
    obs.Lambda_paper = root + 1.0;
    return obs;
}

TunnelingFit tunneling_fit(const DomainSpec& spec, std::span<const int> n_values,
                           std::array<double, 2> omega, double T, int threads) {
    if (n_values.size() < 5)
        throw std::invalid_argument("tunneling_fit: need at least 5 n values");

    TunnelingFit fit;
    fit.T = T;
    fit.omega = omega;

    const EffectivePotential pot = effective_potential(spec);
    const double s0 = spec.interface_location();
    const bool touches_allowed = omega[0] <= s0 && s0 <= omega[1];
    double d_pred = 0.0;
    if (pot.admissible && !touches_allowed)
        d_pred = omega[1] < s0 ? agmon_distance(pot, pot.E0, omega[1])
                               : agmon_distance(pot, pot.E0, omega[0]);
    if (!pot.admissible || d_pred <= 1e-9) {
        fit.no_exponential_regime = true;
        return fit;
    }

    std::vector<WaveObservation> observations(n_values.size());
    num::parallel_for(n_values.size(), threads, [&](std::size_t i) {
        const int n = n_values[i];
        const RadialGrid grid = build_grid(spec, required_nodes(spec, n));
        const WGMode mode = wgm_mode(spec, n, grid);
        observations[i] = wave_norm(mode, omega, T);
    });
    for (const WaveObservation& obs : observations) {
        if (!(obs.spacetime_norm > kMassFloor)) continue;  // same floor as decay_fit
        fit.n_values.push_back(obs.n);
        fit.Lambdas.push_back(obs.Lambda);
        fit.log_norms.push_back(std::log(obs.spacetime_norm));
    }
    if (fit.Lambdas.size() < 3)
        throw std::runtime_error("tunneling_fit: fewer than 3 norms above the numerical floor");

    const num::LineFit line = num::fit_line(fit.Lambdas, fit.log_norms);
    fit.slope = line.slope;
    fit.r_squared = line.r_squared;
    fit.pass = fit.slope < 0.0 && fit.r_squared >= 0.98;
    return fit;
}

}  // namespace wgm

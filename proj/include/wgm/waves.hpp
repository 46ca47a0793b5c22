#pragma once

#include <array>
#include <span>
#include <vector>

#include "wgm/modes.hpp"

// Whispering-gallery waves w_n(t, x) = cos(sqrt(lambda_n) t) u_n(x): exact
// separated solutions of the transmission wave system. Their space-time
// observation norms decay like e^{-d Lambda}, saturating the e^{+C Lambda}
// observability cost.

namespace wgm {

struct WaveObservation {
    int n = 0;
    double lambda = 0.0;
    double T = 0.0;
    std::array<double, 2> omega{};
    double time_factor = 0.0;     ///< integral of cos^2(sqrt(lambda) t) over (0, T)
    double mass_omega = 0.0;      ///< ||u_n||_{L2(omega)}
    double spacetime_norm = 0.0;  ///< sqrt(time_factor) * mass_omega, exact by separation
    double Lambda = 0.0;          ///< sqrt(1 + lambda): H1xL2 over L2xH-1 for (u_n, 0)
    double Lambda_paper = 0.0;    ///< sqrt(lambda) + 1, the asymptotic form
};

/// Frequency ratio sqrt(1 + lambda_n); the H1 norm is realized through the
/// operator quadratic form, which equals lambda_n for a normalized mode.
double frequency_ratio(const WGMode& mode);

/// Closed-form observation record; no time stepping anywhere.
WaveObservation wave_norm(const WGMode& mode, std::array<double, 2> omega, double T);

struct TunnelingFit {
    double T = 0.0;
    std::array<double, 2> omega{};
    std::vector<double> Lambdas;
    std::vector<double> log_norms;
    std::vector<int> n_values;
    double slope = 0.0;  ///< log spacetime norm per unit Lambda
    double r_squared = 0.0;
    bool no_exponential_regime = false;
    bool pass = false;  ///< slope < 0 and r^2 >= 0.98
};

/// Least-squares decay of the space-time norms against Lambda over an n sweep.
TunnelingFit tunneling_fit(const DomainSpec& spec, std::span<const int> n_values,
                           std::array<double, 2> omega, double T, int threads = 1);

}  // namespace wgm

#pragma once

#include <span>
#include <vector>

#include "wgm/potential.hpp"

// Agmon distance to the classically allowed region: the degenerate-metric
// action integral of sqrt((V_c - E)_+ / c). Governs the exponential decay
// rate of eigenfunctions in the classically forbidden region.

namespace wgm {

struct AgmonProfile {
    double E = 0.0;
    double rho_E = 0.0;
    double s0 = 0.0;                ///< interface location
    std::vector<double> grid;       ///< sorted s-samples
    std::vector<double> d;          ///< per-sample Agmon distance
    std::vector<double> v_samples;  ///< V_c at the samples (left-sided at s0)
    std::vector<double> c_samples;  ///< c at the samples (left-sided at s0)
    double lipschitz_bound = 0.0;   ///< (max (V_c - E)_+ / c_min)^{1/2}
    double kink_slope = 0.0;        ///< one-sided slope at s0+: sqrt((V(s0+)-E)/c_+)
};

/// Pointwise Agmon distance at energy E in [E0, E0+eta0); quadrature
/// absolute tolerance 1e-9. The turning-point panel uses the square-root
/// substitution s = rho_E - t^2 so the integrand stays smooth.
double agmon_distance(const EffectivePotential& pot, double E, double s);

/// Cumulative profile along a sorted grid, one pass outward from rho_E and
/// one from s0; consistent with pointwise values to 1e-8.
AgmonProfile agmon_profile(const EffectivePotential& pot, double E,
                           std::span<const double> grid);

/// Max over interior samples of |c (d')^2 - (V_c - E)_+| with centered
/// differences, excluding a 2-sample collar around rho_E and s0 where the
/// distributional eikonal equation is not pointwise checkable.
double eikonal_residual(const AgmonProfile& profile);

/// Independent oracle for piecewise-constant coefficients:
/// integral of sqrt(1/s^2 - E/c) via the antiderivative
/// F(s) = sqrt(1 - a^2 s^2) - artanh(sqrt(1 - a^2 s^2)), a = sqrt(E/c).
/// Throws std::domain_error when a*s >= 1 anywhere on [a_from, a_to]
/// (turning point reached).
double closed_form_annulus_distance(double c_side, double E, double a_from, double a_to);

/// The antiderivative F itself; finite for a*s <= 1 (F = 0 exactly at the
/// turning point a*s = 1). Lets tests evaluate inner-branch integrals whose
/// endpoint is the turning point.
double closed_form_antiderivative(double c_side, double E, double s);

}  // namespace wgm

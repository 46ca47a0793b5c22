#pragma once

#include <array>
#include <vector>

#include "wgm/geometry.hpp"

// Effective radial potential V_c(s) = c(s)/R(s)^2 after separation of
// variables, with its continuous inner extension, ground level E0, the
// classically allowed sublevel sets, and the admissibility condition that
// makes the interface the unique potential minimum.

namespace wgm {

struct EffectivePotential {
    DomainSpec domain;
    double E0 = 0.0;           ///< c_-(s0)/R(s0)^2, infimum of the potential when admissible
    double eta0 = 0.0;         ///< V_outer_min - E0 (maximal energy margin)
    double V_outer_min = 0.0;  ///< min of V_c on [s0, s_max]
    bool admissible = false;   ///< extended potential attains its minimum only at s0

    /// V_c(s), left-sided value at the interface
    double value(double s) const;
    /// V_c(s), right-sided value at the interface
    double value_plus(double s) const;
    /// continuous inner extension V_bar on [s_min, s0]
    double extension(double s) const;
};

EffectivePotential effective_potential(const DomainSpec& spec);

/// Inner turning point rho_E with V_bar(rho_E) = E, largest root <= s0.
/// E must lie in [E0, E0 + eta0); relative tolerance 1e-12.
double turning_point(const EffectivePotential& pot, double E);

struct AllowedRegion {
    double E = 0.0;
    std::vector<std::array<double, 2>> intervals;  ///< disjoint, sorted sublevel intervals
    bool empty() const { return intervals.empty(); }
};

/// Sublevel set {V_c <= E}. Empty below E0; single interval [rho_E, s0] in
/// the admissible window; general sign-change scan above it.
AllowedRegion allowed_region(const EffectivePotential& pot, double E);

}  // namespace wgm

#pragma once

#include <cstddef>
#include <vector>

#include "wgm/geometry.hpp"

// Per angular momentum n, the 1D transmission Sturm-Liouville problem
//   L_n f = -(1/R)(c R f')' + n^2 (c/R^2) f = lambda f
// with Dirichlet/pole-truncated boundary conditions, the flux transmission
// condition c_- f'(s0-) = c_+ f'(s0+) at the interface, assembled as a
// flux-conservative second-order scheme and solved by Sturm bisection with
// inverse iteration. An independent shooting oracle cross-checks it.

namespace wgm {

/// pole_cut sentinel: derive 1e-3 * s_max for pole geometries, 0 otherwise
inline constexpr double kAutoPoleCut = -1.0;

struct RadialGrid {
    std::vector<double> nodes;    ///< sorted, s0 an exact node
    std::vector<double> spacing;  ///< per-cell widths, size nodes-1
    std::vector<double> radii;    ///< R(s_i)
    std::size_t interface_index = 0;
    double pole_cut = 0.0;  ///< truncation used (0 for non-pole geometries)
};

/// Uniform grid on each side of s0 (shared node), node counts proportional
/// to side lengths. min_nodes guards against unusable resolutions.
RadialGrid build_grid(const DomainSpec& spec, int node_count,
                      double pole_cut = kAutoPoleCut, int min_nodes = 64);

/// Node count for resolving angular momentum n on this domain (the default
/// sweep rule: 40 nodes per unit length and unit n).
int required_nodes(const DomainSpec& spec, int n, double pole_cut = kAutoPoleCut);

/// Symmetric standard-form tridiagonal system B = W^{-1/2} K W^{-1/2} over
/// interior nodes, W the lumped weight diag(R_i h_i).
struct RadialOperator {
    int n = 0;
    std::vector<double> diag, off;  ///< interior-node matrix
    std::vector<double> lumped;     ///< R_i h_i, interior nodes
    RadialGrid grid;
};

RadialOperator assemble_operator(const DomainSpec& spec, const RadialGrid& grid, int n);

struct EigenPair {
    int n = 0;
    double lambda = 0.0;
    std::vector<double> psi;  ///< all grid nodes (boundary zeros included),
                              ///< normalized so sum psi^2 R h = 1/(2 pi),
                              ///< sign fixed positive at the peak node
    double E_h = 0.0;         ///< lambda / n^2 (semiclassical energy, n >= 1)
};

/// All eigenvalues in the window (up to max_count) with eigenvectors.
std::vector<EigenPair> eigen_window(const RadialOperator& op, double lambda_lo,
                                    double lambda_hi, int max_count);

/// The ground eigenpair of L_n (always exists; no window needed).
EigenPair lowest_eigenpair(const RadialOperator& op);

/// Independent oracle: RK4 shooting from the inner end with the flux jump
/// f'(s0+) = (c_-/c_+) f'(s0-), bisecting the outer boundary mismatch.
/// Requires piecewise-constant coefficients and a sign change in the bracket.
double shoot_eigenvalue(const DomainSpec& spec, int n, double lambda_lo,
                        double lambda_hi, int steps_per_side = 10000);

/// Relative flux jump |c_- psi'(s0-) - c_+ psi'(s0+)| / max(|...|) with
/// one-sided second-order differences.
double transmission_residual(const EigenPair& pair, const DomainSpec& spec,
                             const RadialGrid& grid);

}  // namespace wgm

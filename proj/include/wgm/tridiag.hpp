#pragma once

#include <span>
#include <utility>
#include <vector>

// Symmetric tridiagonal eigensolver: Sturm-sequence bisection for selected
// eigenvalues plus inverse iteration for eigenvectors. Self-contained so the
// spectral pipeline has no external linear-algebra dependency.

namespace wgm::tridiag {

/// Number of eigenvalues strictly below x (sign count of the LDL^T pivots).
int count_below(std::span<const double> diag, std::span<const double> off, double x);

/// [lower, upper] Gershgorin bounds for the spectrum.
std::pair<double, double> spectrum_bounds(std::span<const double> diag,
                                          std::span<const double> off);

/// k-th smallest eigenvalue (0-based) by bisection to relative tolerance.
double eigenvalue_by_index(std::span<const double> diag, std::span<const double> off,
                           int k, double rel_tol = 1e-12);

/// All eigenvalues in (lo, hi], ascending, at most max_count.
std::vector<double> eigenvalues_in_window(std::span<const double> diag,
                                          std::span<const double> off, double lo,
                                          double hi, int max_count,
                                          double rel_tol = 1e-12);

/// Eigenvector for an isolated eigenvalue by inverse iteration with a
/// partially pivoted tridiagonal LU solve; returned with unit euclidean norm.
std::vector<double> eigenvector(std::span<const double> diag, std::span<const double> off,
                                double lambda);

}  // namespace wgm::tridiag

#include "wgm/radial_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "wgm/tridiag.hpp"

namespace wgm {

namespace {
constexpr double kEigenRelTol = 1e-12;
constexpr double kShootRelTol = 1e-10;

double resolve_pole_cut(const DomainSpec& spec, double pole_cut) {
    if (spec.inner_boundary != InnerBoundary::pole) return 0.0;
    if (pole_cut == kAutoPoleCut) return 1e-3 * spec.s_max();
    return pole_cut;
}
}  // namespace

RadialGrid build_grid(const DomainSpec& spec, int node_count, double pole_cut,
                      int min_nodes) {
    if (node_count < min_nodes) {
        std::ostringstream os;
        os << "build_grid: node count " << node_count << " below minimum " << min_nodes;
        throw std::invalid_argument(os.str());
    }
    const double s0 = spec.interface_location();
    const double cut = resolve_pole_cut(spec, pole_cut);
    if (spec.inner_boundary == InnerBoundary::pole && !(cut > 0.0 && cut < s0))
        throw std::invalid_argument("build_grid: pole_cut must lie in (0, s0)");

    const double start = spec.inner_boundary == InnerBoundary::pole ? cut : spec.s_min();
    const double s_max = spec.s_max();
    const double len_minus = s0 - start;
    const double len_plus = s_max - s0;

    const int cells = node_count - 1;
    int k = static_cast<int>(std::lround(cells * len_minus / (len_minus + len_plus)));
    k = std::clamp(k, 2, cells - 2);
    const int m = cells - k;

    RadialGrid grid;
    grid.pole_cut = spec.inner_boundary == InnerBoundary::pole ? cut : 0.0;
    grid.nodes.resize(static_cast<std::size_t>(node_count));
    for (int i = 0; i <= k; ++i)
        grid.nodes[static_cast<std::size_t>(i)] = start + len_minus * static_cast<double>(i) / k;
    grid.nodes[static_cast<std::size_t>(k)] = s0;  // interface node exact
    for (int j = 1; j <= m; ++j)
        grid.nodes[static_cast<std::size_t>(k + j)] = s0 + len_plus * static_cast<double>(j) / m;
    grid.nodes.back() = s_max;
    grid.interface_index = static_cast<std::size_t>(k);

    grid.spacing.resize(grid.nodes.size() - 1);
    for (std::size_t i = 0; i + 1 < grid.nodes.size(); ++i)
        grid.spacing[i] = grid.nodes[i + 1] - grid.nodes[i];
    grid.radii.resize(grid.nodes.size());
    for (std::size_t i = 0; i < grid.nodes.size(); ++i)
        grid.radii[i] = spec.profile.radius(grid.nodes[i]);
    return grid;
}

int required_nodes(const DomainSpec& spec, int n, double pole_cut) {
    const double cut = resolve_pole_cut(spec, pole_cut);
    const double start = spec.inner_boundary == InnerBoundary::pole ? cut : spec.s_min();
    const double span = spec.s_max() - start;
    const int rule = static_cast<int>(std::ceil(40.0 * std::max(1, n) * span));
    return std::max(rule, 64);
}

RadialOperator assemble_operator(const DomainSpec& spec, const RadialGrid& grid, int n) {
    const std::size_t total = grid.nodes.size();
    if (total < 3) throw std::invalid_argument("assemble_operator: grid too small");
    const std::size_t iface = grid.interface_index;
    const std::size_t interior = total - 2;

    RadialOperator op;
    op.n = n;
    op.grid = grid;
    op.diag.assign(interior, 0.0);
    op.off.assign(interior - 1, 0.0);
    op.lumped.assign(interior, 0.0);

    // edge quantities: edge j joins nodes j, j+1; c one-sided at the interface
    std::vector<double> edge_coef(total - 1);
    for (std::size_t j = 0; j + 1 < total; ++j) {
        const double mid = 0.5 * (grid.nodes[j] + grid.nodes[j + 1]);
        const double r_mid = spec.profile.radius(mid);
        const double c_mid = j < iface ? spec.coeff.minus(mid) : spec.coeff.plus(mid);
        edge_coef[j] = c_mid * r_mid / grid.spacing[j];
    }

    // node potential n^2 c/R^2; the cell straddling the jump takes the
    // control-volume average of c, which keeps the scheme second order
    std::vector<double> v_node(total);
    for (std::size_t i = 0; i < total; ++i) {
        double c;
        if (i < iface) c = spec.coeff.minus(grid.nodes[i]);
        else if (i > iface) c = spec.coeff.plus(grid.nodes[i]);
        else {
            const double hm = grid.spacing[iface - 1], hp = grid.spacing[iface];
            c = (spec.coeff.minus(grid.nodes[i]) * hm + spec.coeff.plus(grid.nodes[i]) * hp) /
                (hm + hp);
        }
        v_node[i] = c / (grid.radii[i] * grid.radii[i]);
    }

    for (std::size_t i = 1; i + 1 < total; ++i) {
        const std::size_t row = i - 1;
        op.lumped[row] = grid.radii[i] * 0.5 * (grid.spacing[i - 1] + grid.spacing[i]);
        op.diag[row] = (edge_coef[i - 1] + edge_coef[i]) / op.lumped[row] +
                       static_cast<double>(n) * static_cast<double>(n) * v_node[i];
    }
    for (std::size_t i = 1; i + 2 < total; ++i) {
        const std::size_t row = i - 1;
        op.off[row] = -edge_coef[i] / std::sqrt(op.lumped[row] * op.lumped[row + 1]);
    }
    return op;
}

namespace {

EigenPair make_pair(const RadialOperator& op, double lambda) {
    EigenPair pair;
    pair.n = op.n;
    pair.lambda = lambda;
    pair.E_h = op.n >= 1 ? lambda / (static_cast<double>(op.n) * op.n)
                         : std::numeric_limits<double>::quiet_NaN();
    const auto g = tridiag::eigenvector(op.diag, op.off, lambda);
    const std::size_t total = op.grid.nodes.size();
    pair.psi.assign(total, 0.0);
    // transform back f = W^{-1/2} g; g has unit euclidean norm, so
    // sum f^2 R h = 1 and the target normalization is a single scale
    const double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    for (std::size_t i = 0; i + 2 < total; ++i)
        pair.psi[i + 1] = scale * g[i] / std::sqrt(op.lumped[i]);
    std::size_t peak = 0;
    for (std::size_t i = 1; i < total; ++i)
        if (std::abs(pair.psi[i]) > std::abs(pair.psi[peak])) peak = i;
    if (pair.psi[peak] < 0.0)
        for (double& x : pair.psi) x = -x;
    return pair;
}

}  // namespace

std::vector<EigenPair> eigen_window(const RadialOperator& op, double lambda_lo,
                                    double lambda_hi, int max_count) {
    const auto values =
        tridiag::eigenvalues_in_window(op.diag, op.off, lambda_lo, lambda_hi, max_count,
                                       kEigenRelTol);
    std::vector<EigenPair> pairs;
    pairs.reserve(values.size());
    for (double lambda : values) pairs.push_back(make_pair(op, lambda));
    return pairs;
}

EigenPair lowest_eigenpair(const RadialOperator& op) {
    return make_pair(op, tridiag::eigenvalue_by_index(op.diag, op.off, 0, kEigenRelTol));
}

namespace {

// one RK4 sweep of f'' = -(R'/R) f' + (n^2/R^2 - lambda/c) f over [a, b]
struct ShootState {
    double f, fp;
};

ShootState integrate_side(const DomainSpec& spec, ShootState y, double a, double b,
                          double n2, double lambda_over_c, int steps) {
    const double h = (b - a) / steps;
    auto deriv = [&](double s, const ShootState& u) {
        const auto [r, rp] = spec.profile.eval(s);
        return ShootState{u.fp, -(rp / r) * u.fp + (n2 / (r * r) - lambda_over_c) * u.f};
    };
    double s = a;
    for (int i = 0; i < steps; ++i) {
        const ShootState k1 = deriv(s, y);
        const ShootState k2 = deriv(s + 0.5 * h, {y.f + 0.5 * h * k1.f, y.fp + 0.5 * h * k1.fp});
        const ShootState k3 = deriv(s + 0.5 * h, {y.f + 0.5 * h * k2.f, y.fp + 0.5 * h * k2.fp});
        const ShootState k4 = deriv(s + h, {y.f + h * k3.f, y.fp + h * k3.fp});
        y.f += h / 6.0 * (k1.f + 2.0 * k2.f + 2.0 * k3.f + k4.f);
        y.fp += h / 6.0 * (k1.fp + 2.0 * k2.fp + 2.0 * k3.fp + k4.fp);
        s += h;
        // positive rescaling keeps the mismatch sign while avoiding overflow
        const double mag = std::max(std::abs(y.f), std::abs(y.fp));
        if (mag > 1e100) { y.f /= mag; y.fp /= mag; }
    }
    return y;
}

double shoot_mismatch(const DomainSpec& spec, int n, double lambda, int steps) {
    const double s0 = spec.interface_location();
    const double start = spec.inner_boundary == InnerBoundary::pole
                             ? 1e-3 * spec.s_max()
                             : spec.s_min();
    const double cm = spec.coeff.minus(s0);
    const double cp = spec.coeff.plus(s0);
    const double n2 = static_cast<double>(n) * n;
    ShootState y{0.0, 1.0};
    y = integrate_side(spec, y, start, s0, n2, lambda / cm, steps);
    y.fp *= cm / cp;  // flux continuity across the interface
    y = integrate_side(spec, y, s0, spec.s_max(), n2, lambda / cp, steps);
    return y.f;
}

}  // namespace

double shoot_eigenvalue(const DomainSpec& spec, int n, double lambda_lo, double lambda_hi,
                        int steps_per_side) {
    if (!spec.coeff.piecewise_constant())
        throw std::invalid_argument("shoot_eigenvalue: requires piecewise-constant c");
    if (!(lambda_lo < lambda_hi))
        throw std::invalid_argument("shoot_eigenvalue: empty bracket");
    double lo = lambda_lo, hi = lambda_hi;
    double f_lo = shoot_mismatch(spec, n, lo, steps_per_side);
    double f_hi = shoot_mismatch(spec, n, hi, steps_per_side);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0) == (f_hi > 0))
        throw std::runtime_error("shoot_eigenvalue: no sign change in bracket");
    while (hi - lo > kShootRelTol * std::abs(hi)) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = shoot_mismatch(spec, n, mid, steps_per_side);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (f_lo > 0)) { lo = mid; f_lo = fm; }
        else { hi = mid; f_hi = fm; }
    }
    return 0.5 * (lo + hi);
}

double transmission_residual(const EigenPair& pair, const DomainSpec& spec,
                             const RadialGrid& grid) {
    const std::size_t k = grid.interface_index;
    if (k < 2 || k + 2 >= grid.nodes.size())
        throw std::invalid_argument("transmission_residual: interface too close to boundary");
    if (pair.psi.size() != grid.nodes.size())
        throw std::invalid_argument("transmission_residual: pair not computed on this grid");
    const double hm = grid.spacing[k - 1];
    const double hp = grid.spacing[k];
    const double dm =
        (3.0 * pair.psi[k] - 4.0 * pair.psi[k - 1] + pair.psi[k - 2]) / (2.0 * hm);
    const double dp =
        (-3.0 * pair.psi[k] + 4.0 * pair.psi[k + 1] - pair.psi[k + 2]) / (2.0 * hp);
    const double s0 = grid.nodes[k];
    const double flux_m = spec.coeff.minus(s0) * dm;
    const double flux_p = spec.coeff.plus(s0) * dp;
    const double denom = std::max(std::abs(flux_m), std::abs(flux_p));
    if (denom == 0.0) return 0.0;
    return std::abs(flux_m - flux_p) / denom;
}

}  // namespace wgm

#include "wgm/agmon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wgm/numerics.hpp"

namespace wgm {

namespace {

constexpr double kQuadAbsTol = 1e-9;
constexpr double kSegmentAbsTol = 1e-12;  // per-segment budget for cumulative profiles

void check_window(const EffectivePotential& pot, double E) {
    if (!pot.admissible)
        throw std::invalid_argument("agmon: potential is not admissible");
    if (!(E >= pot.E0 && E < pot.E0 + pot.eta0))
        throw std::invalid_argument("agmon: E outside [E0, E0+eta0)");
}

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

// integrand sqrt((V_bar - E)_+ / c_-) on the inner side
double inner_integrand(const EffectivePotential& pot, double E, double s) {
    return std::sqrt(positive_part(pot.extension(s) - E) / pot.domain.coeff.minus(s));
}

// integrand sqrt((V - E)_+ / c_+) on the outer side
double outer_integrand(const EffectivePotential& pot, double E, double s) {
    return std::sqrt(positive_part(pot.value_plus(s) - E) / pot.domain.coeff.plus(s));
}

// inner-branch action from s up to the turning point rho. The integrand has
// a sqrt singularity at rho; substituting s = rho - t^2 makes it smooth on
// the adjacent panel.
double inner_action(const EffectivePotential& pot, double E, double s, double rho,
                    double abs_tol) {
    if (s >= rho) return 0.0;
    const double width = rho - s;
    const double sub = 0.25 * width;  // substituted panel [rho - sub, rho]
    double total = 0.0;
    if (width > sub)
        total += num::integrate([&](double x) { return inner_integrand(pot, E, x); }, s,
                                rho - sub, 0.5 * abs_tol);
    total += num::integrate(
        [&](double t) { return 2.0 * t * inner_integrand(pot, E, rho - t * t); }, 0.0,
        std::sqrt(sub), 0.5 * abs_tol);
    return total;
}

double outer_action(const EffectivePotential& pot, double E, double from, double to,
                    double abs_tol) {
    if (to <= from) return 0.0;
    return num::integrate([&](double x) { return outer_integrand(pot, E, x); }, from, to,
                          abs_tol);
}

}  // namespace

double agmon_distance(const EffectivePotential& pot, double E, double s) {
    check_window(pot, E);
    if (!(s >= pot.domain.s_min() && s <= pot.domain.s_max()))
        throw std::invalid_argument("agmon_distance: s outside the domain");
    const double s0 = pot.domain.interface_location();
    const double rho = turning_point(pot, E);
    if (s >= rho && s <= s0) return 0.0;
    if (s < rho) return inner_action(pot, E, s, rho, kQuadAbsTol);
    return outer_action(pot, E, s0, s, kQuadAbsTol);
}

AgmonProfile agmon_profile(const EffectivePotential& pot, double E,
                           std::span<const double> grid) {
    check_window(pot, E);
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("agmon_profile: grid must be strictly increasing");
    if (!grid.empty() &&
        (grid.front() < pot.domain.s_min() || grid.back() > pot.domain.s_max()))
        throw std::invalid_argument("agmon_profile: grid outside the domain");

    AgmonProfile profile;
    profile.E = E;
    profile.rho_E = turning_point(pot, E);
    const double s0 = pot.domain.interface_location();
    profile.s0 = s0;
    profile.grid.assign(grid.begin(), grid.end());
    profile.d.assign(grid.size(), 0.0);
    profile.v_samples.resize(grid.size());
    profile.c_samples.resize(grid.size());

    double vmax = 0.0;
    double cmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double s = grid[i];
        profile.v_samples[i] = s <= s0 ? pot.extension(s) : pot.value_plus(s);
        profile.c_samples[i] =
            s <= s0 ? pot.domain.coeff.minus(s) : pot.domain.coeff.plus(s);
        vmax = std::max(vmax, positive_part(profile.v_samples[i] - E));
        cmin = std::min(cmin, profile.c_samples[i]);
    }
    profile.lipschitz_bound = std::sqrt(vmax / cmin);
    profile.kink_slope = std::sqrt(positive_part(pot.value_plus(s0) - E) /
                                   pot.domain.coeff.plus(s0));

    // cumulative pass leftward from rho_E
    double acc = 0.0;
    double prev = profile.rho_E;
    for (std::size_t k = grid.size(); k-- > 0;) {
        if (grid[k] >= profile.rho_E) continue;
        acc += inner_action(pot, E, grid[k], prev, kSegmentAbsTol);
        profile.d[k] = acc;
        prev = grid[k];
    }
    // cumulative pass rightward from s0
    acc = 0.0;
    prev = s0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (grid[k] <= s0) continue;
        acc += outer_action(pot, E, prev, grid[k], kSegmentAbsTol);
        profile.d[k] = acc;
        prev = grid[k];
    }
    return profile;
}

double eikonal_residual(const AgmonProfile& profile) {
    const std::size_t n = profile.grid.size();
    if (n < 5) throw std::invalid_argument("eikonal_residual: grid too coarse");

    // indices nearest the turning point and the interface
    auto nearest = [&](double s) {
        std::size_t best = 0;
        double mind = std::abs(profile.grid[0] - s);
        for (std::size_t i = 1; i < n; ++i) {
            const double dd = std::abs(profile.grid[i] - s);
            if (dd < mind) { mind = dd; best = i; }
        }
        return best;
    };
    const std::size_t i_rho = nearest(profile.rho_E);
    const std::size_t i_s0 = nearest(profile.s0);

    auto in_collar = [&](std::size_t i) {
        const auto di_rho = i > i_rho ? i - i_rho : i_rho - i;
        const auto di_s0 = i > i_s0 ? i - i_s0 : i_s0 - i;
        return di_rho <= 2 || di_s0 <= 2;
    };

    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (in_collar(i)) continue;
        const double dp =
            (profile.d[i + 1] - profile.d[i - 1]) / (profile.grid[i + 1] - profile.grid[i - 1]);
        const double lhs = profile.c_samples[i] * dp * dp;
        const double rhs = positive_part(profile.v_samples[i] - profile.E);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

double closed_form_antiderivative(double c_side, double E, double s) {
    const double a2s2 = (E / c_side) * s * s;
    if (a2s2 > 1.0) throw std::domain_error("closed form: integrand imaginary (a*s > 1)");
    const double u = std::sqrt(1.0 - a2s2);
    return u - std::atanh(u);
}

double closed_form_annulus_distance(double c_side, double E, double a_from, double a_to) {
    if (!(c_side > 0.0) || !(E > 0.0))
        throw std::invalid_argument("closed form: c and E must be positive");
    const double a = std::sqrt(E / c_side);
    const double s_hi = std::max(std::abs(a_from), std::abs(a_to));
    if (a * s_hi >= 1.0)
        throw std::domain_error(
            "closed form: turning point reached on the interval (a*s >= 1)");
    return closed_form_antiderivative(c_side, E, a_to) -
           closed_form_antiderivative(c_side, E, a_from);
}

}  // namespace wgm

#include "wgm/potential.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wgm/numerics.hpp"

namespace wgm {

namespace {
constexpr int kScanPoints = 2048;
constexpr double kOuterMinRelTol = 1e-10;
constexpr double kTurningPointRelTol = 1e-12;
}  // namespace

double EffectivePotential::value(double s) const {
    const double r = domain.profile.radius(s);
    return domain.coeff.value(s) / (r * r);
}

double EffectivePotential::value_plus(double s) const {
    const double r = domain.profile.radius(s);
    const double c = s < domain.interface_location() ? domain.coeff.minus(s) : domain.coeff.plus(s);
    return c / (r * r);
}

double EffectivePotential::extension(double s) const {
    const double r = domain.profile.radius(s);
    return domain.coeff.minus(s) / (r * r);
}

EffectivePotential effective_potential(const DomainSpec& spec) {
    EffectivePotential pot{spec};
    const double s0 = spec.interface_location();
    const double r0 = spec.profile.radius(s0);
    pot.E0 = spec.coeff.minus(s0) / (r0 * r0);

    // outer minimum of V_c on [s0, s_max]: coarse scan, then golden-section refinement
    const double s_max = spec.s_max();
    auto v_plus = [&](double s) {
        const double r = spec.profile.radius(s);
        return spec.coeff.plus(s) / (r * r);
    };
    double best = v_plus(s0);
    int best_i = 0;
    for (int i = 1; i <= kScanPoints; ++i) {
        const double s = s0 + (s_max - s0) * static_cast<double>(i) / kScanPoints;
        const double v = v_plus(s);
        if (v < best) { best = v; best_i = i; }
    }
    const double ds = (s_max - s0) / kScanPoints;
    const double lo = s0 + std::max(0, best_i - 1) * ds;
    const double hi = s0 + std::min(kScanPoints, best_i + 1) * ds;
    const double s_star = num::golden_min(v_plus, lo, hi, kOuterMinRelTol);
    pot.V_outer_min = std::min(best, v_plus(s_star));
    pot.eta0 = pot.V_outer_min - pot.E0;

    // admissibility: V_bar > E0 strictly before the interface, and the outer
    // side stays strictly above E0
    bool inner_ok = true;
    const double s_min = spec.s_min();
    const double inner_start = spec.profile.has_pole()
                                   ? s_min + 1e-9 * (s_max - s_min)
                                   : s_min;
    for (int i = 0; i < kScanPoints; ++i) {
        const double s = inner_start + (s0 - inner_start) * static_cast<double>(i) / kScanPoints;
        if (!(pot.extension(s) > pot.E0)) { inner_ok = false; break; }
    }
    pot.admissible = inner_ok && pot.eta0 > 0.0;
    return pot;
}

double turning_point(const EffectivePotential& pot, double E) {
    if (!pot.admissible)
        throw std::invalid_argument("turning_point: potential is not admissible");
    if (!(E >= pot.E0 && E < pot.E0 + pot.eta0)) {
        std::ostringstream os;
        os << "turning_point: E out of range [E0, E0+eta0) with eta0=" << pot.eta0;
        throw std::out_of_range(os.str());
    }
    const double s0 = pot.domain.interface_location();
    if (E == pot.E0) return s0;

    // walk left from s0 until V_bar crosses E, then bisect; the largest such
    // root bounds the allowed component touching the interface
    const double s_min = pot.domain.s_min();
    const double start = pot.domain.profile.has_pole()
                             ? s_min + 1e-9 * (pot.domain.s_max() - s_min)
                             : s_min;
    auto g = [&](double s) { return pot.extension(s) - E; };
    const int n = kScanPoints;
    double right = s0;
    double g_right = g(right);  // = E0 - E < 0
    for (int i = 1; i <= n; ++i) {
        const double s = s0 + (start - s0) * static_cast<double>(i) / n;
        const double gs = g(s);
        if (gs == 0.0) return s;
        if ((gs > 0) != (g_right > 0))
            return num::bisect_root(g, s, right, kTurningPointRelTol);
        right = s;
        g_right = gs;
    }
    throw std::out_of_range("turning_point: V_bar never reaches E on the inner side");
}

AllowedRegion allowed_region(const EffectivePotential& pot, double E) {
    AllowedRegion region;
    region.E = E;
    if (E < pot.E0) return region;  // empty, below the infimum

    const double s0 = pot.domain.interface_location();
    if (pot.admissible && E < pot.E0 + pot.eta0) {
        // K_E = [rho_E, s0] (degenerate at E = E0)
        region.intervals.push_back({turning_point(pot, E), s0});
        return region;
    }

    // general sublevel scan with one-sided values at the interface
    auto v = [&](double s) { return s <= s0 ? pot.extension(s) : pot.value_plus(s); };
    const double s_min = pot.domain.s_min(), s_max = pot.domain.s_max();
    const double start = pot.domain.profile.has_pole()
                             ? s_min + 1e-9 * (s_max - s_min)
                             : s_min;
    const int n = 8192;
    double prev_s = start;
    bool prev_in = v(prev_s) <= E;
    double open_at = prev_in ? prev_s : 0.0;
    auto g = [&](double s) { return v(s) - E; };
    for (int i = 1; i <= n; ++i) {
        const double s = start + (s_max - start) * static_cast<double>(i) / n;
        const bool in = v(s) <= E;
        if (in != prev_in) {
            // refine the crossing unless it is the interface jump itself
            double cross;
            if (prev_s < s0 && s > s0 && (pot.extension(s0) <= E) != (pot.value_plus(s0) <= E))
                cross = s0;
            else
                cross = num::bisect_root(g, prev_s, s, kTurningPointRelTol);
            if (in) open_at = cross;
            else region.intervals.push_back({open_at, cross});
        }
        prev_in = in;
        prev_s = s;
    }
    if (prev_in) region.intervals.push_back({open_at, s_max});
    return region;
}

}  // namespace wgm

#include "wgm/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wgm/numerics.hpp"

namespace wgm {

RadialProfile RadialProfile::annulus(double r_inner, double r_outer) {
    if (!(r_inner > 0.0)) throw std::invalid_argument("annulus profile: R0 > 0 violated");
    if (!(r_inner < r_outer)) throw std::invalid_argument("annulus profile: R0 < R2 violated");
    return RadialProfile(ProfileKind::annulus, r_inner, r_outer, false,
                         [](double s) { return std::pair<double, double>{s, 1.0}; });
}

RadialProfile RadialProfile::disk(double length) {
    if (!(length > 0.0)) throw std::invalid_argument("disk profile: L > 0 violated");
    return RadialProfile(ProfileKind::disk, 0.0, length, true,
                         [](double s) { return std::pair<double, double>{s, 1.0}; });
}

RadialProfile RadialProfile::tabulated(std::vector<std::array<double, 2>> samples) {
    if (samples.size() < 2)
        throw std::invalid_argument("tabulated profile: need >= 2 samples");
    std::vector<double> s(samples.size()), r(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        s[i] = samples[i][0];
        r[i] = samples[i][1];
    }
    const bool pole = r.front() == 0.0;
    for (std::size_t i = pole ? 1 : 0; i < r.size(); ++i)
        if (!(r[i] > 0.0)) {
            std::ostringstream os;
            os << "tabulated profile: R(s)>0 violated at s=" << s[i];
            throw std::invalid_argument(os.str());
        }
    auto interp = std::make_shared<num::Pchip>(std::move(s), std::move(r));
    const double lo = interp->x_front(), hi = interp->x_back();
    return RadialProfile(ProfileKind::tabulated, lo, hi, pole,
                         [interp](double x) {
                             return std::pair<double, double>{interp->value(x),
                                                              interp->derivative(x)};
                         });
}

RadialProfile RadialProfile::closed_form(double s_min, double s_max,
                                         std::function<std::pair<double, double>(double)> eval,
                                         bool pole) {
    if (!(s_min < s_max)) throw std::invalid_argument("closed-form profile: s_min < s_max violated");
    return RadialProfile(ProfileKind::closed_form, s_min, s_max, pole, std::move(eval));
}

CoefficientSpec CoefficientSpec::constants(double s0, double c_minus, double c_plus) {
    if (!(c_minus > 0.0)) throw std::invalid_argument("coefficient positivity violated: c_minus <= 0");
    if (!(c_plus > 0.0)) throw std::invalid_argument("coefficient positivity violated: c_plus <= 0");
    return CoefficientSpec(s0, true, [c_minus](double) { return c_minus; },
                           [c_plus](double) { return c_plus; });
}

CoefficientSpec CoefficientSpec::piecewise(double s0, std::function<double(double)> c_minus,
                                           std::function<double(double)> c_plus) {
    return CoefficientSpec(s0, false, std::move(c_minus), std::move(c_plus));
}

DomainSpec build_annulus(double r0, double r1, double r2, double c_minus, double c_plus) {
    if (!(r0 > 0.0)) throw std::invalid_argument("0 < R0 violated");
    if (!(r0 < r1)) throw std::invalid_argument("R0 < R1 violated");
    if (!(r1 < r2)) throw std::invalid_argument("R1 < R2 violated");
    return DomainSpec{RadialProfile::annulus(r0, r2),
                      CoefficientSpec::constants(r1, c_minus, c_plus),
                      InnerBoundary::dirichlet};
}

DomainSpec build_surface(const RadialProfile& profile, double s0, CoefficientSpec coeff) {
    if (!(s0 > profile.s_min() && s0 < profile.s_max()))
        throw std::invalid_argument("interface must be interior: s0 outside (s_min, s_max)");
    if (coeff.interface_location() != s0)
        throw std::invalid_argument("coefficient interface does not match s0");
    return DomainSpec{profile, std::move(coeff),
                      profile.has_pole() ? InnerBoundary::pole : InnerBoundary::dirichlet};
}

DomainSpec build_surface(const RadialProfile& profile, double s0, double c_minus,
                         double c_plus) {
    return build_surface(profile, s0, CoefficientSpec::constants(s0, c_minus, c_plus));
}

std::vector<std::string> validate_domain(const DomainSpec& spec) {
    std::vector<std::string> violations;
    const double s_min = spec.s_min(), s_max = spec.s_max(), s0 = spec.interface_location();

    if (!(s_min < s0 && s0 < s_max))
        violations.push_back("interface not interior: s_min < s0 < s_max violated");

    // positivity of R on (s_min, s_max], sampled
    constexpr int kSamples = 256;
    for (int i = 1; i <= kSamples; ++i) {
        const double s = s_min + (s_max - s_min) * static_cast<double>(i) / kSamples;
        const double r = spec.profile.radius(s);
        if (!(r > 0.0) || !std::isfinite(r)) {
            std::ostringstream os;
            os << "R(s)>0 violated at s=" << s;
            violations.push_back(os.str());
            break;
        }
    }
    if (spec.profile.has_pole()) {
        // R(s)/s must approach a positive limit at the pole
        const double probe = s_min + 1e-6 * (s_max - s_min);
        const double ratio = spec.profile.radius(probe) / (probe - s_min);
        if (!(ratio > 0.0) || !std::isfinite(ratio))
            violations.push_back("pole normalization violated: R(s)/s has no positive limit");
    } else {
        const double r0 = spec.profile.radius(s_min);
        if (!(r0 > 0.0)) violations.push_back("R(s)>0 violated at s=s_min");
    }

    // coefficient bounds on each side, sampled
    bool coeff_ok = true;
    for (int i = 0; i <= kSamples && coeff_ok; ++i) {
        const double t = static_cast<double>(i) / kSamples;
        const double sm = s_min + t * (s0 - s_min);
        const double sp = s0 + t * (s_max - s0);
        if (!(spec.coeff.minus(sm) > 0.0) || !(spec.coeff.plus(sp) > 0.0)) {
            violations.push_back("coefficient positivity violated");
            coeff_ok = false;
        }
    }
    return violations;
}

}  // namespace wgm

#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

// Rotationally symmetric domains with a single coefficient jump across an
// interior interface circle. A domain is a radial profile R(s) on
// [s_min, s_max], an interface location s0, and a piecewise coefficient
// c = c_-(s) for s < s0, c_+(s) for s > s0.

namespace wgm {

enum class ProfileKind { annulus, disk, tabulated, closed_form };

/// Profile R(s): distance to the symmetry axis as a function of arclength.
/// Immutable after construction; evaluators are pure.
class RadialProfile {
public:
    static RadialProfile annulus(double r_inner, double r_outer);
    static RadialProfile disk(double length);
    /// Tabulated [s, R] samples, monotone cubic interpolation. A leading
    /// R = 0 sample marks a pole.
    static RadialProfile tabulated(std::vector<std::array<double, 2>> samples);
    static RadialProfile closed_form(double s_min, double s_max,
                                     std::function<std::pair<double, double>(double)> eval,
                                     bool pole);

    ProfileKind kind() const { return kind_; }
    double s_min() const { return s_min_; }
    double s_max() const { return s_max_; }
    bool has_pole() const { return has_pole_; }

    /// (R(s), R'(s))
    std::pair<double, double> eval(double s) const { return eval_(s); }
    double radius(double s) const { return eval_(s).first; }
    double radius_derivative(double s) const { return eval_(s).second; }

private:
    RadialProfile(ProfileKind kind, double s_min, double s_max, bool pole,
                  std::function<std::pair<double, double>(double)> eval)
        : kind_(kind), s_min_(s_min), s_max_(s_max), has_pole_(pole), eval_(std::move(eval)) {}

    ProfileKind kind_;
    double s_min_, s_max_;
    bool has_pole_;
    std::function<std::pair<double, double>(double)> eval_;
};

/// Coefficient jump across the interface. Constants by default; optionally
/// piecewise-smooth one-sided evaluators.
class CoefficientSpec {
public:
    static CoefficientSpec constants(double s0, double c_minus, double c_plus);
    static CoefficientSpec piecewise(double s0, std::function<double(double)> c_minus,
                                     std::function<double(double)> c_plus);

    double interface_location() const { return s0_; }
    bool piecewise_constant() const { return constant_; }

    /// one-sided evaluators; minus() is valid on [s_min, s0], plus() on [s0, s_max]
    double minus(double s) const { return cminus_(s); }
    double plus(double s) const { return cplus_(s); }
    /// c(s) with the left-sided convention at s = s0
    double value(double s) const { return s <= s0_ ? cminus_(s) : cplus_(s); }

private:
    CoefficientSpec(double s0, bool constant, std::function<double(double)> cm,
                    std::function<double(double)> cp)
        : s0_(s0), constant_(constant), cminus_(std::move(cm)), cplus_(std::move(cp)) {}

    double s0_;
    bool constant_;
    std::function<double(double)> cminus_, cplus_;
};

enum class InnerBoundary { dirichlet, pole };

struct DomainSpec {
    RadialProfile profile;
    CoefficientSpec coeff;
    InnerBoundary inner_boundary;

    double s_min() const { return profile.s_min(); }
    double s_max() const { return profile.s_max(); }
    double interface_location() const { return coeff.interface_location(); }
};

/// Annulus R0 < R1 < R2 with R(s) = s, interface at R1, Dirichlet at both ends.
DomainSpec build_annulus(double r0, double r1, double r2, double c_minus, double c_plus);

/// General surface of revolution with interface at s0 strictly interior.
/// Pole regularity at s_min when the profile has a pole, Dirichlet otherwise.
DomainSpec build_surface(const RadialProfile& profile, double s0, double c_minus,
                         double c_plus);
DomainSpec build_surface(const RadialProfile& profile, double s0, CoefficientSpec coeff);

/// Reports invariant violations (never throws); empty means valid.
std::vector<std::string> validate_domain(const DomainSpec& spec);

}  // namespace wgm

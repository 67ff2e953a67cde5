#pragma once

#include "spherewarp/sphere.hpp"

#include <complex>
#include <string_view>
#include <vector>

namespace spherewarp {

inline constexpr double kMobiusEpsilon = 1e-12;

enum class MobiusClass { identity, elliptic, hyperbolic, loxodromic, parabolic };

std::string_view to_string(MobiusClass c);

// z -> (az + b) / (cz + d) on the extended complex plane.
class MobiusTransform {
public:
    using complex = std::complex<double>;

    // Throws DomainError when |ad - bc| <= kMobiusEpsilon.
    MobiusTransform(complex a, complex b, complex c, complex d);

    static MobiusTransform identity() noexcept;
    // z -> rho z, stored normalized as (sqrt(rho), 0, 0, 1/sqrt(rho)).
    // Throws NonPositiveScale for rho <= 0.
    static MobiusTransform scaling(double rho);

    complex a() const noexcept { return a_; }
    complex b() const noexcept { return b_; }
    complex c() const noexcept { return c_; }
    complex d() const noexcept { return d_; }
    complex determinant() const noexcept { return a_ * d_ - b_ * c_; }

    // Coefficients scaled to ad - bc = 1, sign fixed so that the first
    // nonzero coefficient has nonnegative real part.
    MobiusTransform normalized() const;

    ComplexPoint apply(const ComplexPoint& z) const noexcept;
    bool is_identity() const;
    bool fixes_infinity() const noexcept;

private:
    complex a_, b_, c_, d_;
};

// compose(m1, m2) applies m2 first.
MobiusTransform compose(const MobiusTransform& m1, const MobiusTransform& m2);
MobiusTransform operator*(const MobiusTransform& m1, const MobiusTransform& m2);
MobiusTransform inverse(const MobiusTransform& m);

// Solutions of cz^2 + (d - a)z - b = 0 on the extended plane: one point for
// parabolic maps, two otherwise. Throws IdentityMap for the identity.
std::vector<ComplexPoint> fixed_points(const MobiusTransform& m);

// By the normalized trace, through tr^2 - 4 = (a - d)^2 + 4bc.
MobiusClass classify(const MobiusTransform& m);

// The hyperbolic shrink rho z. Throws NonPositiveScale for rho <= 0.
MobiusTransform hyperbolic_scaling(double rho);

// inverse_stereographic(m(stereographic(p))). At the projection pole this is
// only defined when m fixes infinity; otherwise PoleProjection is thrown.
UnitVector3 sphere_conjugate(const MobiusTransform& m, const UnitVector3& p);

}  // namespace spherewarp

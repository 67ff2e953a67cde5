#include "spherewarp/mobius.hpp"

#include "spherewarp/error.hpp"

#include <algorithm>
#include <cmath>

namespace spherewarp {

using complex = std::complex<double>;

std::string_view to_string(MobiusClass c)
{
    switch (c) {
    case MobiusClass::identity: return "identity";
    case MobiusClass::elliptic: return "elliptic";
    case MobiusClass::hyperbolic: return "hyperbolic";
    case MobiusClass::loxodromic: return "loxodromic";
    case MobiusClass::parabolic: return "parabolic";
    }
    return "unknown";
}

namespace {

// Coefficient is zero relative to the map's own scale (sqrt|det|).
bool negligible(complex x, complex det) noexcept
{
    return std::abs(x) <= kMobiusEpsilon * std::sqrt(std::abs(det));
}

bool nonzero_sign_positive(complex x) noexcept
{
    return x.real() > 0.0 || (x.real() == 0.0 && x.imag() > 0.0);
}

}  // namespace

MobiusTransform::MobiusTransform(complex a, complex b, complex c, complex d) : a_(a), b_(b), c_(c), d_(d)
{
    if (!(std::abs(determinant()) > kMobiusEpsilon)) {
        throw Error(ErrorCode::DomainError, "degenerate Mobius transform (ad - bc = 0)");
    }
}

MobiusTransform MobiusTransform::identity() noexcept
{
    return {1.0, 0.0, 0.0, 1.0};
}

MobiusTransform MobiusTransform::scaling(double rho)
{
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw Error(ErrorCode::NonPositiveScale, "scale factor must be positive");
    }
    const double s = std::sqrt(rho);
    return {s, 0.0, 0.0, 1.0 / s};
}

MobiusTransform MobiusTransform::normalized() const
{
    const complex s = std::sqrt(determinant());
    complex a = a_ / s;
    complex b = b_ / s;
    complex c = c_ / s;
    complex d = d_ / s;
    for (const complex x : {a, b, c, d}) {
        if (std::abs(x) > kMobiusEpsilon) {
            if (!nonzero_sign_positive(x)) {
                a = -a;
                b = -b;
                c = -c;
                d = -d;
            }
            break;
        }
    }
    return {a, b, c, d};
}

ComplexPoint MobiusTransform::apply(const ComplexPoint& z) const noexcept
{
    if (z.is_infinity()) {
        if (fixes_infinity()) {
            return ComplexPoint::infinity();
        }
        return ComplexPoint(a_ / c_);
    }
    const complex w = z.value();
    const complex den = c_ * w + d_;
    if (den == complex(0.0, 0.0)) {
        return ComplexPoint::infinity();
    }
    const complex r = (a_ * w + b_) / den;
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) {
        return ComplexPoint::infinity();
    }
    return ComplexPoint(r);
}

bool MobiusTransform::is_identity() const
{
    const MobiusTransform n = normalized();
    return std::abs(n.a_ - 1.0) <= kMobiusEpsilon && std::abs(n.b_) <= kMobiusEpsilon &&
           std::abs(n.c_) <= kMobiusEpsilon && std::abs(n.d_ - 1.0) <= kMobiusEpsilon;
}

bool MobiusTransform::fixes_infinity() const noexcept
{
    return negligible(c_, determinant());
}

MobiusTransform compose(const MobiusTransform& m1, const MobiusTransform& m2)
{
    return {m1.a() * m2.a() + m1.b() * m2.c(), m1.a() * m2.b() + m1.b() * m2.d(),
            m1.c() * m2.a() + m1.d() * m2.c(), m1.c() * m2.b() + m1.d() * m2.d()};
}

MobiusTransform operator*(const MobiusTransform& m1, const MobiusTransform& m2)
{
    return compose(m1, m2);
}

MobiusTransform inverse(const MobiusTransform& m)
{
    return {m.d(), -m.b(), -m.c(), m.a()};
}

namespace {

// tr^2 - 4 of the normalized matrix, also the fixed-point discriminant.
complex discriminant(const MobiusTransform& n) noexcept
{
    const complex diff = n.a() - n.d();
    return diff * diff + 4.0 * n.b() * n.c();
}

}  // namespace

MobiusClass classify(const MobiusTransform& m)
{
    if (m.is_identity()) {
        return MobiusClass::identity;
    }
    const complex disc = discriminant(m.normalized());
    if (std::abs(disc) <= kMobiusEpsilon) {
        return MobiusClass::parabolic;
    }
    const bool real = std::abs(disc.imag()) <= kMobiusEpsilon * std::max(1.0, std::abs(disc));
    if (real) {
        if (disc.real() > 0.0) {
            return MobiusClass::hyperbolic;
        }
        if (disc.real() >= -4.0) {
            return MobiusClass::elliptic;
        }
    }
    return MobiusClass::loxodromic;
}

std::vector<ComplexPoint> fixed_points(const MobiusTransform& m)
{
    if (m.is_identity()) {
        throw Error(ErrorCode::IdentityMap, "every point is fixed by the identity");
    }
    const MobiusTransform n = m.normalized();
    const bool parabolic = classify(n) == MobiusClass::parabolic;

    if (n.fixes_infinity()) {
        // a z + b = d z
        if (parabolic) {
            return {ComplexPoint::infinity()};
        }
        return {ComplexPoint(n.b() / (n.d() - n.a())), ComplexPoint::infinity()};
    }

    // c z^2 + (d - a) z - b = 0
    const complex qa = n.c();
    const complex qb = n.d() - n.a();
    const complex qc = -n.b();
    if (parabolic) {
        return {ComplexPoint(-qb / (2.0 * qa))};
    }
    const complex root = std::sqrt(discriminant(n));
    // pick the sign that avoids cancellation
    const complex q = std::abs(qb + root) >= std::abs(qb - root) ? -0.5 * (qb + root) : -0.5 * (qb - root);
    const complex z1 = q / qa;
    if (std::abs(q) == 0.0) {
        return {ComplexPoint(z1)};
    }
    return {ComplexPoint(z1), ComplexPoint(qc / q)};
}

MobiusTransform hyperbolic_scaling(double rho)
{
    return MobiusTransform::scaling(rho);
}

UnitVector3 sphere_conjugate(const MobiusTransform& m, const UnitVector3& p)
{
    const double dx = p.x();
    const double dy = p.y();
    const double dz = p.z() - 1.0;
    if (std::sqrt(dx * dx + dy * dy + dz * dz) < kPoleEpsilon) {
        if (m.fixes_infinity()) {
            return {0.0, 0.0, 1.0};
        }
        throw Error(ErrorCode::PoleProjection, "Mobius map moves the projection pole");
    }
    return inverse_stereographic(m.apply(stereographic(p)));
}

}  // namespace spherewarp

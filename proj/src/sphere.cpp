#include "spherewarp/sphere.hpp"

#include "spherewarp/error.hpp"

#include <cmath>

namespace spherewarp {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::PoleProjection: return "PoleProjection";
    case ErrorCode::BehindCamera: return "BehindCamera";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::IdentityMap: return "IdentityMap";
    case ErrorCode::NonPositiveScale: return "NonPositiveScale";
    case ErrorCode::OutOfImage: return "OutOfImage";
    case ErrorCode::NotRepresentable: return "NotRepresentable";
    case ErrorCode::InvalidRequest: return "InvalidRequest";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

UnitVector3::UnitVector3(double x, double y, double z)
{
    const double n = std::sqrt(x * x + y * y + z * z);
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw Error(ErrorCode::DomainError, "cannot normalize a zero or non-finite vector");
    }
    x_ = x / n;
    y_ = y / n;
    z_ = z / n;
}

double geodesic_distance(const UnitVector3& a, const UnitVector3& b) noexcept
{
    const double cx = a.y() * b.z() - a.z() * b.y();
    const double cy = a.z() * b.x() - a.x() * b.z();
    const double cz = a.x() * b.y() - a.y() * b.x();
    return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), a.dot(b));
}

SphericalCoord to_spherical(const UnitVector3& p) noexcept
{
    const double horizontal = std::hypot(p.x(), p.z());
    SphericalCoord s;
    s.altitude = std::atan2(p.y(), horizontal);
    if (horizontal < kPoleEpsilon) {
        s.altitude = p.y() > 0.0 ? kPi / 2.0 : -kPi / 2.0;
        s.azimuth = 0.0;
        return s;
    }
    s.azimuth = std::atan2(p.x(), -p.z());
    if (s.azimuth <= -kPi) {
        s.azimuth = kPi;
    }
    return s;
}

UnitVector3 from_spherical(const SphericalCoord& s) noexcept
{
    const double c = std::cos(s.altitude);
    return {c * std::sin(s.azimuth), std::sin(s.altitude), -c * std::cos(s.azimuth)};
}

ComplexPoint::ComplexPoint(std::complex<double> z) : z_(z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error(ErrorCode::DomainError, "finite complex point must have finite components");
    }
}

std::complex<double> ComplexPoint::value() const
{
    if (infinite_) {
        throw Error(ErrorCode::DomainError, "point at infinity has no finite value");
    }
    return z_;
}

void ViewState::validate() const
{
    if (!std::isfinite(yaw) || !std::isfinite(pitch)) {
        throw Error(ErrorCode::DomainError, "yaw and pitch must be finite");
    }
    if (!(fov > 0.0 && fov < 2.0 * kPi)) {
        throw Error(ErrorCode::DomainError, "fov must lie in (0, 2pi)");
    }
    if (!(fov_max > 0.0 && fov_max < kPi)) {
        throw Error(ErrorCode::DomainError, "fov_max must lie in (0, pi)");
    }
    if (!(aspect > 0.0) || !std::isfinite(aspect)) {
        throw Error(ErrorCode::DomainError, "aspect must be positive");
    }
}

double vertical_fov(double fov, double aspect)
{
    if (!(fov > 0.0 && fov < kPi) || !(aspect > 0.0)) {
        throw Error(ErrorCode::DomainError, "vertical_fov needs fov in (0, pi) and aspect > 0");
    }
    return 2.0 * std::atan(std::tan(fov / 2.0) / aspect);
}

ComplexPoint stereographic(const UnitVector3& p)
{
    const double dx = p.x();
    const double dy = p.y();
    const double dz = p.z() - 1.0;
    if (std::sqrt(dx * dx + dy * dy + dz * dz) < kPoleEpsilon) {
        throw Error(ErrorCode::PoleProjection, "stereographic projection of the pole (0,0,1)");
    }
    const double k = 2.0 / (1.0 - p.z());
    return {k * p.x(), k * p.y()};
}

UnitVector3 inverse_stereographic(const ComplexPoint& z) noexcept
{
    // Beyond this radius r^2 + 4 rounds to r^2 and the lift is the pole.
    constexpr double kHuge = 1e150;
    if (z.is_infinity() || std::abs(z.value()) > kHuge) {
        return {0.0, 0.0, 1.0};
    }
    const double u = z.value().real();
    const double v = z.value().imag();
    const double r2 = u * u + v * v;
    const double den = r2 + 4.0;
    return {4.0 * u / den, 4.0 * v / den, (r2 - 4.0) / den};
}

ViewRotation::ViewRotation(double yaw, double pitch) noexcept
    : cy_(std::cos(-yaw)), sy_(std::sin(-yaw)), cp_(std::cos(-pitch)), sp_(std::sin(-pitch))
{
}

UnitVector3 ViewRotation::to_view(const UnitVector3& p) const noexcept
{
    // about y by -yaw
    const double x1 = cy_ * p.x() - sy_ * p.z();
    const double y1 = p.y();
    const double z1 = sy_ * p.x() + cy_ * p.z();
    // about x by -pitch
    return {x1, cp_ * y1 - sp_ * z1, sp_ * y1 + cp_ * z1};
}

UnitVector3 ViewRotation::to_world(const UnitVector3& p) const noexcept
{
    // transposes of the two rotations, applied in reverse order
    const double x1 = p.x();
    const double y1 = cp_ * p.y() + sp_ * p.z();
    const double z1 = -sp_ * p.y() + cp_ * p.z();
    return {cy_ * x1 + sy_ * z1, y1, -sy_ * x1 + cy_ * z1};
}

UnitVector3 rotate_view(const UnitVector3& p, double yaw, double pitch) noexcept
{
    return ViewRotation(yaw, pitch).to_view(p);
}

UnitVector3 unrotate_view(const UnitVector3& p, double yaw, double pitch) noexcept
{
    return ViewRotation(yaw, pitch).to_world(p);
}

PlanePoint perspective_project(const UnitVector3& p, double fov)
{
    if (p.z() >= -kSphereEpsilon) {
        throw Error(ErrorCode::BehindCamera, "direction is not in front of the viewer");
    }
    const double scale = 1.0 / (-p.z() * std::tan(fov / 2.0));
    return {p.x() * scale, p.y() * scale};
}

UnitVector3 perspective_unproject(const PlanePoint& q, double fov) noexcept
{
    const double t = std::tan(fov / 2.0);
    return {q.u * t, q.v * t, -1.0};
}

}  // namespace spherewarp

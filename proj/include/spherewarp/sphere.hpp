#pragma once

// Viewing-sphere coordinates and the elementary maps between the sphere,
// the extended complex plane and the image plane.
//
// World frame: +y is up, the forward direction (azimuth 0, altitude 0) is -z,
// positive azimuth turns toward +x. After rotate_view the view center sits on
// (0,0,-1), which is also the origin of the stereographic plane; the
// stereographic projection pole is (0,0,1), i.e. straight behind the viewer.

#include <complex>
#include <numbers>

namespace spherewarp {

inline constexpr double kSphereEpsilon = 1e-9;
inline constexpr double kPoleEpsilon = 1e-12;
inline constexpr double kPi = std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

class UnitVector3 {
public:
    // Normalizes (x, y, z). Throws DomainError for a zero or non-finite vector.
    UnitVector3(double x, double y, double z);

    double x() const noexcept { return x_; }
    double y() const noexcept { return y_; }
    double z() const noexcept { return z_; }

    double dot(const UnitVector3& o) const noexcept { return x_ * o.x_ + y_ * o.y_ + z_ * o.z_; }

private:
    double x_, y_, z_;
};

// Great-circle distance in radians; accurate for tiny and near-antipodal pairs.
double geodesic_distance(const UnitVector3& a, const UnitVector3& b) noexcept;

struct SphericalCoord {
    double azimuth = 0.0;   // (-pi, pi]
    double altitude = 0.0;  // [-pi/2, pi/2]
};

// Azimuth is forced to 0 at the poles.
SphericalCoord to_spherical(const UnitVector3& p) noexcept;
UnitVector3 from_spherical(const SphericalCoord& s) noexcept;

// Point of the extended complex plane. Infinity is a tagged state.
class ComplexPoint {
public:
    // Throws DomainError on NaN or infinite components.
    ComplexPoint(std::complex<double> z);
    ComplexPoint(double re, double im) : ComplexPoint(std::complex<double>(re, im)) {}

    static ComplexPoint infinity() noexcept { return ComplexPoint(); }

    bool is_infinity() const noexcept { return infinite_; }
    // Throws DomainError for the point at infinity.
    std::complex<double> value() const;

    friend bool operator==(const ComplexPoint&, const ComplexPoint&) = default;

private:
    ComplexPoint() noexcept : z_(0.0, 0.0), infinite_(true) {}

    std::complex<double> z_;
    bool infinite_ = false;
};

// Normalized image-plane coordinates: the configured horizontal FOV spans
// u in [-1, 1]; v spans [-1/aspect, 1/aspect]. v grows upward.
struct PlanePoint {
    double u = 0.0;
    double v = 0.0;

    friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

struct ViewState {
    double yaw = 0.0;                 // radians
    double pitch = 0.0;               // radians
    double fov = kPi / 2.0;           // horizontal FOV, radians in (0, 2pi)
    double fov_max = kPi / 3.0;       // perspective threshold, radians in (0, pi)
    double aspect = 4.0 / 3.0;        // width / height

    // Throws DomainError when a field is outside its range.
    void validate() const;
};

// Vertical FOV of a rectilinear view with horizontal FOV `fov` (< pi):
// tan(v/2) = tan(fov/2) / aspect.
double vertical_fov(double fov, double aspect);

// (2x/(1-z), 2y/(1-z)). Throws PoleProjection within kPoleEpsilon of (0,0,1).
ComplexPoint stereographic(const UnitVector3& p);

// Infinity lifts to (0,0,1).
UnitVector3 inverse_stereographic(const ComplexPoint& z) noexcept;

// Rotation that carries the view direction (yaw, pitch) onto (0,0,-1):
// first about the vertical axis by -yaw, then about the x axis by -pitch.
class ViewRotation {
public:
    ViewRotation(double yaw, double pitch) noexcept;

    UnitVector3 to_view(const UnitVector3& p) const noexcept;
    UnitVector3 to_world(const UnitVector3& p) const noexcept;

private:
    double cy_, sy_, cp_, sp_;
};

UnitVector3 rotate_view(const UnitVector3& p, double yaw, double pitch) noexcept;
UnitVector3 unrotate_view(const UnitVector3& p, double yaw, double pitch) noexcept;

// Rectilinear projection along -z, scaled so a FOV of `fov` radians spans
// u in [-1, 1]. Throws BehindCamera when z >= -kSphereEpsilon.
PlanePoint perspective_project(const UnitVector3& p, double fov);
UnitVector3 perspective_unproject(const PlanePoint& q, double fov) noexcept;

}  // namespace spherewarp

#pragma once

// Test-only helpers: random generators, a synthetic panorama and independent
// geometric oracles. Nothing here calls into the code paths it is used to
// check, except where noted.

#include "spherewarp/image.hpp"
#include "spherewarp/sphere.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <span>
#include <vector>

namespace spherewarp::testing {

inline constexpr std::uint64_t kSeed = 20261016;

inline UnitVector3 random_unit(std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    for (;;) {
        const double x = g(rng), y = g(rng), z = g(rng);
        if (x * x + y * y + z * z > 1e-6) {
            return {x, y, z};
        }
    }
}

inline double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double distance(const UnitVector3& a, const UnitVector3& b)
{
    return std::sqrt((a.x() - b.x()) * (a.x() - b.x()) + (a.y() - b.y()) * (a.y() - b.y()) +
                     (a.z() - b.z()) * (a.z() - b.z()));
}

inline double distance(const PlanePoint& a, const PlanePoint& b)
{
    return std::hypot(a.u - b.u, a.v - b.v);
}

inline Eigen::Vector3d vec(const UnitVector3& p)
{
    return {p.x(), p.y(), p.z()};
}

// Rotation by `angle` about `axis` (Rodrigues form).
inline Eigen::Matrix3d axis_rotation(const Eigen::Vector3d& axis, double angle)
{
    return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

// World -> view frame as an explicit matrix product: yaw about the vertical
// axis first, then pitch about x, both by the negated angle.
inline Eigen::Matrix3d view_matrix(double yaw, double pitch)
{
    // Eigen's AngleAxis about +y by t maps z toward x (x' = cos t x + sin t z),
    // opposite in sign to the -yaw convention, hence +yaw here.
    return axis_rotation(Eigen::Vector3d::UnitX(), -pitch) * axis_rotation(Eigen::Vector3d::UnitY(), yaw);
}

// Stereographic projection from (0,0,1) onto the plane z = -1, found as a
// ray/plane intersection instead of the closed form.
inline std::array<double, 2> stereographic_by_ray(const UnitVector3& p)
{
    const Eigen::Vector3d pole(0.0, 0.0, 1.0);
    const Eigen::Vector3d dir = vec(p) - pole;
    const double t = (-1.0 - pole.z()) / dir.z();
    const Eigen::Vector3d hit = pole + t * dir;
    return {hit.x(), hit.y()};
}

// Max distance to the best-fit plane through the origin (great-circle fit).
inline double great_circle_residual(std::span<const UnitVector3> pts)
{
    Eigen::Matrix3d scatter = Eigen::Matrix3d::Zero();
    for (const auto& p : pts) {
        scatter += vec(p) * vec(p).transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(scatter);
    const Eigen::Vector3d n = es.eigenvectors().col(0);
    double worst = 0.0;
    for (const auto& p : pts) {
        worst = std::max(worst, std::abs(n.dot(vec(p))));
    }
    return worst;
}

// Max distance of the points to their total-least-squares line.
inline double collinearity_residual(std::span<const PlanePoint> pts)
{
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    for (const auto& q : pts) {
        mean += Eigen::Vector2d(q.u, q.v);
    }
    mean /= static_cast<double>(pts.size());
    Eigen::Matrix2d scatter = Eigen::Matrix2d::Zero();
    for (const auto& q : pts) {
        const Eigen::Vector2d d = Eigen::Vector2d(q.u, q.v) - mean;
        scatter += d * d.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(scatter);
    const Eigen::Vector2d n = es.eigenvectors().col(0);
    double worst = 0.0;
    for (const auto& q : pts) {
        worst = std::max(worst, std::abs(n.dot(Eigen::Vector2d(q.u, q.v) - mean)));
    }
    return worst;
}

// Eccentricity of a closed planar curve, from an algebraic circle fit:
// sqrt(1 - (r_min / r_max)^2) of the radial distances to the fitted center.
inline double fitted_eccentricity(std::span<const std::array<double, 2>> pts)
{
    // normalize for conditioning
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    for (const auto& p : pts) {
        mean += Eigen::Vector2d(p[0], p[1]);
    }
    mean /= static_cast<double>(pts.size());
    double scale = 0.0;
    for (const auto& p : pts) {
        scale = std::max(scale, (Eigen::Vector2d(p[0], p[1]) - mean).norm());
    }
    Eigen::MatrixXd a(pts.size(), 3);
    Eigen::VectorXd b(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const Eigen::Vector2d q = (Eigen::Vector2d(pts[k][0], pts[k][1]) - mean) / scale;
        a(k, 0) = q.x();
        a(k, 1) = q.y();
        a(k, 2) = 1.0;
        b(k) = -(q.x() * q.x() + q.y() * q.y());
    }
    const Eigen::Vector3d sol = a.colPivHouseholderQr().solve(b);
    const Eigen::Vector2d center(-sol(0) / 2.0, -sol(1) / 2.0);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& p : pts) {
        const double r = ((Eigen::Vector2d(p[0], p[1]) - mean) / scale - center).norm();
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return std::sqrt(std::max(0.0, 1.0 - (lo / hi) * (lo / hi)));
}

// Serial, exhaustive Milnor extremes with the spherical law of cosines
// (acos), kept deliberately different from the library's atan2 route.
struct BruteMilnor {
    double sigma_min = std::numeric_limits<double>::infinity();
    double sigma_max = 0.0;
    double delta() const { return std::log(sigma_max / sigma_min); }
};

inline BruteMilnor brute_milnor(std::span<const UnitVector3> sphere, std::span<const PlanePoint> plane)
{
    BruteMilnor out;
    for (std::size_t i = 0; i < sphere.size(); ++i) {
        for (std::size_t j = 0; j < sphere.size(); ++j) {
            if (i == j) {
                continue;
            }
            const double g = std::acos(std::clamp(vec(sphere[i]).dot(vec(sphere[j])), -1.0, 1.0));
            if (g < 1e-6) {
                continue;
            }
            const double s = distance(plane[i], plane[j]) / g;
            out.sigma_min = std::min(out.sigma_min, s);
            out.sigma_max = std::max(out.sigma_max, s);
        }
    }
    return out;
}

// Seam-continuous synthetic panorama: smooth color from the direction plus
// dark graticule lines every 15 degrees.
inline Image make_test_panorama(int width, int height)
{
    Image img(width, height);
    for (int j = 0; j < height; ++j) {
        const double alt = (0.5 - (j + 0.5) / height) * kPi;
        for (int i = 0; i < width; ++i) {
            const double az = ((i + 0.5) / width - 0.5) * 2.0 * kPi;
            const double x = std::cos(alt) * std::sin(az);
            const double y = std::sin(alt);
            const double z = -std::cos(alt) * std::cos(az);
            const double step = deg_to_rad(15.0);
            const double da = std::abs(std::remainder(az, step));
            const double dl = std::abs(std::remainder(alt, step));
            const double line = std::min(1.0, std::min(da, dl) / deg_to_rad(0.4));
            const double shade = 0.35 + 0.65 * line;
            auto channel = [&](double c) {
                return static_cast<std::uint8_t>(std::lround(std::clamp(shade * 127.5 * (1.0 + c), 0.0, 255.0)));
            };
            img.set(i, j, {channel(x), channel(y), channel(0.6 * z + 0.4 * x * y), 255});
        }
    }
    return img;
}

// Smooth, seam-continuous panorama without hard edges.
inline Image make_smooth_panorama(int width, int height)
{
    Image img(width, height);
    for (int j = 0; j < height; ++j) {
        const double alt = (0.5 - (j + 0.5) / height) * kPi;
        for (int i = 0; i < width; ++i) {
            const double az = ((i + 0.5) / width - 0.5) * 2.0 * kPi;
            auto channel = [](double c) {
                return static_cast<std::uint8_t>(std::lround(std::clamp(127.5 * (1.0 + c), 0.0, 255.0)));
            };
            img.set(i, j,
                    {channel(std::cos(alt) * std::sin(az)), channel(std::sin(alt)),
                     channel(std::cos(alt) * std::cos(3.0 * az) * 0.8), 255});
        }
    }
    return img;
}

}  // namespace spherewarp::testing

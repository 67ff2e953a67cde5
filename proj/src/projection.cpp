#include "spherewarp/projection.hpp"

#include "spherewarp/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace spherewarp {

namespace {

constexpr double kPlanarEpsilon = 1e-12;
// Mercator ordinate bound, about 89.9999° of altitude.
constexpr double kMercatorMaxY = 15.0;

double pannini_half_fov_limit(double d)
{
    return d <= 1.0 ? std::acos(-d) : std::acos(-1.0 / d);
}

std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_double(std::string_view key, std::string_view text)
{
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw Error(ErrorCode::DomainError, "bad number for " + std::string(key) + ": '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

std::string_view to_string(ProjectionKind kind)
{
    switch (kind) {
    case ProjectionKind::mobius: return "mobius";
    case ProjectionKind::perspective: return "perspective";
    case ProjectionKind::stereographic: return "stereographic";
    case ProjectionKind::mercator: return "mercator";
    case ProjectionKind::pannini: return "pannini";
    }
    return "unknown";
}

ProjectionKind parse_projection_kind(std::string_view name)
{
    for (const ProjectionKind k : {ProjectionKind::mobius, ProjectionKind::perspective, ProjectionKind::stereographic,
                                   ProjectionKind::mercator, ProjectionKind::pannini}) {
        if (name == to_string(k)) {
            return k;
        }
    }
    throw Error(ErrorCode::DomainError, "unknown projection '" + std::string(name) + "'");
}

double shrink_factor(double fov, double fov_max)
{
    if (!(fov > 0.0 && fov < 2.0 * kPi) || !(fov_max > 0.0 && fov_max < kPi)) {
        throw Error(ErrorCode::DomainError, "shrink_factor needs fov in (0, 2pi) and fov_max in (0, pi)");
    }
    return std::clamp(fov_max / fov, kMinShrink, 1.0);
}

double shrunk_fov(const ViewState& view)
{
    const double rho = shrink_factor(view.fov, view.fov_max);
    if (rho == 1.0) {
        return view.fov;
    }
    // The shrink scales tan(angle/2) about the view center.
    return 4.0 * std::atan(rho * std::tan(view.fov / 4.0));
}

void ProjectionSpec::validate() const
{
    view.validate();
    if (view.fov > kMaxFov) {
        throw Error(ErrorCode::NotRepresentable, "fov above 355 degrees");
    }
    switch (kind) {
    case ProjectionKind::perspective:
        if (view.fov >= kPi - kSphereEpsilon) {
            throw Error(ErrorCode::NotRepresentable, "perspective fov must be below 180 degrees");
        }
        break;
    case ProjectionKind::mobius:
        if (shrunk_fov(view) >= kPi - kSphereEpsilon) {
            throw Error(ErrorCode::NotRepresentable, "shrunk fov reaches 180 degrees; lower fov_max");
        }
        break;
    case ProjectionKind::stereographic:
    case ProjectionKind::mercator:
        break;
    case ProjectionKind::pannini:
        if (!(pannini_d >= 0.0) || !std::isfinite(pannini_d)) {
            throw Error(ErrorCode::DomainError, "pannini_d must be nonnegative");
        }
        if (view.fov / 2.0 >= pannini_half_fov_limit(pannini_d) - kSphereEpsilon) {
            throw Error(ErrorCode::NotRepresentable, "fov too wide for this pannini distance");
        }
        break;
    }
}

std::string to_key_values(const ProjectionSpec& spec)
{
    std::string out = "kind=" + std::string(to_string(spec.kind));
    out += " yaw_deg=" + format_double(rad_to_deg(spec.view.yaw));
    out += " pitch_deg=" + format_double(rad_to_deg(spec.view.pitch));
    out += " fov_deg=" + format_double(rad_to_deg(spec.view.fov));
    out += " fov_max_deg=" + format_double(rad_to_deg(spec.view.fov_max));
    out += " aspect=" + format_double(spec.view.aspect);
    out += " pannini_d=" + format_double(spec.pannini_d);
    return out;
}

ProjectionSpec parse_key_values(std::string_view text)
{
    ProjectionSpec spec;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t end = std::min(text.find_first_of(" ,\t", pos), text.size());
        const std::string_view token = text.substr(pos, end - pos);
        pos = end + 1;
        if (token.empty()) {
            continue;
        }
        const std::size_t eq = token.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorCode::DomainError, "expected key=value, got '" + std::string(token) + "'");
        }
        const std::string_view key = token.substr(0, eq);
        const std::string_view value = token.substr(eq + 1);
        if (key == "kind") {
            spec.kind = parse_projection_kind(value);
        } else if (key == "yaw_deg") {
            spec.view.yaw = deg_to_rad(parse_double(key, value));
        } else if (key == "pitch_deg") {
            spec.view.pitch = deg_to_rad(parse_double(key, value));
        } else if (key == "fov_deg") {
            spec.view.fov = deg_to_rad(parse_double(key, value));
        } else if (key == "fov_max_deg") {
            spec.view.fov_max = deg_to_rad(parse_double(key, value));
        } else if (key == "aspect") {
            spec.view.aspect = parse_double(key, value);
        } else if (key == "pannini_d") {
            spec.pannini_d = parse_double(key, value);
        }
    }
    return spec;
}

Projector::Projector(const ProjectionSpec& spec)
    : spec_(spec), rotation_(spec.view.yaw, spec.view.pitch), shrink_(MobiusTransform::identity()),
      expand_(MobiusTransform::identity())
{
    spec_.validate();
    const ViewState& view = spec_.view;
    switch (spec_.kind) {
    case ProjectionKind::perspective:
        plane_fov_ = view.fov;
        break;
    case ProjectionKind::mobius:
        rho_ = shrink_factor(view.fov, view.fov_max);
        plane_fov_ = shrunk_fov(view);
        shrink_ = hyperbolic_scaling(rho_);
        expand_ = inverse(shrink_);
        break;
    case ProjectionKind::stereographic:
        edge_ = 2.0 * std::tan(view.fov / 4.0);
        break;
    case ProjectionKind::mercator:
        edge_ = view.fov / 2.0;
        break;
    case ProjectionKind::pannini: {
        const double half = view.fov / 2.0;
        edge_ = (spec_.pannini_d + 1.0) / (spec_.pannini_d + std::cos(half)) * std::sin(half);
        break;
    }
    }
}

PlanePoint Projector::project(const UnitVector3& p) const
{
    return project_view(rotation_.to_view(p));
}

UnitVector3 Projector::unproject(const PlanePoint& q) const
{
    if (auto p = try_unproject(q)) {
        return *p;
    }
    throw Error(ErrorCode::OutOfImage, "plane point outside the " + std::string(to_string(spec_.kind)) + " image");
}

std::optional<UnitVector3> Projector::try_unproject(const PlanePoint& q) const
{
    if (!std::isfinite(q.u) || !std::isfinite(q.v)) {
        return std::nullopt;
    }
    if (auto v = unproject_view(q)) {
        return rotation_.to_world(*v);
    }
    return std::nullopt;
}

PlanePoint Projector::project_view(const UnitVector3& v) const
{
    switch (spec_.kind) {
    case ProjectionKind::perspective:
        return perspective_project(v, plane_fov_);
    case ProjectionKind::mobius: {
        if (rho_ == 1.0) {
            return perspective_project(v, plane_fov_);
        }
        if (v.z() >= 1.0 - kPoleEpsilon) {
            throw Error(ErrorCode::BehindCamera, "point opposite the view center");
        }
        return perspective_project(sphere_conjugate(shrink_, v), plane_fov_);
    }
    case ProjectionKind::stereographic: {
        const std::complex<double> z = stereographic(v).value();
        return {z.real() / edge_, z.imag() / edge_};
    }
    case ProjectionKind::mercator: {
        const double horizontal = std::hypot(v.x(), v.z());
        if (horizontal < kPoleEpsilon) {
            throw Error(ErrorCode::DomainError, "mercator is undefined at altitude +-90 degrees");
        }
        const double azimuth = std::atan2(v.x(), -v.z());
        return {azimuth / edge_, std::asinh(v.y() / horizontal) / edge_};
    }
    case ProjectionKind::pannini: {
        const double horizontal = std::hypot(v.x(), v.z());
        if (horizontal < kPoleEpsilon) {
            throw Error(ErrorCode::DomainError, "pannini is undefined at altitude +-90 degrees");
        }
        const double sin_t = v.x() / horizontal;
        const double cos_t = -v.z() / horizontal;
        const double den = spec_.pannini_d + cos_t;
        if (den <= kPlanarEpsilon) {
            throw Error(ErrorCode::DomainError, "pannini is undefined where cos(theta) = -d");
        }
        const double h = (spec_.pannini_d + 1.0) / den;
        return {h * sin_t / edge_, h * (v.y() / horizontal) / edge_};
    }
    }
    throw Error(ErrorCode::DomainError, "unknown projection kind");
}

std::optional<UnitVector3> Projector::unproject_view(const PlanePoint& q) const
{
    switch (spec_.kind) {
    case ProjectionKind::perspective:
        return perspective_unproject(q, plane_fov_);
    case ProjectionKind::mobius: {
        const UnitVector3 s = perspective_unproject(q, plane_fov_);
        if (rho_ == 1.0) {
            return s;
        }
        return sphere_conjugate(expand_, s);
    }
    case ProjectionKind::stereographic:
        return inverse_stereographic(ComplexPoint(q.u * edge_, q.v * edge_));
    case ProjectionKind::mercator: {
        const double azimuth = q.u * edge_;
        const double y = q.v * edge_;
        if (std::abs(azimuth) > kPi || std::abs(y) > kMercatorMaxY) {
            return std::nullopt;
        }
        return from_spherical({azimuth, std::atan(std::sinh(y))});
    }
    case ProjectionKind::pannini: {
        const double d = spec_.pannini_d;
        const double s = q.u * edge_ / (d + 1.0);
        const double arg = s * d / std::sqrt(1.0 + s * s);
        if (std::abs(arg) > 1.0) {
            return std::nullopt;
        }
        const double theta = std::atan(s) + std::asin(arg);
        const double cos_t = std::cos(theta);
        const double den = d + cos_t;
        if (den <= kPlanarEpsilon) {
            return std::nullopt;
        }
        const double h = (d + 1.0) / den;
        const double tan_lat = q.v * edge_ / h;
        return UnitVector3(std::sin(theta), tan_lat, -cos_t);
    }
    }
    throw Error(ErrorCode::DomainError, "unknown projection kind");
}

PlanePoint mobius_forward(const UnitVector3& p, const ViewState& view)
{
    return Projector({ProjectionKind::mobius, view, 1.0}).project(p);
}

UnitVector3 mobius_inverse(const PlanePoint& q, const ViewState& view)
{
    return Projector({ProjectionKind::mobius, view, 1.0}).unproject(q);
}

PlanePoint project(const ProjectionSpec& spec, const UnitVector3& p)
{
    return Projector(spec).project(p);
}

UnitVector3 unproject(const ProjectionSpec& spec, const PlanePoint& q)
{
    return Projector(spec).unproject(q);
}

}  // namespace spherewarp

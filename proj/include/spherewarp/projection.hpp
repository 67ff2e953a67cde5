#pragma once

#include "spherewarp/mobius.hpp"
#include "spherewarp/sphere.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace spherewarp {

enum class ProjectionKind { mobius, perspective, stereographic, mercator, pannini };

std::string_view to_string(ProjectionKind kind);
// Throws DomainError for an unknown name.
ProjectionKind parse_projection_kind(std::string_view name);

// Widest FOV accepted by any projection.
inline constexpr double kMaxFov = deg_to_rad(355.0);
// Lower clamp of the shrink factor (half of 1/240).
inline constexpr double kMinShrink = 1.0 / 480.0;

struct ProjectionSpec {
    ProjectionKind kind = ProjectionKind::mobius;
    ViewState view;
    double pannini_d = 1.0;

    // Throws DomainError for out-of-range parameters and NotRepresentable when
    // the requested FOV cannot be drawn by this kind of projection.
    void validate() const;

    friend bool operator==(const ProjectionSpec&, const ProjectionSpec&) = default;
};

// Flat "key=value" form with keys kind, yaw_deg, pitch_deg, fov_deg,
// fov_max_deg, aspect, pannini_d, separated by single spaces.
std::string to_key_values(const ProjectionSpec& spec);
// Accepts space- or comma-separated pairs; missing keys keep their defaults.
// Unknown keys are ignored so records with extra fields parse.
ProjectionSpec parse_key_values(std::string_view text);

// rho = min(1, fov_max / fov), clamped below at kMinShrink.
// Throws DomainError unless fov is in (0, 2pi) and fov_max in (0, pi).
double shrink_factor(double fov, double fov_max);

// Angle subtended, after the shrink, by the configured horizontal FOV. This
// is the FOV handed to the final perspective projection so that the FOV edge
// lands on |u| = 1. Equals view.fov when no shrink happens.
double shrunk_fov(const ViewState& view);

// rotate -> shrink about the view center -> perspective. Throws BehindCamera
// for directions that land outside the front hemisphere after the shrink.
PlanePoint mobius_forward(const UnitVector3& p, const ViewState& view);
UnitVector3 mobius_inverse(const PlanePoint& q, const ViewState& view);

// Precomputes the per-spec constants once. project/unproject are reentrant.
class Projector {
public:
    // Validates the spec.
    explicit Projector(const ProjectionSpec& spec);

    const ProjectionSpec& spec() const noexcept { return spec_; }

    PlanePoint project(const UnitVector3& p) const;
    // Throws OutOfImage when q has no preimage.
    UnitVector3 unproject(const PlanePoint& q) const;
    // Same as unproject, with nullopt in place of OutOfImage.
    std::optional<UnitVector3> try_unproject(const PlanePoint& q) const;

private:
    PlanePoint project_view(const UnitVector3& v) const;
    std::optional<UnitVector3> unproject_view(const PlanePoint& q) const;

    ProjectionSpec spec_;
    ViewRotation rotation_;
    double rho_ = 1.0;
    double plane_fov_ = 0.0;
    double edge_ = 1.0;
    MobiusTransform shrink_;
    MobiusTransform expand_;
};

PlanePoint project(const ProjectionSpec& spec, const UnitVector3& p);
UnitVector3 unproject(const ProjectionSpec& spec, const PlanePoint& q);

}  // namespace spherewarp

#pragma once

#include "spherewarp/projection.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace spherewarp {

// Pair sets above this size are replaced by kSampledPairs random pairs.
inline constexpr std::size_t kMaxExhaustivePairs = 10'000'000;
inline constexpr std::size_t kSampledPairs = 10'000'000;
inline constexpr std::uint64_t kPairSeed = 0x5eed'0f'd157'0a11ULL;
// Pairs closer than this on the sphere are skipped.
inline constexpr double kMinGeodesic = 1e-9;

// Milnor distortion over pairwise scales sigma = planar / geodesic distance.
struct DistortionReport {
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    double delta = 0.0;  // ln(sigma_max / sigma_min)
    std::size_t pair_count = 0;
    int grid_n = 0;
    double fov = 0.0;    // radians
};

using ProjectionFn = std::function<PlanePoint(const UnitVector3&)>;

// grid_n rings (angular radius fov/2 * k/grid_n, k = 1..grid_n) times grid_n
// evenly spaced spokes around the view center, in world coordinates. The grid
// for 2n contains the grid for n.
std::vector<UnitVector3> cap_graticule(const ViewState& view, int grid_n);

// Extremes of planar/geodesic over all pairs (or the fixed-seed sample when
// the pair count exceeds kMaxExhaustivePairs). workers == 0 picks the default.
DistortionReport milnor_from_samples(std::span<const UnitVector3> sphere, std::span<const PlanePoint> plane,
                                     unsigned workers = 0);

// Throws DomainError when grid_n < 2 or any grid point cannot be projected.
DistortionReport milnor_distortion(const ProjectionFn& projection, const ViewState& view, int grid_n,
                                   unsigned workers = 0);
DistortionReport milnor_distortion(const ProjectionSpec& spec, int grid_n, unsigned workers = 0);

}  // namespace spherewarp

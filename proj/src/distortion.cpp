#include "spherewarp/distortion.hpp"

#include "spherewarp/error.hpp"
#include "spherewarp/render.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace spherewarp {

namespace {

constexpr std::size_t kSampleChunk = 1 << 16;

struct Extremes {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    std::size_t count = 0;

    void add(const UnitVector3& a, const UnitVector3& b, const PlanePoint& pa, const PlanePoint& pb) noexcept
    {
        const double g = geodesic_distance(a, b);
        if (g < kMinGeodesic) {
            return;
        }
        const double sigma = std::hypot(pa.u - pb.u, pa.v - pb.v) / g;
        lo = std::min(lo, sigma);
        hi = std::max(hi, sigma);
        ++count;
    }

    void merge(const Extremes& o) noexcept
    {
        lo = std::min(lo, o.lo);
        hi = std::max(hi, o.hi);
        count += o.count;
    }
};

template <typename Task>
Extremes run_parallel(std::size_t tasks, unsigned workers, Task&& task)
{
    workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(tasks, 1)));
    std::vector<Extremes> partial(workers);
    std::atomic<std::size_t> next{0};
    auto work = [&](unsigned w) {
        for (std::size_t t = next++; t < tasks; t = next++) {
            task(t, partial[w]);
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
        work(0);
    }
    Extremes total;
    for (const Extremes& e : partial) {
        total.merge(e);
    }
    return total;
}

}  // namespace

std::vector<UnitVector3> cap_graticule(const ViewState& view, int grid_n)
{
    if (grid_n < 2) {
        throw Error(ErrorCode::DomainError, "grid_n must be at least 2");
    }
    const ViewRotation rotation(view.yaw, view.pitch);
    std::vector<UnitVector3> points;
    points.reserve(static_cast<std::size_t>(grid_n) * grid_n);
    for (int ring = 1; ring <= grid_n; ++ring) {
        const double radius = view.fov / 2.0 * ring / grid_n;
        const double sr = std::sin(radius);
        const double cr = std::cos(radius);
        for (int spoke = 0; spoke < grid_n; ++spoke) {
            const double psi = 2.0 * kPi * spoke / grid_n;
            points.push_back(rotation.to_world({sr * std::cos(psi), sr * std::sin(psi), -cr}));
        }
    }
    return points;
}

DistortionReport milnor_from_samples(std::span<const UnitVector3> sphere, std::span<const PlanePoint> plane,
                                     unsigned workers)
{
    if (sphere.size() != plane.size() || sphere.size() < 2) {
        throw Error(ErrorCode::DomainError, "need at least two matched sphere/plane samples");
    }
    if (workers == 0) {
        workers = default_worker_count();
    }
    const std::size_t n = sphere.size();
    const std::size_t pairs = n * (n - 1) / 2;

    Extremes total;
    if (pairs <= kMaxExhaustivePairs) {
        total = run_parallel(n - 1, workers, [&](std::size_t i, Extremes& acc) {
            for (std::size_t j = i + 1; j < n; ++j) {
                acc.add(sphere[i], sphere[j], plane[i], plane[j]);
            }
        });
    } else {
        const std::size_t chunks = (kSampledPairs + kSampleChunk - 1) / kSampleChunk;
        total = run_parallel(chunks, workers, [&](std::size_t c, Extremes& acc) {
            std::seed_seq seq{static_cast<std::uint32_t>(kPairSeed), static_cast<std::uint32_t>(kPairSeed >> 32),
                              static_cast<std::uint32_t>(c)};
            std::mt19937_64 rng(seq);
            std::uniform_int_distribution<std::size_t> pick(0, n - 1);
            const std::size_t count = std::min(kSampleChunk, kSampledPairs - c * kSampleChunk);
            for (std::size_t k = 0; k < count; ++k) {
                const std::size_t i = pick(rng);
                std::size_t j = pick(rng);
                while (j == i) {
                    j = pick(rng);
                }
                acc.add(sphere[i], sphere[j], plane[i], plane[j]);
            }
        });
    }
    if (total.count == 0) {
        throw Error(ErrorCode::DomainError, "no non-degenerate pairs");
    }
    DistortionReport report;
    report.sigma_min = total.lo;
    report.sigma_max = total.hi;
    report.delta = std::log(total.hi / total.lo);
    report.pair_count = total.count;
    return report;
}

DistortionReport milnor_distortion(const ProjectionFn& projection, const ViewState& view, int grid_n,
                                   unsigned workers)
{
    const std::vector<UnitVector3> sphere = cap_graticule(view, grid_n);
    std::vector<PlanePoint> plane;
    plane.reserve(sphere.size());
    for (const UnitVector3& p : sphere) {
        try {
            plane.push_back(projection(p));
        } catch (const Error& e) {
            throw Error(ErrorCode::DomainError, std::string("grid point cannot be projected (") + e.what() + ")");
        }
    }
    DistortionReport report = milnor_from_samples(sphere, plane, workers);
    report.grid_n = grid_n;
    report.fov = view.fov;
    return report;
}

DistortionReport milnor_distortion(const ProjectionSpec& spec, int grid_n, unsigned workers)
{
    const Projector projector(spec);
    return milnor_distortion([&](const UnitVector3& p) { return projector.project(p); }, spec.view, grid_n,
                             workers);
}

}  // namespace spherewarp

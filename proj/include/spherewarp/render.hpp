#pragma once

#include "spherewarp/image.hpp"
#include "spherewarp/projection.hpp"

#include <cstddef>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace spherewarp {

enum class Filter { nearest, bilinear };

std::string_view to_string(Filter f);
Filter parse_filter(std::string_view name);

struct RenderRequest {
    ProjectionSpec spec;
    int out_width = 1024;
    int out_height = 768;
    Filter filter = Filter::bilinear;

    // Throws InvalidRequest (bad dimensions, aspect mismatch) or the spec's
    // own validation error.
    void validate() const;
};

// Output pixel center (i, j) in plane coordinates.
PlanePoint pixel_to_plane(int i, int j, int width, int height, double aspect) noexcept;

// Bilinear filtering wraps across the azimuth seam and clamps at the poles.
Color sample(const EquirectImage& img, const UnitVector3& dir, Filter filter) noexcept;

// Worker count from SPHEREWARP_THREADS, else the hardware concurrency.
unsigned default_worker_count();

// Renders rows [row_begin, row_end) of `out`, which must already have the
// projector's output size. Pixels without a preimage become opaque black.
void render_rows(const EquirectImage& img, const Projector& projector, Filter filter, Image& out, int row_begin,
                 int row_end);

// workers == 0 selects default_worker_count().
Image render(const EquirectImage& img, const RenderRequest& req, unsigned workers = 0);

struct TestVector {
    UnitVector3 dir;
    PlanePoint plane;
};

// Record 0 is the view center; the rest follow a Halton (2, 3) sequence over
// 95% of the output frame, starting at a fixed index.
std::vector<TestVector> export_test_vectors(const ProjectionSpec& spec, std::size_t n);

// One line: the spec's key-values followed by dir_x dir_y dir_z u v, all
// printed with 17 significant digits.
std::string format_test_vector(const ProjectionSpec& spec, const TestVector& record);
void write_test_vectors(std::ostream& out, const ProjectionSpec& spec, const std::vector<TestVector>& records);

struct ParsedTestVector {
    ProjectionSpec spec;
    TestVector record;
};

// Throws DomainError when a field is missing or malformed.
ParsedTestVector parse_test_vector(std::string_view line);

}  // namespace spherewarp

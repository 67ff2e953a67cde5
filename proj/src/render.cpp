#include "spherewarp/render.hpp"

#include "spherewarp/error.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <ostream>
#include <string>
#include <thread>

namespace spherewarp {

namespace {

constexpr int kRowsPerChunk = 8;
constexpr std::size_t kHaltonStart = 409;
constexpr double kHaltonCoverage = 0.95;

int wrap(int i, int n) noexcept
{
    const int r = i % n;
    return r < 0 ? r + n : r;
}

std::uint8_t quantize(double c) noexcept
{
    return static_cast<std::uint8_t>(std::clamp(std::floor(c + 0.5), 0.0, 255.0));
}

double radical_inverse(std::size_t k, unsigned base) noexcept
{
    double inv = 1.0 / base;
    double f = inv;
    double r = 0.0;
    while (k > 0) {
        r += f * static_cast<double>(k % base);
        k /= base;
        f *= inv;
    }
    return r;
}

}  // namespace

std::string_view to_string(Filter f)
{
    return f == Filter::nearest ? "nearest" : "bilinear";
}

Filter parse_filter(std::string_view name)
{
    if (name == "nearest") {
        return Filter::nearest;
    }
    if (name == "bilinear") {
        return Filter::bilinear;
    }
    throw Error(ErrorCode::DomainError, "unknown filter '" + std::string(name) + "'");
}

void RenderRequest::validate() const
{
    if (out_width < 1 || out_height < 1) {
        throw Error(ErrorCode::InvalidRequest, "output dimensions must be at least 1");
    }
    const double aspect = static_cast<double>(out_width) / out_height;
    if (std::abs(spec.view.aspect - aspect) > 1e-6) {
        throw Error(ErrorCode::InvalidRequest, "spec aspect does not match output width/height");
    }
    spec.validate();
}

PlanePoint pixel_to_plane(int i, int j, int width, int height, double aspect) noexcept
{
    return {2.0 * (i + 0.5) / width - 1.0, (1.0 - 2.0 * (j + 0.5) / height) / aspect};
}

Color sample(const EquirectImage& img, const UnitVector3& dir, Filter filter) noexcept
{
    const Image& src = img.image();
    const int w = src.width();
    const int h = src.height();
    double fx = 0.0;
    double fy = 0.0;
    img.pixel_position(to_spherical(dir), fx, fy);

    if (filter == Filter::nearest) {
        const int i = wrap(static_cast<int>(std::floor(fx + 0.5)), w);
        const int j = std::clamp(static_cast<int>(std::floor(fy + 0.5)), 0, h - 1);
        return src.at(i, j);
    }

    const double x0f = std::floor(fx);
    const double y0f = std::floor(fy);
    const double tx = fx - x0f;
    const double ty = fy - y0f;
    const int x0 = wrap(static_cast<int>(x0f), w);
    const int x1 = wrap(static_cast<int>(x0f) + 1, w);
    const int y0 = std::clamp(static_cast<int>(y0f), 0, h - 1);
    const int y1 = std::clamp(static_cast<int>(y0f) + 1, 0, h - 1);

    const std::uint8_t* p00 = src.row(y0) + x0 * 4;
    const std::uint8_t* p10 = src.row(y0) + x1 * 4;
    const std::uint8_t* p01 = src.row(y1) + x0 * 4;
    const std::uint8_t* p11 = src.row(y1) + x1 * 4;
    const double w00 = (1.0 - tx) * (1.0 - ty);
    const double w10 = tx * (1.0 - ty);
    const double w01 = (1.0 - tx) * ty;
    const double w11 = tx * ty;
    std::uint8_t out[4];
    for (int c = 0; c < 4; ++c) {
        out[c] = quantize(w00 * p00[c] + w10 * p10[c] + w01 * p01[c] + w11 * p11[c]);
    }
    return {out[0], out[1], out[2], out[3]};
}

unsigned default_worker_count()
{
    if (const char* env = std::getenv("SPHEREWARP_THREADS")) {
        unsigned n = 0;
        const char* end = env + std::char_traits<char>::length(env);
        const auto [ptr, ec] = std::from_chars(env, end, n);
        if (ec == std::errc() && ptr == end && n > 0) {
            return n;
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void render_rows(const EquirectImage& img, const Projector& projector, Filter filter, Image& out, int row_begin,
                 int row_end)
{
    const int w = out.width();
    const int h = out.height();
    const double aspect = projector.spec().view.aspect;
    const Color black{0, 0, 0, 255};
    for (int j = row_begin; j < row_end; ++j) {
        for (int i = 0; i < w; ++i) {
            const auto dir = projector.try_unproject(pixel_to_plane(i, j, w, h, aspect));
            out.set(i, j, dir ? sample(img, *dir, filter) : black);
        }
    }
}

Image render(const EquirectImage& img, const RenderRequest& req, unsigned workers)
{
    req.validate();
    const Projector projector(req.spec);
    Image out(req.out_width, req.out_height, Color{0, 0, 0, 255});
    if (workers == 0) {
        workers = default_worker_count();
    }
    const int chunks = (req.out_height + kRowsPerChunk - 1) / kRowsPerChunk;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(chunks));
    if (workers <= 1) {
        render_rows(img, projector, req.filter, out, 0, req.out_height);
        return out;
    }

    std::atomic<int> next{0};
    auto work = [&] {
        for (int c = next++; c < chunks; c = next++) {
            const int begin = c * kRowsPerChunk;
            render_rows(img, projector, req.filter, out, begin, std::min(begin + kRowsPerChunk, req.out_height));
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (unsigned t = 1; t < workers; ++t) {
        pool.emplace_back(work);
    }
    work();
    return out;
}

std::vector<TestVector> export_test_vectors(const ProjectionSpec& spec, std::size_t n)
{
    if (n < 1) {
        throw Error(ErrorCode::InvalidRequest, "need at least one test vector");
    }
    const Projector projector(spec);
    const double aspect = spec.view.aspect;
    std::vector<TestVector> records;
    records.reserve(n);
    const UnitVector3 center = projector.unproject({0.0, 0.0});
    records.push_back({center, projector.project(center)});
    for (std::size_t k = kHaltonStart; records.size() < n; ++k) {
        const PlanePoint q{kHaltonCoverage * (2.0 * radical_inverse(k, 2) - 1.0),
                           kHaltonCoverage * (2.0 * radical_inverse(k, 3) - 1.0) / aspect};
        const auto dir = projector.try_unproject(q);
        if (!dir) {
            continue;
        }
        records.push_back({*dir, projector.project(*dir)});
    }
    return records;
}

std::string format_test_vector(const ProjectionSpec& spec, const TestVector& record)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, " dir_x=%.17g dir_y=%.17g dir_z=%.17g u=%.17g v=%.17g", record.dir.x(),
                  record.dir.y(), record.dir.z(), record.plane.u, record.plane.v);
    return to_key_values(spec) + buf;
}

void write_test_vectors(std::ostream& out, const ProjectionSpec& spec, const std::vector<TestVector>& records)
{
    for (const TestVector& r : records) {
        out << format_test_vector(spec, r) << '\n';
    }
}

ParsedTestVector parse_test_vector(std::string_view line)
{
    std::map<std::string, double, std::less<>> fields;
    std::size_t pos = 0;
    while (pos < line.size()) {
        const std::size_t end = std::min(line.find(' ', pos), line.size());
        const std::string_view token = line.substr(pos, end - pos);
        pos = end + 1;
        const std::size_t eq = token.find('=');
        if (eq == std::string_view::npos) {
            continue;
        }
        const std::string_view key = token.substr(0, eq);
        if (key != "dir_x" && key != "dir_y" && key != "dir_z" && key != "u" && key != "v") {
            continue;
        }
        const std::string_view text = token.substr(eq + 1);
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            throw Error(ErrorCode::DomainError, "bad value for " + std::string(key));
        }
        fields.emplace(std::string(key), value);
    }
    for (const char* key : {"dir_x", "dir_y", "dir_z", "u", "v"}) {
        if (!fields.contains(key)) {
            throw Error(ErrorCode::DomainError, std::string("test vector missing ") + key);
        }
    }
    return {parse_key_values(line),
            {UnitVector3(fields["dir_x"], fields["dir_y"], fields["dir_z"]), {fields["u"], fields["v"]}}};
}

}  // namespace spherewarp

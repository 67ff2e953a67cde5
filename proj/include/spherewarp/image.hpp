#pragma once

#include "spherewarp/sphere.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace spherewarp {

struct Color {
    std::uint8_t r = 0, g = 0, b = 0, a = 255;

    friend bool operator==(const Color&, const Color&) = default;
};

// 8-bit RGBA raster, row-major, row 0 at the top.
class Image {
public:
    Image() = default;
    // Throws InvalidRequest for non-positive dimensions.
    Image(int width, int height, Color fill = {});

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    bool empty() const noexcept { return pixels_.empty(); }

    Color at(int i, int j) const noexcept;
    void set(int i, int j, Color c) noexcept;

    std::uint8_t* row(int j) noexcept { return pixels_.data() + static_cast<std::size_t>(j) * width_ * 4; }
    const std::uint8_t* row(int j) const noexcept
    {
        return pixels_.data() + static_cast<std::size_t>(j) * width_ * 4;
    }
    const std::vector<std::uint8_t>& bytes() const noexcept { return pixels_; }

    friend bool operator==(const Image&, const Image&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> pixels_;
};

// PNG or JPEG (anything OpenCV decodes). Throws Io on failure.
Image load_image(const std::string& path);
// Writes a PNG. Throws Io on failure.
void save_png(const std::string& path, const Image& image);

// Equirectangular panorama. Pixel (i, j) has its center at
//   azimuth  = ((i + 0.5) / width - 0.5) * 2pi
//   altitude = (0.5 - (j + 0.5) / height) * pi
// Azimuth wraps horizontally; rows clamp at the poles.
class EquirectImage {
public:
    explicit EquirectImage(Image image);

    const Image& image() const noexcept { return image_; }
    int width() const noexcept { return image_.width(); }
    int height() const noexcept { return image_.height(); }

    SphericalCoord pixel_center(int i, int j) const noexcept;
    // Fractional pixel coordinates; integer values are pixel centers.
    void pixel_position(const SphericalCoord& s, double& fx, double& fy) const noexcept;

private:
    Image image_;
};

}  // namespace spherewarp

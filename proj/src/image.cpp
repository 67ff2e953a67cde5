#include "spherewarp/image.hpp"

#include "spherewarp/error.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace spherewarp {

Image::Image(int width, int height, Color fill) : width_(width), height_(height)
{
    if (width <= 0 || height <= 0) {
        throw Error(ErrorCode::InvalidRequest, "image dimensions must be positive");
    }
    pixels_.resize(static_cast<std::size_t>(width) * height * 4);
    for (std::size_t k = 0; k < pixels_.size(); k += 4) {
        pixels_[k] = fill.r;
        pixels_[k + 1] = fill.g;
        pixels_[k + 2] = fill.b;
        pixels_[k + 3] = fill.a;
    }
}

Color Image::at(int i, int j) const noexcept
{
    const std::uint8_t* p = row(j) + static_cast<std::size_t>(i) * 4;
    return {p[0], p[1], p[2], p[3]};
}

void Image::set(int i, int j, Color c) noexcept
{
    std::uint8_t* p = row(j) + static_cast<std::size_t>(i) * 4;
    p[0] = c.r;
    p[1] = c.g;
    p[2] = c.b;
    p[3] = c.a;
}

Image load_image(const std::string& path)
{
    cv::Mat raw;
    try {
        raw = cv::imread(path, cv::IMREAD_UNCHANGED);
    } catch (const cv::Exception& e) {
        throw Error(ErrorCode::Io, "cannot decode image '" + path + "': " + e.what());
    }
    if (raw.empty()) {
        throw Error(ErrorCode::Io, "cannot decode image '" + path + "'");
    }
    cv::Mat bytes = raw;
    if (raw.depth() != CV_8U) {
        // 16-bit PNGs: keep the high byte
        raw.convertTo(bytes, CV_8U, raw.depth() == CV_16U ? 1.0 / 257.0 : 255.0);
    }
    const int channels = bytes.channels();
    if (channels != 1 && channels != 3 && channels != 4) {
        throw Error(ErrorCode::Io, "unsupported channel count in '" + path + "'");
    }
    Image out(bytes.cols, bytes.rows);
    for (int j = 0; j < bytes.rows; ++j) {
        const std::uint8_t* src = bytes.ptr<std::uint8_t>(j);
        std::uint8_t* dst = out.row(j);
        for (int i = 0; i < bytes.cols; ++i, src += channels, dst += 4) {
            if (channels == 1) {
                dst[0] = dst[1] = dst[2] = src[0];
                dst[3] = 255;
            } else {
                // OpenCV stores BGR(A)
                dst[0] = src[2];
                dst[1] = src[1];
                dst[2] = src[0];
                dst[3] = channels == 4 ? src[3] : 255;
            }
        }
    }
    return out;
}

void save_png(const std::string& path, const Image& image)
{
    if (image.empty()) {
        throw Error(ErrorCode::Io, "refusing to write an empty image");
    }
    cv::Mat bgra(image.height(), image.width(), CV_8UC4);
    for (int j = 0; j < image.height(); ++j) {
        const std::uint8_t* src = image.row(j);
        std::uint8_t* dst = bgra.ptr<std::uint8_t>(j);
        for (int i = 0; i < image.width(); ++i, src += 4, dst += 4) {
            dst[0] = src[2];
            dst[1] = src[1];
            dst[2] = src[0];
            dst[3] = src[3];
        }
    }
    bool ok = false;
    try {
        ok = cv::imwrite(path, bgra);
    } catch (const cv::Exception& e) {
        throw Error(ErrorCode::Io, "cannot write '" + path + "': " + e.what());
    }
    if (!ok) {
        throw Error(ErrorCode::Io, "cannot write '" + path + "'");
    }
}

EquirectImage::EquirectImage(Image image) : image_(std::move(image))
{
    if (image_.empty()) {
        throw Error(ErrorCode::InvalidRequest, "empty panorama");
    }
}

SphericalCoord EquirectImage::pixel_center(int i, int j) const noexcept
{
    return {((i + 0.5) / width() - 0.5) * 2.0 * kPi, (0.5 - (j + 0.5) / height()) * kPi};
}

void EquirectImage::pixel_position(const SphericalCoord& s, double& fx, double& fy) const noexcept
{
    fx = (s.azimuth / (2.0 * kPi) + 0.5) * width() - 0.5;
    fy = (0.5 - s.altitude / kPi) * height() - 0.5;
}

}  // namespace spherewarp

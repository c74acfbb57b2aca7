#pragma once

#include "posedict/dictionary.hpp"

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace posedict {

struct Resolution {
    int width = 0;
    int height = 0;

    friend bool operator==(const Resolution&, const Resolution&) = default;
};

/// Grayscale image, row-major, intensities in [0,1].
class Image {
public:
    Image() = default;
    Image(int width, int height, double fill = 0.0);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    Resolution resolution() const noexcept { return {width_, height_}; }
    bool empty() const noexcept { return pixels_.empty(); }

    double& at(int row, int col) { return pixels_[index(row, col)]; }
    double at(int row, int col) const { return pixels_[index(row, col)]; }

    const std::vector<double>& pixels() const noexcept { return pixels_; }
    std::vector<double>& pixels() noexcept { return pixels_; }

private:
    std::size_t index(int row, int col) const
    {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(col);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<double> pixels_;
};

/// Row-major vectorization; the row index varies slowest.
Sample vectorize(const Image& image, std::string source_id = {});

/// Inverse of vectorize for a known resolution.
Image unvectorize(const Sample& sample, Resolution res);

/// Bilinear resampling with pixel centres at half-integer coordinates and edge clamping.
/// Resizing to the same resolution returns an identical image.
Image resize_bilinear(const Image& image, Resolution target);

/// Luma 0.299 R + 0.587 G + 0.114 B.
double luma(double r, double g, double b) noexcept;

/// PGM P2 or P5 (8- or 16-bit). Throws DataError on malformed input.
Image read_pgm(const std::filesystem::path& path);
Image decode_pgm(const std::string& bytes, const std::string& name = "<memory>");

/// PNG of any color type; color is converted with luma(). Throws DataError.
Image read_png(const std::filesystem::path& path);

/// Dispatches on extension (.pgm, .png).
Image read_image(const std::filesystem::path& path);

/// Binary 8-bit PGM (P5); pixel values are clamped to [0,1] and rounded.
void write_pgm(const std::filesystem::path& path, const Image& image);
std::string encode_pgm(const Image& image);

} // namespace posedict

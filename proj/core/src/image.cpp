#include "posedict/image.hpp"

#include <fmt/format.h>
#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

namespace posedict {

Image::Image(int width, int height, double fill)
    : width_(width), height_(height)
{
    if (width <= 0 || height <= 0)
        throw ConfigError(fmt::format("image size must be positive, got {}x{}", width, height));
    pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

Sample vectorize(const Image& image, std::string source_id)
{
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(
        image.pixels().data(), static_cast<Eigen::Index>(image.pixels().size()));
    return Sample(std::move(v), std::move(source_id));
}

Image unvectorize(const Sample& sample, Resolution res)
{
    if (static_cast<long>(res.width) * res.height != sample.size())
        detail::throw_dimension("sample for image", static_cast<long>(res.width) * res.height,
                                sample.size());
    Image out(res.width, res.height);
    std::copy(sample.values().begin(), sample.values().end(), out.pixels().begin());
    return out;
}

Image resize_bilinear(const Image& image, Resolution target)
{
    if (image.empty())
        throw ConfigError("cannot resize an empty image");
    if (image.resolution() == target)
        return image;
    Image out(target.width, target.height);
    const double sx = static_cast<double>(image.width()) / target.width;
    const double sy = static_cast<double>(image.height()) / target.height;
    for (int r = 0; r < target.height; ++r) {
        const double fy = std::clamp((r + 0.5) * sy - 0.5, 0.0, image.height() - 1.0);
        const int y0 = static_cast<int>(std::floor(fy));
        const int y1 = std::min(y0 + 1, image.height() - 1);
        const double wy = fy - y0;
        for (int c = 0; c < target.width; ++c) {
            const double fx = std::clamp((c + 0.5) * sx - 0.5, 0.0, image.width() - 1.0);
            const int x0 = static_cast<int>(std::floor(fx));
            const int x1 = std::min(x0 + 1, image.width() - 1);
            const double wx = fx - x0;
            const double top = (1 - wx) * image.at(y0, x0) + wx * image.at(y0, x1);
            const double bottom = (1 - wx) * image.at(y1, x0) + wx * image.at(y1, x1);
            out.at(r, c) = (1 - wy) * top + wy * bottom;
        }
    }
    return out;
}

double luma(double r, double g, double b) noexcept
{
    return 0.299 * r + 0.587 * g + 0.114 * b;
}

namespace {

std::string slurp(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError(fmt::format("cannot open '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Header token reader that skips whitespace and '#' comments.
class PnmHeader {
public:
    PnmHeader(const std::string& bytes, std::string name) : bytes_(bytes), name_(std::move(name)) {}

    std::string token()
    {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("truncated header");
        return bytes_.substr(start, pos_ - start);
    }

    long number()
    {
        const std::string t = token();
        if (!std::all_of(t.begin(), t.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
            fail(fmt::format("expected a number, got '{}'", t));
        return std::stol(t);
    }

    // Consumes the single whitespace byte that separates a binary raster from the header.
    std::size_t raster_start()
    {
        if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_])))
            fail("missing separator before raster");
        return pos_ + 1;
    }

    [[noreturn]] void fail(const std::string& why) const
    {
        throw DataError(fmt::format("'{}': malformed PGM: {}", name_, why));
    }

private:
    void skip_space()
    {
        while (pos_ < bytes_.size()) {
            const char ch = bytes_[pos_];
            if (ch == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n')
                    ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    const std::string& bytes_;
    std::string name_;
    std::size_t pos_ = 0;
};

} // namespace

Image decode_pgm(const std::string& bytes, const std::string& name)
{
    PnmHeader header(bytes, name);
    const std::string magic = header.token();
    if (magic != "P2" && magic != "P5")
        header.fail(fmt::format("unsupported magic '{}'", magic));
    const long width = header.number();
    const long height = header.number();
    const long maxval = header.number();
    if (width <= 0 || height <= 0)
        header.fail("nonpositive dimensions");
    if (maxval <= 0 || maxval > 65535)
        header.fail(fmt::format("maxval {} out of range", maxval));

    Image image(static_cast<int>(width), static_cast<int>(height));
    const auto count = image.pixels().size();
    const double scale = 1.0 / static_cast<double>(maxval);

    auto store = [&](std::size_t i, long v) {
        if (v > maxval)
            header.fail(fmt::format("sample {} exceeds maxval {}", v, maxval));
        image.pixels()[i] = static_cast<double>(v) * scale;
    };

    if (magic == "P2") {
        for (std::size_t i = 0; i < count; ++i)
            store(i, header.number());
        return image;
    }

    const std::size_t start = header.raster_start();
    const std::size_t depth = maxval < 256 ? 1 : 2;
    if (bytes.size() < start + count * depth)
        header.fail("raster shorter than header dimensions");
    const auto* raw = reinterpret_cast<const unsigned char*>(bytes.data()) + start;
    for (std::size_t i = 0; i < count; ++i) {
        const long v = depth == 1 ? raw[i] : (static_cast<long>(raw[2 * i]) << 8) | raw[2 * i + 1];
        store(i, v);
    }
    return image;
}

Image read_pgm(const std::filesystem::path& path)
{
    return decode_pgm(slurp(path), path.string());
}

Image read_png(const std::filesystem::path& path)
{
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    const std::string bytes = slurp(path);
    if (!png_image_begin_read_from_memory(&png, bytes.data(), bytes.size()))
        throw DataError(fmt::format("'{}': {}", path.string(), png.message));
    // libpng's simplified API performs the color-to-gray conversion in linear space; decode
    // RGB and apply the luma weights ourselves so PNG and PGM inputs agree.
    png.format = PNG_FORMAT_RGB;
    std::vector<unsigned char> buffer(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, buffer.data(), 0, nullptr)) {
        std::string msg = png.message;
        png_image_free(&png);
        throw DataError(fmt::format("'{}': {}", path.string(), msg));
    }
    Image image(static_cast<int>(png.width), static_cast<int>(png.height));
    for (std::size_t i = 0; i < image.pixels().size(); ++i) {
        const double r = buffer[3 * i] / 255.0;
        const double g = buffer[3 * i + 1] / 255.0;
        const double b = buffer[3 * i + 2] / 255.0;
        image.pixels()[i] = (r == g && g == b) ? r : luma(r, g, b);
    }
    return image;
}

Image read_image(const std::filesystem::path& path)
{
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (ext == ".pgm")
        return read_pgm(path);
    if (ext == ".png")
        return read_png(path);
    throw DataError(fmt::format("'{}': unsupported image type", path.string()));
}

std::string encode_pgm(const Image& image)
{
    std::string out = fmt::format("P5\n{} {}\n255\n", image.width(), image.height());
    out.reserve(out.size() + image.pixels().size());
    for (double v : image.pixels())
        out.push_back(static_cast<char>(static_cast<unsigned char>(
            std::lround(std::clamp(v, 0.0, 1.0) * 255.0))));
    return out;
}

void write_pgm(const std::filesystem::path& path, const Image& image)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError(fmt::format("cannot write '{}'", path.string()));
    const std::string bytes = encode_pgm(image);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

} // namespace posedict

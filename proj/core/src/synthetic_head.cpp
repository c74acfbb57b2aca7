#include "posedict/synthetic_head.hpp"

#include "posedict/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace posedict {

namespace {

struct Blob {
    double x, y, sx, sy, amplitude;

    double at(double px, double py) const
    {
        const double dx = (px - x) / sx;
        const double dy = (py - y) / sy;
        return amplitude * std::exp(-0.5 * (dx * dx + dy * dy));
    }
};

struct HeadParams {
    double a, b, c;     // ellipsoid semi-axes (width, height, depth)
    double nose_height, nose_width, nose_y;
    double skin, hairline, hair_tone;
    double eye_x, eye_y, eye_size, eye_dark;
    double brow_gap, brow_dark;
    double mouth_y, mouth_width, mouth_dark;
    std::array<Blob, 6> blobs;
};

HeadParams draw_params(KeyedStream& rng, double v)
{
    auto around = [&](double mean, double spread) { return mean + v * spread * rng.uniform(-1.0, 1.0); };
    HeadParams p{};
    p.a = around(1.0, 0.08);
    p.b = around(1.3, 0.10);
    p.c = around(1.0, 0.10);
    p.nose_height = around(0.25, 0.10);
    p.nose_width = around(0.11, 0.03);
    p.nose_y = around(-0.05, 0.08);
    p.skin = around(0.62, 0.14);
    p.hairline = around(0.62, 0.14);
    p.hair_tone = around(0.18, 0.12);
    p.eye_x = around(0.36, 0.07);
    p.eye_y = around(0.24, 0.08);
    p.eye_size = around(0.10, 0.03);
    p.eye_dark = around(0.40, 0.15);
    p.brow_gap = around(0.16, 0.05);
    p.brow_dark = around(0.30, 0.15);
    p.mouth_y = around(-0.50, 0.10);
    p.mouth_width = around(0.24, 0.07);
    p.mouth_dark = around(0.25, 0.12);
    for (auto& blob : p.blobs) {
        blob.x = rng.uniform(-0.8, 0.8);
        blob.y = rng.uniform(-0.9, 0.7);
        blob.sx = rng.uniform(0.06, 0.25);
        blob.sy = rng.uniform(0.06, 0.25);
        blob.amplitude = v * rng.uniform(-0.18, 0.18);
    }
    return p;
}

} // namespace

TexturedCloud synthetic_head(std::uint64_t subject, std::uint64_t seed, const HeadOptions& options)
{
    KeyedStream rng(mix_key(mix_key(seed, 0x68656164ULL), subject));
    const HeadParams p = draw_params(rng, options.variation);

    const int nl = std::max(2, options.longitude_steps);
    const int nb = std::max(2, options.latitude_steps);
    Eigen::Matrix3Xd points(3, static_cast<Eigen::Index>(nl) * nb);
    Eigen::VectorXd gray(points.cols());
    const Eigen::Vector3d light = Eigen::Vector3d(-0.3, 0.4, -1.0).normalized();
    const double half_pi = std::numbers::pi / 2.0;

    Eigen::Index k = 0;
    for (int j = 0; j < nb; ++j) {
        const double lat = -0.45 * std::numbers::pi + 0.9 * std::numbers::pi * j / (nb - 1);
        for (int i = 0; i < nl; ++i) {
            const double lon = -half_pi + std::numbers::pi * i / (nl - 1);
            const double ux = std::cos(lat) * std::sin(lon);
            const double uy = std::sin(lat);
            const double uz = -std::cos(lat) * std::cos(lon);
            double x = p.a * ux;
            const double y = p.b * uy;
            double z = p.c * uz;

            // Nose ridge protrudes toward the camera (-z) along the midline.
            const double nose = p.nose_height *
                                std::exp(-0.5 * (x * x) / (p.nose_width * p.nose_width)) *
                                std::exp(-0.5 * std::pow((y - p.nose_y) / 0.22, 2.0));
            z -= nose * std::max(0.0, -uz);

            // Normal of the plain ellipsoid, tilted by the nose slope.
            Eigen::Vector3d normal(ux / p.a, uy / p.b, uz / p.c);
            normal.x() += nose * x / (p.nose_width * p.nose_width) * 0.5;
            normal.normalize();
            const double shade = 0.55 + 0.45 * std::max(0.0, normal.dot(-light));

            double t = p.skin;
            if (y > p.hairline * p.b || std::abs(lon) > 1.25)
                t = p.hair_tone;
            for (double side : {-1.0, 1.0}) {
                const Blob eye{side * p.eye_x, p.eye_y, p.eye_size * 1.4, p.eye_size * 0.7, -p.eye_dark};
                const Blob brow{side * p.eye_x, p.eye_y + p.brow_gap, p.eye_size * 1.8, 0.035, -p.brow_dark};
                t += eye.at(x, y) + brow.at(x, y);
            }
            const Blob mouth{0.0, p.mouth_y, p.mouth_width, 0.045, -p.mouth_dark};
            t += mouth.at(x, y);
            for (const auto& blob : p.blobs)
                t += blob.at(x, y);

            points.col(k) << x, y, z;
            gray[k] = std::clamp(t * shade, 0.0, 1.0);
            ++k;
        }
    }
    return TexturedCloud(std::move(points), std::move(gray));
}

} // namespace posedict

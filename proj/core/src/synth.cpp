#include "posedict/synth.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <numbers>

namespace posedict {

namespace {

double radians(double degrees)
{
    return degrees * std::numbers::pi / 180.0;
}

} // namespace

TexturedCloud::TexturedCloud(Eigen::Matrix3Xd points, Eigen::VectorXd intensities)
    : points_(std::move(points)), intensities_(std::move(intensities))
{
    if (points_.cols() == 0)
        throw ConfigError("textured cloud has no points");
    if (points_.cols() != intensities_.size())
        detail::throw_dimension("cloud intensities", points_.cols(), intensities_.size());
    if (!points_.allFinite())
        throw ConfigError("textured cloud has non-finite coordinates");
    if (!intensities_.allFinite() || intensities_.minCoeff() < 0.0 || intensities_.maxCoeff() > 1.0)
        throw ConfigError("cloud intensities must lie in [0, 1]");
}

Eigen::Vector3d TexturedCloud::centroid() const
{
    return points_.rowwise().mean();
}

double TexturedCloud::radius() const
{
    return (points_.colwise() - centroid()).colwise().norm().maxCoeff();
}

void Camera::validate() const
{
    if (!rotation.allFinite() ||
        ((rotation.transpose() * rotation) - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-9)
        throw ConfigError("camera rotation is not orthonormal");
    if (!(focal > 0.0) || !std::isfinite(focal))
        throw ConfigError(fmt::format("focal length must be positive, got {}", focal));
    if (!translation.allFinite() || !principal.allFinite())
        throw ConfigError("camera translation and principal point must be finite");
    if (image.width <= 0 || image.height <= 0)
        throw ConfigError(fmt::format("image size must be positive, got {}x{}", image.width,
                                      image.height));
}

Camera Camera::framing(const TexturedCloud& cloud, Resolution image, double focal)
{
    Camera cam;
    cam.focal = focal;
    cam.image = image;
    cam.principal = {image.width / 2.0, image.height / 2.0};
    const Eigen::Vector3d c = cloud.centroid();
    cam.translation = Eigen::Vector3d(0.0, 0.0, 10.0 * cloud.radius()) - c;
    return cam;
}

Eigen::Matrix3d rotation_x(double degrees)
{
    const double c = std::cos(radians(degrees));
    const double s = std::sin(radians(degrees));
    Eigen::Matrix3d r;
    r << 1, 0, 0, 0, c, -s, 0, s, c;
    return r;
}

Eigen::Matrix3d rotation_y(double degrees)
{
    const double c = std::cos(radians(degrees));
    const double s = std::sin(radians(degrees));
    Eigen::Matrix3d r;
    r << c, 0, s, 0, 1, 0, -s, 0, c;
    return r;
}

Eigen::Matrix3d rotation_z(double degrees)
{
    const double c = std::cos(radians(degrees));
    const double s = std::sin(radians(degrees));
    Eigen::Matrix3d r;
    r << c, -s, 0, s, c, 0, 0, 0, 1;
    return r;
}

Eigen::Matrix3d rotation_ypr(double yaw, double pitch, double roll)
{
    return rotation_y(yaw) * rotation_x(pitch) * rotation_z(roll);
}

Camera rotated_about(const Camera& base, const Eigen::Matrix3d& model_rotation,
                     const Eigen::Vector3d& pivot)
{
    // R (Q (v - c) + c) + t = (R Q) v + (t + R (c - Q c))
    Camera cam = base;
    cam.rotation = base.rotation * model_rotation;
    cam.translation = base.translation + base.rotation * (pivot - model_rotation * pivot);
    return cam;
}

Eigen::Vector2d project_point(const Eigen::Vector3d& v, const Camera& cam)
{
    const Eigen::Vector3d t = cam.rotation * v + cam.translation;
    if (!(t.z() > 0.0))
        throw BehindCameraError(fmt::format("point at depth {} is not in front of the camera", t.z()));
    return {cam.principal.x() + cam.focal * t.x() / t.z(),
            cam.principal.y() - cam.focal * t.y() / t.z()};
}

Image render(const TexturedCloud& cloud, const Camera& cam)
{
    cam.validate();
    const int w = cam.image.width;
    const int h = cam.image.height;
    Image image(w, h, 0.0);
    std::vector<double> depth(image.pixels().size(), std::numeric_limits<double>::infinity());

    const Eigen::Matrix3Xd transformed =
        (cam.rotation * cloud.points()).colwise() + cam.translation;
    const Eigen::RowVectorXd inv_z = transformed.row(2).cwiseInverse();
    const Eigen::RowVectorXd sx =
        (cam.focal * transformed.row(0).cwiseProduct(inv_z)).array() + cam.principal.x();
    const Eigen::RowVectorXd sy =
        cam.principal.y() - (cam.focal * transformed.row(1).cwiseProduct(inv_z)).array();

    for (Eigen::Index i = 0; i < transformed.cols(); ++i) {
        const double z = transformed(2, i);
        if (!(z > 0.0))
            continue;
        const double col = std::floor(sx[i] + 0.5);
        const double row = std::floor(sy[i] + 0.5);
        if (!(col >= 0.0 && col < w && row >= 0.0 && row < h))
            continue;
        const auto idx = static_cast<std::size_t>(row) * static_cast<std::size_t>(w) +
                         static_cast<std::size_t>(col);
        if (z < depth[idx]) {
            depth[idx] = z;
            image.pixels()[idx] = cloud.intensities()[i];
        }
    }
    return image;
}

PoseSweep::PoseSweep(std::vector<double> yaw_degrees) : yaw_(std::move(yaw_degrees))
{
    if (yaw_.empty())
        throw ConfigError("pose sweep needs at least one yaw angle");
    for (double a : yaw_)
        if (!std::isfinite(a))
            throw ConfigError("pose sweep angles must be finite");
}

PoseSweep PoseSweep::ten_view()
{
    return PoseSweep({4, -4, 8, -8, 12, -12, 16, -16, 20, -20});
}

PoseSweep PoseSweep::four_view()
{
    return PoseSweep({15, -15, 30, -30});
}

Dictionary synthesize_auxiliary(const std::vector<std::pair<TexturedCloud, ClassId>>& clouds,
                                const Camera& base_cam, const PoseSweep& sweep,
                                const AuxiliaryOptions& options)
{
    base_cam.validate();
    std::vector<LabeledSample> rendered;
    rendered.reserve(clouds.size() * sweep.size());
    for (const auto& [cloud, label] : clouds) {
        const Eigen::Vector3d pivot = cloud.centroid();
        for (double yaw : sweep.yaw_degrees()) {
            Image img = render(cloud, rotated_about(base_cam, rotation_y(yaw), pivot));
            if (options.resolution)
                img = resize_bilinear(img, *options.resolution);
            rendered.push_back({vectorize(img), label});
        }
    }
    if (rendered.empty())
        return {};
    return build_dictionary(rendered, options.normalize);
}

} // namespace posedict

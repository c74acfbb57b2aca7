#pragma once

#include "posedict/dictionary.hpp"
#include "posedict/image.hpp"

#include <Eigen/Core>

#include <optional>
#include <utility>
#include <vector>

namespace posedict {

/// 3D points (one per column, model units) with a grayscale value in [0,1] for each.
class TexturedCloud {
public:
    TexturedCloud() = default;
    /// Throws ConfigError on empty input, length mismatch, non-finite coordinates, or
    /// intensities outside [0,1].
    TexturedCloud(Eigen::Matrix3Xd points, Eigen::VectorXd intensities);

    const Eigen::Matrix3Xd& points() const noexcept { return points_; }
    const Eigen::VectorXd& intensities() const noexcept { return intensities_; }
    Eigen::Index size() const noexcept { return points_.cols(); }

    Eigen::Vector3d centroid() const;
    /// Largest distance of any point from the centroid.
    double radius() const;

private:
    Eigen::Matrix3Xd points_;
    Eigen::VectorXd intensities_;
};

/// Pinhole camera: v' = R v + t, s = (o_x + f v'_x / v'_z, o_y - f v'_y / v'_z).
struct Camera {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();
    double focal = 1000.0;
    Eigen::Vector2d principal{64.0, 64.0};
    Resolution image{128, 128};

    /// Throws ConfigError unless R is orthonormal to 1e-9, f > 0 and the image is nonempty.
    void validate() const;

    /// Identity rotation, centroid on the optical axis at 10x the cloud radius, principal
    /// point at the image centre.
    static Camera framing(const TexturedCloud& cloud, Resolution image = {128, 128},
                          double focal = 1000.0);
};

/// Right-handed rotations by an angle in degrees.
Eigen::Matrix3d rotation_x(double degrees);
/// [[cos, 0, sin], [0, 1, 0], [-sin, 0, cos]]
Eigen::Matrix3d rotation_y(double degrees);
Eigen::Matrix3d rotation_z(double degrees);
/// R_y(yaw) * R_x(pitch) * R_z(roll)
Eigen::Matrix3d rotation_ypr(double yaw, double pitch, double roll);

/// Camera that sees the model rotated by `model_rotation` about `pivot` (in model space).
Camera rotated_about(const Camera& base, const Eigen::Matrix3d& model_rotation,
                     const Eigen::Vector3d& pivot);

/// Throws BehindCameraError when the transformed depth is not positive.
Eigen::Vector2d project_point(const Eigen::Vector3d& v, const Camera& cam);

/**
 * Splats every point to its nearest pixel (column round(s_x), row round(s_y)); a per-pixel
 * depth buffer keeps the point with the smallest positive depth. Points behind the camera
 * or outside the frame are skipped, uncovered pixels stay 0.
 */
Image render(const TexturedCloud& cloud, const Camera& cam);

/// Yaw angles in degrees for virtual views.
class PoseSweep {
public:
    explicit PoseSweep(std::vector<double> yaw_degrees);

    const std::vector<double>& yaw_degrees() const noexcept { return yaw_; }
    std::size_t size() const noexcept { return yaw_.size(); }

    /// +-4, +-8, +-12, +-16, +-20
    static PoseSweep ten_view();
    /// +-15, +-30
    static PoseSweep four_view();

private:
    std::vector<double> yaw_;
};

struct AuxiliaryOptions {
    /// Resize renders to this resolution before vectorizing; keep the camera size if unset.
    std::optional<Resolution> resolution;
    bool normalize = true;
};

/// One column per (cloud, yaw) pair, cloud-major. Yaw is applied about the vertical axis
/// through each cloud's centroid, composed with the base camera rotation.
Dictionary synthesize_auxiliary(const std::vector<std::pair<TexturedCloud, ClassId>>& clouds,
                                const Camera& base_cam, const PoseSweep& sweep,
                                const AuxiliaryOptions& options = {});

} // namespace posedict

#pragma once

#include "posedict/bench.hpp"
#include "posedict/synthetic_head.hpp"

#include <cstdint>
#include <vector>

namespace posedict {

/// Pose-robustness benchmark built entirely from synthetic heads.
struct SyntheticPoseConfig {
    int subjects = 20;
    std::uint64_t seed = 20170611;
    int repeats = 3;
    /// Near-frontal training poses (one image each, so theta = size()).
    std::vector<double> train_yaw{-3.0, 3.0};
    /// Test images are rendered at +test_yaw and -test_yaw.
    double test_yaw = 25.0;
    /// Uniform jitter in degrees added to yaw and pitch of every real image.
    double pose_jitter = 2.0;
    /// Multiplicative brightness spread of real images, gain in [1 - g, 1 + g].
    double gain_jitter = 0.1;
    /// Standard deviation of additive Gaussian pixel noise on real images.
    double noise = 0.02;
    Resolution render{128, 128};
    double focal = 1000.0;
    Resolution working{32, 32};
    HeadOptions head;
    PoseSweep sweep = PoseSweep::ten_view();
};

struct SyntheticPoseData {
    std::vector<Split> splits;
    /// Renders the ground-truth head of each training sample, from that sample's camera,
    /// at every sweep angle.
    Augmenter augmenter;
};

SyntheticPoseData make_synthetic_pose_benchmark(const SyntheticPoseConfig& cfg);

} // namespace posedict

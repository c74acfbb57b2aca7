#pragma once

#include "posedict/synth.hpp"

#include <cstdint>

namespace posedict {

struct HeadOptions {
    /// Samples along longitude (left-right) and latitude (bottom-top) of the front half.
    int longitude_steps = 360;
    int latitude_steps = 300;
    /// Scales the per-subject spread of every texture and shape parameter; 0 yields the
    /// same mean head for every subject.
    double variation = 1.0;
};

/**
 * Procedural stand-in for a fitted 3D face: the front half of an ellipsoid (facing -z)
 * with a nose ridge, and a texture of hair, brows, eyes, mouth, cheek blobs and baked
 * Lambertian shading. Every parameter is drawn from a stream keyed on (seed, subject),
 * so a subject always produces the same cloud.
 */
TexturedCloud synthetic_head(std::uint64_t subject, std::uint64_t seed,
                             const HeadOptions& options = {});

} // namespace posedict

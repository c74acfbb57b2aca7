#pragma once

#include "posedict/synth.hpp"

#include <filesystem>
#include <string>

namespace posedict {

/**
 * Strict ASCII PLY subset for textured clouds.
 *
 *     ply
 *     format ascii 1.0
 *     element vertex <N>
 *     property <type> x | y | z | gray     (each exactly once, any order)
 *     end_header
 *     <N lines of values in property order>
 *
 * `comment` and `obj_info` lines are allowed in the header. Any other element, property,
 * format or trailing data is a DataError. Integer gray types (char, uchar, int8, uint8)
 * are scaled by 1/255; floating gray types must already lie in [0,1].
 */
TexturedCloud parse_ply(const std::string& text, const std::string& name = "<memory>");
TexturedCloud read_ply(const std::filesystem::path& path);

/// Writes float x, y, z, gray with round-trip precision.
std::string format_ply(const TexturedCloud& cloud);
void write_ply(const std::filesystem::path& path, const TexturedCloud& cloud);

} // namespace posedict

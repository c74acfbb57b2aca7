#include "posedict/errors.hpp"

#include <fmt/format.h>

namespace posedict::detail {

void throw_dimension(const std::string& what, long expected, long actual)
{
    throw DimensionError(fmt::format("{}: expected length {}, got {}", what, expected, actual));
}

} // namespace posedict::detail

#pragma once

#include <stdexcept>
#include <string>

namespace posedict {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters or violated preconditions. The CLI maps these to exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Sample lengths or matrix shapes that do not agree.
class DimensionError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Unreadable, malformed or inconsistent input data. The CLI maps these to exit code 3.
class DataError : public Error {
public:
    using Error::Error;
};

/// A point was projected with nonpositive camera-space depth.
class BehindCameraError : public Error {
public:
    using Error::Error;
};

namespace detail {
[[noreturn]] void throw_dimension(const std::string& what, long expected, long actual);
}

} // namespace posedict

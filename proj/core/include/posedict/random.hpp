#pragma once

#include <cstdint>
#include <string_view>

namespace posedict {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// 64-bit FNV-1a.
std::uint64_t hash_string(std::string_view s) noexcept;

/// Combines words into one key; order-sensitive.
std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) noexcept;

/**
 * Counter-based generator: the i-th draw is a pure function of (key, i), so streams keyed
 * on independent identifiers never depend on evaluation order or thread schedule.
 */
class KeyedStream {
public:
    explicit KeyedStream(std::uint64_t key) noexcept : key_(key) {}

    std::uint64_t next_u64() noexcept;
    /// Uniform integer in [0, bound) without modulo bias; bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept;
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() noexcept;
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    /// Standard normal (Box-Muller).
    double normal() noexcept;

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace posedict

#include "posedict/random.hpp"

#include <cmath>
#include <numbers>

namespace posedict {

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t hash_string(std::string_view s) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) noexcept
{
    return splitmix64(splitmix64(a) ^ (b + 0x632be59bd9b4e019ULL + (a << 6) + (a >> 2)));
}

std::uint64_t KeyedStream::next_u64() noexcept
{
    return splitmix64(key_ ^ splitmix64(counter_++));
}

std::uint64_t KeyedStream::below(std::uint64_t bound) noexcept
{
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    for (;;) {
        const std::uint64_t r = next_u64();
        if (r < limit)
            return r % bound;
    }
}

double KeyedStream::uniform() noexcept
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double KeyedStream::normal() noexcept
{
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace posedict

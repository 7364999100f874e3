#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "apollo/error.hpp"

namespace apollo {

// Exact signed 128-bit integer. Curvatures grow geometrically with word
// length, so every arithmetic step is overflow-checked; wraparound would
// silently corrupt counts.
using Int = __int128;

inline Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in add");
    return r;
}

inline Int checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in sub");
    return r;
}

inline Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in mul");
    return r;
}

inline Int checked_abs(Int a) {
    if (a >= 0) return a;
    return checked_sub(0, a);
}

Int gcd_int(Int a, Int b);

std::string to_string(Int v);

// Parses an optionally signed decimal integer; throws InvalidInputError on
// malformed input or overflow.
Int parse_int(std::string_view s);

inline std::size_t hash_int(Int v) {
    auto lo = static_cast<std::uint64_t>(static_cast<unsigned __int128>(v));
    auto hi = static_cast<std::uint64_t>(static_cast<unsigned __int128>(v) >> 64);
    std::uint64_t h = lo * 0x9e3779b97f4a7c15ULL;
    h ^= hi + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
}

}  // namespace apollo

#pragma once

#include <string>
#include <string_view>

#include "szlab/common.hpp"

namespace szlab {

using Int128 = __int128;

struct OverflowError : Error {
    explicit OverflowError(const std::string& w) : Error("overflow", w) {}
};

inline Int128 checked_add(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit addition overflow");
    return r;
}

inline Int128 checked_sub(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("128-bit subtraction overflow");
    return r;
}

inline Int128 checked_mul(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit multiplication overflow");
    return r;
}

std::string to_string(Int128 v);

/// Parses an optionally signed decimal integer; returns false if `s` is not
/// one or does not fit.
bool parse_int128(std::string_view s, Int128& out);

}  // namespace szlab

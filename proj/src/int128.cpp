#include "szlab/int128.hpp"

#include <algorithm>

namespace szlab {

std::string to_string(Int128 v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    std::string out;
    // work with negative values so INT128_MIN does not overflow
    Int128 x = neg ? v : -v;
    while (x != 0) {
        const int digit = -static_cast<int>(x % 10);
        out.push_back(static_cast<char>('0' + digit));
        x /= 10;
    }
    if (neg) out.push_back('-');
    std::reverse(out.begin(), out.end());
    return out;
}

bool parse_int128(std::string_view s, Int128& out) {
    if (s.empty()) return false;
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) return false;
    Int128 acc = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
        if (__builtin_mul_overflow(acc, Int128(10), &acc)) return false;
        if (__builtin_sub_overflow(acc, Int128(s[i] - '0'), &acc)) return false;
    }
    if (!neg) {
        if (acc == -acc && acc != 0) return false;
        acc = -acc;
    }
    out = acc;
    return true;
}

}  // namespace szlab

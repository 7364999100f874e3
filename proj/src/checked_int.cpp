#include "apollo/checked_int.hpp"

#include <cctype>

namespace apollo {

Int gcd_int(Int a, Int b) {
    if (a < 0) a = -a;  // |INT128_MIN| not representable, but gcd inputs come
    if (b < 0) b = -b;  // from checked_abs upstream
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::string to_string(Int v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    char buf[48];
    int pos = sizeof(buf);
    while (u != 0) {
        buf[--pos] = static_cast<char>('0' + static_cast<int>(u % 10));
        u /= 10;
    }
    if (neg) buf[--pos] = '-';
    return std::string(buf + pos, sizeof(buf) - static_cast<std::size_t>(pos));
}

Int parse_int(std::string_view s) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i == s.size()) throw InvalidInputError("empty integer literal");
    unsigned __int128 acc = 0;
    const unsigned __int128 limit = static_cast<unsigned __int128>(1) << 127;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw InvalidInputError("malformed integer literal: " + std::string(s));
        unsigned digit = static_cast<unsigned>(s[i] - '0');
        if (acc > (limit - digit) / 10)
            throw InvalidInputError("integer literal out of 128-bit range: " + std::string(s));
        acc = acc * 10 + digit;
    }
    if (!neg && acc >= limit)
        throw InvalidInputError("integer literal out of 128-bit range: " + std::string(s));
    if (neg && acc > limit)
        throw InvalidInputError("integer literal out of 128-bit range: " + std::string(s));
    if (neg) return static_cast<Int>(0 - acc);
    return static_cast<Int>(acc);
}

}  // namespace apollo

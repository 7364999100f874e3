#include "apollo/primality.hpp"

namespace apollo {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

constexpr std::uint64_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : kWitnesses) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : kWitnesses) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

bool is_prime(Int n) {
    if (n < 0 || n > static_cast<Int>(UINT64_MAX))
        throw InvalidInputError("primality supported only on [0, 2^64): " + to_string(n));
    return is_prime_u64(static_cast<std::uint64_t>(n));
}

namespace {
constexpr std::uint64_t kSieveCeiling = 200'000'000;  // ~25 MB of flags
}

Primality::Primality(Int max_value) {
    if (max_value < 2) return;
    if (max_value > static_cast<Int>(kSieveCeiling)) return;  // fall back to Miller-Rabin
    limit_ = static_cast<std::uint64_t>(max_value);
    sieve_.assign(limit_ + 1, true);
    sieve_[0] = false;
    sieve_[1] = false;
    for (std::uint64_t i = 2; i * i <= limit_; ++i)
        if (sieve_[i])
            for (std::uint64_t j = i * i; j <= limit_; j += i) sieve_[j] = false;
}

bool Primality::is_prime_int(Int v) const {
    if (v < 2) return false;
    if (!sieve_.empty() && v <= static_cast<Int>(limit_))
        return sieve_[static_cast<std::uint64_t>(v)];
    return is_prime(v);
}

}  // namespace apollo

#pragma once

#include <cstdint>
#include <vector>

#include "apollo/checked_int.hpp"

namespace apollo {

// Deterministic Miller-Rabin over the fixed witness set
// {2,3,5,7,11,13,17,19,23,29,31,37}, valid for the whole 64-bit range.
bool is_prime_u64(std::uint64_t n);

// Range-checked wrapper: n must lie in [0, 2^64).
bool is_prime(Int n);

// Bulk primality for counting runs: a bit sieve up to the bound when that is
// affordable, Miller-Rabin per query otherwise. Both routes agree; the sieve
// only changes the constant factor.
class Primality {
public:
    explicit Primality(Int max_value);

    bool is_prime_int(Int v) const;

    bool sieved() const { return !sieve_.empty(); }

private:
    std::vector<bool> sieve_;  // sieve_[n] == true iff n prime, n <= limit_
    std::uint64_t limit_ = 0;
};

}  // namespace apollo

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "apollo/orbit.hpp"
#include "apollo/primality.hpp"

namespace apollo {

struct PrimeCounts {
    Int threshold = 0;
    std::int64_t pi = 0;   // prime circles with curvature < threshold
    std::int64_t pi2 = 0;  // tangent pairs with both curvatures prime and < threshold
};

// Counts prime circles and tangent prime pairs below the bound. Pairs are
// enumerated at creation: each new circle contributes one pair per prime
// parent, plus the six root pairs. Requires a primitive root.
PrimeCounts prime_counts(const RootQuadruple& root, Int bound, const EnumerateOptions& opts = {});

// Exact rational with 128-bit terms, always reduced, positive denominator.
struct Rational {
    Int num = 0;
    Int den = 1;

    Rational() = default;
    Rational(Int n, Int d);

    Rational operator*(const Rational& o) const;
    bool operator==(const Rational&) const = default;
    double value() const;
    std::string str() const;  // "num/den"
};

struct ModOrbitOptions {
    std::uint32_t max_modulus = 101;  // closure needs a modulus^4 bitmap
};

// Orbit closure of a quadruple over Z/mZ under the four generators, with
// zero-slice counts for f1 = x1 and f2 = x1*x2.
struct ModOrbit {
    std::uint32_t modulus = 0;
    std::uint64_t size = 0;
    std::uint64_t slice_x1 = 0;
    std::uint64_t slice_x1x2 = 0;
    std::vector<bool> membership;  // indexed a + b*m + c*m^2 + d*m^3

    bool contains(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) const;
};

// Breadth-first closure; m may be prime or a small squarefree composite for
// cross-checking CRT products. Throws when the root vanishes mod m or the
// modulus exceeds the cap.
ModOrbit orbit_mod(const Quadruple& root, std::uint32_t m, const ModOrbitOptions& opts = {});

struct ConeCount {
    std::uint64_t points = 0;    // nonzero solutions of Q = 0 over Z/pZ
    std::uint64_t slice_x1 = 0;  // those with x1 = 0
};

// Exhaustive p^4 scan of the cone 2*sum(x^2) = (sum x)^2 over Z/pZ.
ConeCount cone_points_mod_p(std::uint32_t p, std::vector<bool>* out_membership = nullptr,
                            const ModOrbitOptions& opts = {});

// A prime is "good" when the orbit closure fills the whole cone; reported
// empirically rather than assumed.
bool orbit_fills_cone(const ModOrbit& orbit, const ConeCount& cone, const std::vector<bool>& cone_membership);

enum class SlicePoly { X1, X1X2 };

// Exact slice fraction of the orbit: |{x in orbit : f(x) = 0}| / |orbit|.
Rational local_density(const ModOrbit& orbit, SlicePoly f);

// Density over a squarefree product of good primes, computed as the product
// of per-prime densities (the orbit mod d splits as a CRT product).
Rational local_density_product(const Quadruple& root, const std::vector<std::uint32_t>& primes,
                               SlicePoly f, const ModOrbitOptions& opts = {});

struct RatioRow {
    Int threshold = 0;
    double pi_ratio = 0;   // pi(T) * log T / T^alpha
    double pi2_ratio = 0;  // pi2(T) * (log T)^2 / T^alpha
};

// Normalized prime-count ratios over the series grid; boundedness of these
// columns is the empirical form of the upper-bound statements.
std::vector<RatioRow> sieve_ratio_report(const CountSeries& series, double alpha_hat);

}  // namespace apollo

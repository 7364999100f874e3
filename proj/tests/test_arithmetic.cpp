#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "apollo/arithmetic.hpp"
#include "oracle.hpp"

using namespace apollo;

namespace {
const RootQuadruple kBowl = RootQuadruple::from_quadruple(Quadruple(-1, 2, 2, 3));
const RootQuadruple kStrip = RootQuadruple::from_quadruple(Quadruple(0, 0, 1, 1));
}  // namespace

TEST_CASE("is_prime against trial division") {
    for (long long n = 0; n <= 20'000; ++n)
        CHECK(is_prime(n) == oracle::trial_division_prime(n));
    CHECK(is_prime(2));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(1'000'003));
    CHECK(is_prime(static_cast<Int>(1'000'000'007)));
    CHECK_FALSE(is_prime(static_cast<Int>(1'000'000'007) * 2038074743));
    // strong pseudoprime candidates around 2^61
    CHECK(is_prime(static_cast<Int>(2305843009213693951LL)));  // 2^61 - 1, Mersenne
    CHECK_FALSE(is_prime(static_cast<Int>(2305843009213693953LL)));
    CHECK_THROWS_AS(is_prime(static_cast<Int>(-3)), InvalidInputError);
    CHECK_THROWS_AS(is_prime(static_cast<Int>(1) << 70), InvalidInputError);
}

TEST_CASE("sieve and Miller-Rabin agree") {
    Primality sieved(50'000);
    REQUIRE(sieved.sieved());
    for (Int n = 0; n < 50'000; n += 7) CHECK(sieved.is_prime_int(n) == is_prime(n));
    Primality unsieved(static_cast<Int>(1) << 40);
    CHECK_FALSE(unsieved.sieved());
    CHECK(unsieved.is_prime_int(1'000'003));
}

TEST_CASE("prime counts on the bounded root") {
    PrimeCounts pc = prime_counts(kBowl, 10);
    CHECK(pc.pi == 4);   // curvatures 2,2,3,3
    CHECK(pc.pi2 == 5);  // three initial prime pairs + two through the second 3

    // oracle: explicit pair enumeration over unpruned words; curvatures below
    // 150 all appear by depth 13 (slowest chain creates n^2 + 2 at depth n)
    for (long long bound : {10, 50, 150}) {
        oracle::PrimePairCounts expect = oracle::prime_pair_counts({-1, 2, 2, 3}, 13, bound);
        PrimeCounts got = prime_counts(kBowl, bound);
        CHECK(got.pi == expect.pi);
        CHECK(got.pi2 == expect.pi2);
    }
}

TEST_CASE("prime counts preconditions") {
    CHECK_THROWS_AS(prime_counts(kBowl, 2), InvalidInputError);  // bound below root max
    RootQuadruple scaled = RootQuadruple::from_quadruple(Quadruple(-2, 4, 4, 6));
    CHECK_THROWS_AS(prime_counts(scaled, 100), InvalidInputError);  // not primitive
    PrimeCounts tiny = prime_counts(kBowl, 4);
    CHECK(tiny.pi == 4);   // root primes 2,2,3 plus the depth-1 twin of 3
    CHECK(tiny.pi2 == 5);  // three root prime pairs, two more through that twin
    // no prime below 2 anywhere
    PrimeCounts none = prime_counts(kStrip, 2);
    CHECK(none.pi == 0);
    CHECK(none.pi2 == 0);
}

TEST_CASE("mod orbit closure is generator stable and on the cone") {
    ModOrbit orbit = orbit_mod(kBowl.quad(), 11);
    CHECK(orbit.size == 1220);
    // closure check: applying any generator to any member stays inside
    for (std::uint32_t a = 0; a < 11; ++a)
        for (std::uint32_t b = 0; b < 11; ++b)
            for (std::uint32_t c = 0; c < 11; ++c)
                for (std::uint32_t d = 0; d < 11; ++d) {
                    if (!orbit.contains(a, b, c, d)) continue;
                    std::uint32_t s = a + b + c + d;
                    std::uint32_t fa = (2 * (s - a) + 11 * 11 - a) % 11;
                    CHECK(orbit.contains(fa, b, c, d));
                    std::uint32_t fd = (2 * (s - d) + 11 * 11 - d) % 11;
                    CHECK(orbit.contains(a, b, c, fd));
                }
}

TEST_CASE("orbit equals the brute force cone for good primes") {
    for (std::uint32_t p : {5u, 7u, 11u, 13u, 17u}) {
        std::vector<bool> cone_members;
        ConeCount cone = cone_points_mod_p(p, &cone_members);
        ModOrbit orbit = orbit_mod(kBowl.quad(), p);
        CHECK(orbit_fills_cone(orbit, cone, cone_members));
        // strip root generates the same closure
        ModOrbit strip_orbit = orbit_mod(kStrip.quad(), p);
        CHECK(strip_orbit.size == orbit.size);
    }
    // 2 and 3 are bad: the orbit is strictly smaller than the cone
    for (std::uint32_t p : {2u, 3u}) {
        std::vector<bool> cone_members;
        ConeCount cone = cone_points_mod_p(p, &cone_members);
        ModOrbit orbit = orbit_mod(kBowl.quad(), p);
        CHECK_FALSE(orbit_fills_cone(orbit, cone, cone_members));
    }
}

TEST_CASE("cone counts against the displayed bounds") {
    ConeCount c2 = cone_points_mod_p(2);
    CHECK(c2.points == 7);  // 16-element enumeration: sum even, nonzero
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u}) {
        ConeCount c = cone_points_mod_p(p);
        double pd = p;
        CHECK(std::fabs(static_cast<double>(c.points) - pd * pd * pd) <=
              4 * std::pow(pd, 2.5));
        CHECK(std::fabs(static_cast<double>(c.slice_x1) - pd * pd) <= 4 * std::pow(pd, 1.5));
    }
    CHECK_THROWS_AS(cone_points_mod_p(1009), ResourceError);  // above the modulus cap
}

TEST_CASE("local densities approach 1/p and 2/p") {
    for (std::uint32_t p : {7u, 11u, 13u, 17u}) {
        ModOrbit orbit = orbit_mod(kBowl.quad(), p);
        double pd = p;
        Rational g1 = local_density(orbit, SlicePoly::X1);
        Rational g2 = local_density(orbit, SlicePoly::X1X2);
        CHECK(std::fabs(g1.value() - 1 / pd) <= 10 * std::pow(pd, -1.5));
        CHECK(std::fabs(g2.value() - 2 / pd) <= 10 * std::pow(pd, -1.5));
        CHECK(g1.value() > 0);
        CHECK(g2.value() < 1);
    }
    // exact values for p = 7 (from the brute-force cone structure)
    ModOrbit o7 = orbit_mod(kBowl.quad(), 7);
    CHECK(local_density(o7, SlicePoly::X1) == Rational(4, 25));
    CHECK(local_density(o7, SlicePoly::X1X2) == Rational(3, 10));
}

TEST_CASE("CRT multiplicativity for a coprime squarefree pair") {
    ModOrbit o7 = orbit_mod(kBowl.quad(), 7);
    ModOrbit o11 = orbit_mod(kBowl.quad(), 11);
    ModOrbit o77 = orbit_mod(kBowl.quad(), 77);
    CHECK(o77.size == o7.size * o11.size);
    // component-wise projection: every mod-77 point reduces into both orbits
    std::uint64_t checked = 0;
    for (std::uint32_t a = 0; a < 77 && checked < 200'000; ++a)
        for (std::uint32_t b = 0; b < 77 && checked < 200'000; ++b)
            for (std::uint32_t c = 0; c < 77; ++c)
                for (std::uint32_t d = 0; d < 77; ++d) {
                    if (!o77.contains(a, b, c, d)) continue;
                    ++checked;
                    CHECK(o7.contains(a % 7, b % 7, c % 7, d % 7));
                    CHECK(o11.contains(a % 11, b % 11, c % 11, d % 11));
                }
    CHECK(checked > 0);
    // densities multiply exactly
    CHECK(local_density(o77, SlicePoly::X1) ==
          local_density(o7, SlicePoly::X1) * local_density(o11, SlicePoly::X1));
    CHECK(local_density(o77, SlicePoly::X1X2) ==
          local_density(o7, SlicePoly::X1X2) * local_density(o11, SlicePoly::X1X2));
    CHECK(local_density_product(kBowl.quad(), {7, 11}, SlicePoly::X1) ==
          local_density(o77, SlicePoly::X1));
}

TEST_CASE("exact orbit points reduce into the mod orbit") {
    for (std::uint32_t p : {7u, 11u}) {
        ModOrbit orbit = orbit_mod(kBowl.quad(), p);
        auto vecs = oracle::orbit_vectors({-1, 2, 2, 3}, 500);
        for (const auto& v : vecs) {
            auto r = [&](long long x) {
                long long m = x % static_cast<long long>(p);
                if (m < 0) m += p;
                return static_cast<std::uint32_t>(m);
            };
            CHECK(orbit.contains(r(v[0]), r(v[1]), r(v[2]), r(v[3])));
        }
    }
}

TEST_CASE("mod orbit rejects vanishing roots and oversized moduli") {
    CHECK_THROWS_AS(orbit_mod(Quadruple(-7, 14, 14, 21), 7), InvalidInputError);
    CHECK_THROWS_AS(orbit_mod(Quadruple(1, 1, 1, 1), 7), InvalidInputError);  // off the cone
    CHECK_THROWS_AS(orbit_mod(kBowl.quad(), 500), ResourceError);
    ModOrbitOptions wide;
    wide.max_modulus = 500;
    CHECK_NOTHROW(orbit_mod(kBowl.quad(), 103, wide));
}

TEST_CASE("rational arithmetic") {
    CHECK(Rational(6, 8) == Rational(3, 4));
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK((Rational(2, 3) * Rational(9, 4)) == Rational(3, 2));
    CHECK(Rational(4, 25).str() == "4/25");
    CHECK_THROWS_AS(Rational(1, 0), InvalidInputError);
}

TEST_CASE("sieve ratio report shape") {
    ThresholdGrid grid = ThresholdGrid::geometric(10, 10'000, 7);
    CountSeries s = count_series(kBowl, grid);
    auto rows = sieve_ratio_report(s, 1.3);
    REQUIRE(rows.size() == s.size());
    for (const auto& r : rows) {
        CHECK(std::isfinite(r.pi_ratio));
        CHECK(r.pi_ratio >= 0);
        CHECK(r.pi2_ratio <= 3 * r.pi_ratio * std::log(static_cast<double>(r.threshold)) + 1e-9);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "apollo/orbit.hpp"
#include "oracle.hpp"

using namespace apollo;

namespace {
const RootQuadruple kBowl = RootQuadruple::from_quadruple(Quadruple(-1, 2, 2, 3));
const RootQuadruple kStrip = RootQuadruple::from_quadruple(Quadruple(0, 0, 1, 1));

std::multiset<long long> pruned_multiset(const RootQuadruple& root, Int bound, int depth_cap) {
    std::multiset<long long> out;
    EnumerateOptions opts;
    opts.max_depth = depth_cap;
    opts.truncate_at_depth = true;
    enumerate_circles(
        root, bound, [&](const CircleEvent& ev) { out.insert(static_cast<long long>(ev.curvature)); },
        opts);
    return out;
}
}  // namespace

TEST_CASE("generator matrices match the displayed reflections") {
    const Mat4i& s1 = generator(1);
    CHECK(s1[0][0] == -1);
    CHECK(s1[0][1] == 2);
    CHECK(s1[0][2] == 2);
    CHECK(s1[0][3] == 2);
    CHECK(s1[1][1] == 1);
    CHECK(s1[2][1] == 0);
    const Mat4i& s4 = generator(4);
    CHECK(s4[3][0] == 2);
    CHECK(s4[3][3] == -1);
    CHECK(s4[0][0] == 1);
}

TEST_CASE("apply_generator examples") {
    CHECK(apply_generator(Quadruple(-1, 2, 2, 3), 1) == Quadruple(15, 2, 2, 3));
    // stabilizer reflection of the strip root
    CHECK(apply_generator(Quadruple(0, 0, 1, 1), 3) == Quadruple(0, 0, 1, 1));
}

TEST_CASE("apply_generator agrees with flip on random orbit quadruples") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> slot(1, 4);
    Quadruple q(-1, 2, 2, 3);
    for (int step = 0; step < 10'000; ++step) {
        if (step % 25 == 0) q = Quadruple(-1, 2, 2, 3);
        int s = slot(rng);
        Quadruple via_matrix = apply_generator(q, s);
        CHECK(via_matrix == flip(q, s));
        CHECK(apply_generator(via_matrix, s) == q);  // involution
        q = via_matrix;
    }
}

TEST_CASE("enumerate_circles events at T=10") {
    std::vector<CircleEvent> events;
    enumerate_circles(kBowl, 10, [&](const CircleEvent& ev) { events.push_back(ev); });
    REQUIRE(events.size() == 9);
    std::multiset<long long> by_depth[3];
    for (const CircleEvent& ev : events) {
        REQUIRE(ev.depth <= 2);
        by_depth[ev.depth].insert(static_cast<long long>(ev.curvature));
    }
    CHECK(by_depth[0] == std::multiset<long long>{-1, 2, 2, 3});
    CHECK(by_depth[1] == std::multiset<long long>{3, 6, 6});
    CHECK(by_depth[2] == std::multiset<long long>{6, 6});
}

TEST_CASE("count_circles examples") {
    CHECK(count_circles(kBowl, 10) == 9);
    CHECK(count_circles(kBowl, 4) == 5);
    CHECK(count_circles(kBowl, 3) == 3);   // strict bound excludes the 3s
    CHECK(count_circles(kBowl, 100) == 169);
    CHECK(count_circles(kStrip, 2) == 4);  // first new strip circle is 4
}

TEST_CASE("pruned enumeration matches the unpruned oracle") {
    for (long long bound : {4, 10, 100}) {
        auto expect = oracle::curvature_multiset({-1, 2, 2, 3}, 6, bound);
        auto got = pruned_multiset(kBowl, bound, 6);
        CHECK(got == expect);
    }
    // the strip walk deduplicates vectors, so its oracle is the vector set
    for (long long bound : {2, 5, 30}) {
        std::set<oracle::Quad> vecs = oracle::orbit_vectors({0, 0, 1, 1}, bound);
        std::multiset<long long> dedup;
        for (long long v : oracle::Quad{0, 0, 1, 1})
            if (v < bound) dedup.insert(v);
        for (const oracle::Quad& q : vecs) {
            if (q == oracle::Quad{0, 0, 1, 1}) continue;
            long long mx = std::max(std::max(q[0], q[1]), std::max(q[2], q[3]));
            if (mx < bound) dedup.insert(mx);
        }
        auto got = pruned_multiset(kStrip, bound, 10'000);
        CHECK(got == dedup);
    }
}

TEST_CASE("count_tangent_pairs") {
    CHECK(count_tangent_pairs(kBowl, 10) == 21);  // 3*9 - 6
    CHECK(count_tangent_pairs(kBowl, 4) == 9);    // 3*5 - 6
    // just above the root maximum only the six initial tangencies exist
    CHECK(count_tangent_pairs(kBowl, 4) == 3 * count_circles(kBowl, 4) - 6);
    CHECK(count_tangent_pairs(kStrip, 2) == 6);
    CHECK_THROWS_AS(count_tangent_pairs(kBowl, 3), InvalidInputError);
}

TEST_CASE("count_orbit_points against vector oracle") {
    CHECK(count_orbit_points(kBowl, 4, Norm::Max) == 1);
    CHECK(count_orbit_points(kBowl, 4, Norm::Euclidean) == 0);
    CHECK(count_orbit_points(kBowl, 0, Norm::Max) == 0);
    CHECK(count_orbit_points(kBowl, 3, Norm::Max) == 0);  // empty ball below the root norm
    for (long long bound : {10, 40, 120}) {
        auto vecs = oracle::orbit_vectors({-1, 2, 2, 3}, bound);
        CHECK(count_orbit_points(kBowl, bound, Norm::Max) ==
              static_cast<std::int64_t>(vecs.size()));
        std::int64_t eucl = 0;
        for (const auto& v : vecs) {
            long long sq = 0;
            for (long long x : v) sq += x * x;
            if (sq < bound * bound) ++eucl;
        }
        CHECK(count_orbit_points(kBowl, bound, Norm::Euclidean) == eucl);
    }
}

TEST_CASE("word count and orbit point count agree through the stabilizer") {
    // N(T) = |Stab| * #{v : ||v||_max < T} + 3 for T above the root maximum;
    // the flip fixing (-1,2,2,3) doubles every later vector, generic bounded
    // roots have a trivial stabilizer, strips count vectors directly
    for (Int t : {Int(10), Int(100), Int(1500)}) {
        CHECK(count_circles(kBowl, t) == 2 * count_orbit_points(kBowl, t, Norm::Max) + 3);
        CHECK(count_circles(kStrip, t) == count_orbit_points(kStrip, t, Norm::Max) + 3);
    }
    // a+b+c = d is exactly the condition for a flip to fix the root, so
    // (-2,3,6,7) doubles like (-1,2,2,3) while a+b+c > d roots do not --
    // repeated entries alone are not a stabilizer
    RootQuadruple touching = RootQuadruple::from_quadruple(Quadruple(-2, 3, 6, 7));
    RootQuadruple generic = RootQuadruple::from_quadruple(Quadruple(-6, 11, 14, 15));
    RootQuadruple repeated = RootQuadruple::from_quadruple(Quadruple(-3, 5, 8, 8));
    for (Int t : {Int(50), Int(800)}) {
        CHECK(count_circles(touching, t) == 2 * count_orbit_points(touching, t, Norm::Max) + 3);
        CHECK(count_circles(generic, t) == count_orbit_points(generic, t, Norm::Max) + 3);
        CHECK(count_circles(repeated, t) == count_orbit_points(repeated, t, Norm::Max) + 3);
    }
}

TEST_CASE("orbit point counts grow with the same exponent") {
    // coarse log-log slope over [1e3, 1e5]; short window, so wide brackets
    std::vector<double> xs, ys;
    for (Int t : {Int(1000), Int(4642), Int(21544), Int(100000)}) {
        auto n = count_orbit_points(kBowl, t, Norm::Max);
        xs.push_back(std::log(static_cast<double>(t)));
        ys.push_back(std::log(static_cast<double>(n)));
    }
    double n = static_cast<double>(xs.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope > 1.15);
    CHECK(slope < 1.45);
}

TEST_CASE("threshold grids") {
    ThresholdGrid g = ThresholdGrid::geometric(10, 1000, 5);
    REQUIRE(g.thresholds.size() == 5);
    CHECK(g.thresholds.front() == 10);
    CHECK(g.thresholds.back() == 1000);
    for (std::size_t i = 1; i < g.thresholds.size(); ++i)
        CHECK(g.thresholds[i] > g.thresholds[i - 1]);
    CHECK(ThresholdGrid::single(7).thresholds == std::vector<Int>{7});
    CHECK_THROWS_AS(ThresholdGrid::geometric(0, 10, 3), InvalidInputError);
    CHECK_THROWS_AS(ThresholdGrid::single(-1), InvalidInputError);
}

TEST_CASE("count_series matches pointwise counts and the pair identity") {
    ThresholdGrid grid = ThresholdGrid::geometric(4, 2000, 10);
    for (const RootQuadruple* root : {&kBowl, &kStrip}) {
        CountSeries s = count_series(*root, grid);
        REQUIRE(s.size() == grid.thresholds.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(s.n[i] == count_circles(*root, s.thresholds[i]));
            if (s.thresholds[i] > root->max_entry()) {
                CHECK(s.n2[i] == 3 * s.n[i] - 6);
                CHECK(s.n2[i] == count_tangent_pairs(*root, s.thresholds[i]));
            }
            CHECK(s.pi2[i] <= 3 * s.pi[i]);
            CHECK(s.pi[i] <= s.n[i]);
            if (i > 0) {
                CHECK(s.n[i] >= s.n[i - 1]);
                CHECK(s.pi[i] >= s.pi[i - 1]);
                CHECK(s.pi2[i] >= s.pi2[i - 1]);
            }
        }
    }
}

TEST_CASE("worker count does not change totals") {
    ThresholdGrid grid = ThresholdGrid::geometric(10, 50'000, 9);
    SeriesOptions one;
    CountSeries base = count_series(kBowl, grid, one);
    for (int workers : {2, 3, 8}) {
        SeriesOptions opts;
        opts.workers = workers;
        CountSeries s = count_series(kBowl, grid, opts);
        CHECK(s.n == base.n);
        CHECK(s.n2 == base.n2);
        CHECK(s.pi == base.pi);
        CHECK(s.pi2 == base.pi2);
    }
    SeriesOptions deep;
    deep.workers = 4;
    deep.split_depth = 7;
    CountSeries s = count_series(kBowl, grid, deep);
    CHECK(s.n == base.n);
    CHECK(s.pi2 == base.pi2);
}

TEST_CASE("overflow surfaces as an error, never a wrong count") {
    // scaled so the root still validates, but deep flips exceed 128 bits
    Int k = static_cast<Int>(1) << 60;
    Quadruple scaled(-k, 2 * k, 2 * k, 3 * k);
    RootQuadruple root = RootQuadruple::from_quadruple(scaled);

    // a slot-rotating branch grows exponentially and must trip the checked
    // arithmetic rather than wrap
    Quadruple q = scaled;
    auto deep_walk = [&] {
        for (int step = 0; step < 400; ++step) q = flip(q, (step % 4) + 1);
    };
    CHECK_THROWS_AS(deep_walk(), OverflowError);

    // full enumeration at an astronomical bound can never return a count:
    // it ends in checked-arithmetic overflow or the depth-cap guard
    Int huge = static_cast<Int>(1) << 125;
    CHECK_THROWS_AS(count_circles(root, huge), Error);

    // near the very ceiling even the form evaluation overflows, loudly
    Int k2 = static_cast<Int>(1) << 100;
    CHECK_THROWS_AS(RootQuadruple::from_quadruple(Quadruple(-k2, 2 * k2, 2 * k2, 3 * k2)),
                    OverflowError);
}

TEST_CASE("depth cap refuses to truncate counts silently") {
    EnumerateOptions opts;
    opts.max_depth = 3;
    CHECK_THROWS_AS(count_circles(kBowl, 1000, opts), ResourceError);
    opts.truncate_at_depth = true;
    CHECK_NOTHROW(count_circles(kBowl, 1000, opts));
}

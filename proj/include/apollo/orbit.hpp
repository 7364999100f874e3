#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "apollo/descartes.hpp"

namespace apollo {

using Mat4i = std::array<std::array<Int, 4>, 4>;

// Reflection generator S_i: identity except row i, which is 2 everywhere
// with -1 on the diagonal. S_i^2 = I and each S_i preserves the Descartes
// form exactly.
const Mat4i& generator(int slot);

// q * S_i^t as an explicit matrix-vector product. Must agree entrywise with
// flip(q, slot); the two routes cross-check each other in the tests.
Quadruple apply_generator(const Quadruple& q, int slot);

// One node of the non-returning walk: `last` is the slot flipped to reach it
// (0 at the root, where every slot is allowed), `new_entry` the curvature the
// flip created.
struct WalkNode {
    Quadruple quad;
    int last = 0;
    int depth = 0;
    Int new_entry = 0;
};

// One circle of the packing: its curvature plus the curvatures of the three
// circles it is tangent to at creation. Depth-0 events carry the other three
// root entries as parents.
struct CircleEvent {
    Int curvature = 0;
    std::array<Int, 3> parents{};
    int depth = 0;
    int slot = 0;  // creating slot, 0 for root circles
};

struct EnumerateOptions {
    int max_depth = 10'000;
    // When false (default), hitting the depth cap with in-bound circles still
    // pending is a ResourceError instead of a silent undercount. Truncating
    // traversals (depth-limited oracles, renders) opt in.
    bool truncate_at_depth = false;
    std::uint64_t visited_cap = 20'000'000;  // strip-mode vector dedup entries
};

struct EnumerationStats {
    std::uint64_t events = 0;
    std::uint64_t nodes = 0;
    int deepest = 0;
};

// Emits one CircleEvent per circle with curvature < bound: the root entries
// at depth 0, then one event per non-returning word (bounded packings) or per
// distinct orbit vector (strip packings, one fundamental period). Subtrees
// are pruned as soon as the created curvature reaches the bound, which is
// sound because new entries are non-decreasing along every branch (asserted
// at runtime).
EnumerationStats enumerate_circles(const RootQuadruple& root, Int bound,
                                   const std::function<void(const CircleEvent&)>& visitor,
                                   const EnumerateOptions& opts = {});

// N(T): number of circle events with curvature < bound (signed comparison).
std::int64_t count_circles(const RootQuadruple& root, Int bound, const EnumerateOptions& opts = {});

// N2(T): tangent pairs with both curvatures < bound, counted two ways --
// directly from creation events and via 3*N(T) - 6. Requires bound > max
// root entry; throws InvariantError if the routes disagree.
std::int64_t count_tangent_pairs(const RootQuadruple& root, Int bound,
                                 const EnumerateOptions& opts = {});

enum class Norm { Max, Euclidean };

// Distinct orbit vectors v with ||v|| < bound (the root vector included when
// it qualifies). Deduplicates as ordered vectors.
std::int64_t count_orbit_points(const RootQuadruple& root, Int bound, Norm norm,
                                const EnumerateOptions& opts = {});

// Strictly increasing positive thresholds for cumulative count series.
struct ThresholdGrid {
    std::vector<Int> thresholds;

    static ThresholdGrid single(Int t);
    // `steps` log-spaced integers from t0 to tmax inclusive (deduplicated,
    // last value exactly tmax).
    static ThresholdGrid geometric(Int t0, Int tmax, int steps);
};

// Cumulative counts over a threshold grid, produced in one traversal.
struct CountSeries {
    std::vector<Int> thresholds;
    std::vector<std::int64_t> n;    // circles
    std::vector<std::int64_t> n2;   // tangent pairs (direct count)
    std::vector<std::int64_t> pi;   // prime circles
    std::vector<std::int64_t> pi2;  // tangent prime pairs
    std::string root_label;
    Int root_max = 0;
    int workers = 1;
    double wall_seconds = 0.0;

    std::size_t size() const { return thresholds.size(); }
};

struct SeriesOptions {
    int workers = 1;      // subtree-parallel for bounded packings
    int split_depth = 4;  // frontier depth for work splitting
    EnumerateOptions enumerate;
};

// Single pass over the orbit: every event lands in the bucket of the first
// threshold above its curvature, and a prefix sum yields the cumulative
// series. Totals are identical for any worker count. Verifies
// N2 = 3N - 6 at every threshold above the root maximum.
CountSeries count_series(const RootQuadruple& root, const ThresholdGrid& grid,
                         const SeriesOptions& opts = {});

}  // namespace apollo

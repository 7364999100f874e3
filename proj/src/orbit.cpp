#include "apollo/orbit.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_set>

#include "apollo/primality.hpp"

namespace apollo {

namespace {

Mat4i make_generator(int slot) {
    Mat4i m{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m[r][c] = (r == c) ? 1 : 0;
    int i = slot - 1;
    for (int c = 0; c < 4; ++c) m[i][c] = (c == i) ? -1 : 2;
    return m;
}

const std::array<Mat4i, 4> kGenerators = {make_generator(1), make_generator(2), make_generator(3),
                                          make_generator(4)};

std::array<Int, 3> other_three(const Quadruple& q, int slot) {
    std::array<Int, 3> out{};
    int k = 0;
    for (int i = 0; i < 4; ++i)
        if (i != slot - 1) out[k++] = q[i];
    return out;
}

// Tangent pairs inside one quadruple: 6 unordered index pairs.
constexpr int kPairIdx[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

}  // namespace

const Mat4i& generator(int slot) {
    if (slot < 1 || slot > 4) throw InvalidInputError("generator slot must be 1..4");
    return kGenerators[static_cast<std::size_t>(slot - 1)];
}

Quadruple apply_generator(const Quadruple& q, int slot) {
    const Mat4i& m = generator(slot);
    // row vector times S_i^t: component j is the dot product of q with row j of S_i
    Quadruple r;
    for (int j = 0; j < 4; ++j) {
        Int acc = 0;
        for (int k = 0; k < 4; ++k) acc = checked_add(acc, checked_mul(m[j][k], q[k]));
        r[j] = acc;
    }
    return r;
}

namespace {

// ---------------------------------------------------------------------------
// Core walkers. The bounded walk is a pure non-returning tree (words biject
// with circles, multiplicity included); the strip walk deduplicates orbit
// vectors, which both quotients out the infinite stabilizer of (0,0,c,c) and
// restricts the count to one fundamental period.
// ---------------------------------------------------------------------------

template <class Visit>
struct BoundedWalker {
    Int bound;
    int max_depth;
    bool truncate_at_depth;
    Visit& visit;
    EnumerationStats stats;

    void run(const WalkNode& node) {
        ++stats.nodes;
        stats.deepest = std::max(stats.deepest, node.depth);
        if (node.depth >= max_depth) {
            if (!truncate_at_depth && has_live_child(node))
                throw ResourceError("depth cap reached with circles below the bound remaining");
            return;
        }
        for (int slot = 1; slot <= 4; ++slot) {
            if (slot == node.last) continue;
            Quadruple child = flip(node.quad, slot);
            Int created = child[slot - 1];
            if (created != child.max_entry())
                throw InvariantError("new entry is not maximal at " + child.str());
            if (node.depth >= 1 && created < node.new_entry)
                throw InvariantError("new entry decreased along branch at " + child.str());
            if (created >= bound) continue;  // monotone frontier: prune subtree
            if (child.sum() <= 0)
                throw InvariantError("sum positivity lost away from the root at " + child.str());
            ++stats.events;
            visit(CircleEvent{created, other_three(child, slot), node.depth + 1, slot});
            run(WalkNode{child, slot, node.depth + 1, created});
        }
    }

    bool has_live_child(const WalkNode& node) const {
        for (int slot = 1; slot <= 4; ++slot) {
            if (slot == node.last) continue;
            Quadruple child = flip(node.quad, slot);
            if (child[slot - 1] < bound) return true;
        }
        return false;
    }
};

struct VectorKey {
    std::array<std::int64_t, 4> v;
    bool operator==(const VectorKey&) const = default;
};

struct VectorKeyHash {
    std::size_t operator()(const VectorKey& k) const {
        std::uint64_t h = 0x243f6a8885a308d3ULL;
        for (std::int64_t x : k.v) {
            h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdULL;
        }
        return static_cast<std::size_t>(h);
    }
};

VectorKey strip_key(const Quadruple& q) {
    VectorKey k{};
    for (int i = 0; i < 4; ++i) {
        if (q[i] < 0 || q[i] > static_cast<Int>(INT64_MAX))
            throw ResourceError("strip orbit entry outside 64-bit dedup range");
        k.v[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(q[i]);
    }
    return k;
}

// Breadth-first closure over orbit vectors. Flips that revisit a vector are
// skipped, so the stabilizer directions die out at the root and each circle
// of the fundamental period is emitted exactly once.
template <class Visit>
EnumerationStats strip_walk(const RootQuadruple& root, Int bound, Visit& visit,
                            const EnumerateOptions& opts) {
    EnumerationStats stats;
    std::unordered_set<VectorKey, VectorKeyHash> seen;
    std::vector<WalkNode> frontier{WalkNode{root.quad(), 0, 0, root.max_entry()}};
    seen.insert(strip_key(root.quad()));
    while (!frontier.empty()) {
        std::vector<WalkNode> next;
        for (const WalkNode& node : frontier) {
            ++stats.nodes;
            stats.deepest = std::max(stats.deepest, node.depth);
            for (int slot = 1; slot <= 4; ++slot) {
                Quadruple child = flip(node.quad, slot);
                Int created = child[slot - 1];
                if (created >= bound) continue;
                if (!seen.insert(strip_key(child)).second) continue;  // stabilizer / return flip
                if (node.depth >= opts.max_depth) {
                    if (opts.truncate_at_depth) continue;
                    throw ResourceError("depth cap reached with circles below the bound remaining");
                }
                if (created != child.max_entry())
                    throw InvariantError("new vector's created entry is not maximal at " +
                                         child.str());
                if (seen.size() > opts.visited_cap)
                    throw ResourceError("strip visited set exceeded cap");
                ++stats.events;
                visit(CircleEvent{created, other_three(child, slot), node.depth + 1, slot});
                next.push_back(WalkNode{child, slot, node.depth + 1, created});
            }
        }
        frontier = std::move(next);
    }
    return stats;
}

template <class Visit>
EnumerationStats walk(const RootQuadruple& root, Int bound, Visit& visit,
                      const EnumerateOptions& opts) {
    if (root.packing_class() == PackingClass::Degenerate)
        throw InvalidInputError("degenerate root quadruple");
    // depth-0 events: the root circles themselves
    EnumerationStats stats;
    const Quadruple& q = root.quad();
    for (int i = 0; i < 4; ++i) {
        if (q[i] < bound) {
            ++stats.events;
            visit(CircleEvent{q[i], other_three(q, i + 1), 0, 0});
        }
    }
    if (root.packing_class() == PackingClass::Strip) {
        EnumerationStats s = strip_walk(root, bound, visit, opts);
        stats.events += s.events;
        stats.nodes += s.nodes;
        stats.deepest = std::max(stats.deepest, s.deepest);
        return stats;
    }
    BoundedWalker<Visit> w{bound, opts.max_depth, opts.truncate_at_depth, visit, {}};
    w.run(WalkNode{q, 0, 0, root.max_entry()});
    stats.events += w.stats.events;
    stats.nodes += w.stats.nodes;
    stats.deepest = std::max(stats.deepest, w.stats.deepest);
    return stats;
}

}  // namespace

EnumerationStats enumerate_circles(const RootQuadruple& root, Int bound,
                                   const std::function<void(const CircleEvent&)>& visitor,
                                   const EnumerateOptions& opts) {
    auto visit = [&](const CircleEvent& ev) { visitor(ev); };
    return walk(root, bound, visit, opts);
}

std::int64_t count_circles(const RootQuadruple& root, Int bound, const EnumerateOptions& opts) {
    std::int64_t n = 0;
    auto visit = [&](const CircleEvent&) { ++n; };
    walk(root, bound, visit, opts);
    return n;
}

std::int64_t count_tangent_pairs(const RootQuadruple& root, Int bound,
                                 const EnumerateOptions& opts) {
    if (bound <= root.max_entry())
        throw InvalidInputError("tangent pair count requires bound > max root entry");
    std::int64_t n = 0;
    std::int64_t direct = 0;
    const Quadruple& rq = root.quad();
    for (const auto& p : kPairIdx)
        if (rq[p[0]] < bound && rq[p[1]] < bound) ++direct;
    auto visit = [&](const CircleEvent& ev) {
        ++n;
        if (ev.depth == 0) return;
        for (Int parent : ev.parents)
            if (parent < bound) ++direct;
    };
    walk(root, bound, visit, opts);
    std::int64_t formula = 3 * n - 6;
    if (direct != formula)
        throw InvariantError("tangent pair mismatch: direct " + std::to_string(direct) +
                             " vs 3N-6 = " + std::to_string(formula));
    return direct;
}

std::int64_t count_orbit_points(const RootQuadruple& root, Int bound, Norm norm,
                                const EnumerateOptions& opts) {
    if (bound <= 0) return 0;
    auto within = [&](const Quadruple& q) {
        if (norm == Norm::Max) return q.max_abs() < bound;
        Int sq = 0;
        for (Int x : q.v) sq = checked_add(sq, checked_mul(x, x));
        return sq < checked_mul(bound, bound);
    };
    // Graph search over vectors: pruning on the max entry is sound for both
    // norms since ||v|| >= max|v_i|, and every orbit point below the bound is
    // reachable through points below the bound (monotone frontier).
    std::set<std::array<Int, 4>> seen;
    std::vector<Quadruple> stack{root.quad()};
    seen.insert(root.quad().v);
    std::int64_t count = within(root.quad()) ? 1 : 0;
    while (!stack.empty()) {
        Quadruple q = stack.back();
        stack.pop_back();
        for (int slot = 1; slot <= 4; ++slot) {
            Quadruple child = flip(q, slot);
            if (child.max_abs() >= bound) continue;
            if (!seen.insert(child.v).second) continue;
            if (seen.size() > opts.visited_cap) throw ResourceError("orbit point set exceeded cap");
            if (within(child)) ++count;
            stack.push_back(child);
        }
    }
    return count;
}

ThresholdGrid ThresholdGrid::single(Int t) {
    if (t <= 0) throw InvalidInputError("threshold must be positive");
    return ThresholdGrid{{t}};
}

ThresholdGrid ThresholdGrid::geometric(Int t0, Int tmax, int steps) {
    if (t0 <= 0 || tmax < t0) throw InvalidInputError("grid requires 0 < t0 <= tmax");
    if (steps < 1) throw InvalidInputError("grid requires at least one step");
    if (steps == 1 || t0 == tmax) return ThresholdGrid{{tmax}};
    if (tmax > (static_cast<Int>(1) << 62))
        throw InvalidInputError("log-spaced grids support tmax up to 2^62");
    double lo = std::log(static_cast<double>(t0));
    double hi = std::log(static_cast<double>(tmax));
    std::vector<Int> ts;
    for (int k = 0; k < steps; ++k) {
        double f = std::exp(lo + (hi - lo) * static_cast<double>(k) / (steps - 1));
        Int t = static_cast<Int>(std::llround(f));
        if (!ts.empty() && t <= ts.back()) t = ts.back() + 1;
        ts.push_back(t);
    }
    ts.back() = tmax;
    while (ts.size() > 1 && ts[ts.size() - 2] >= tmax) ts.erase(ts.end() - 2);
    return ThresholdGrid{std::move(ts)};
}

namespace {

// Per-threshold increment buckets; cumulative series comes from a prefix sum.
struct Buckets {
    std::vector<std::int64_t> n, pairs, pi, pi2;

    explicit Buckets(std::size_t cells) : n(cells, 0), pairs(cells, 0), pi(cells, 0), pi2(cells, 0) {}

    void merge(const Buckets& o) {
        for (std::size_t i = 0; i < n.size(); ++i) {
            n[i] += o.n[i];
            pairs[i] += o.pairs[i];
            pi[i] += o.pi[i];
            pi2[i] += o.pi2[i];
        }
    }
};

struct SeriesAccumulator {
    const std::vector<Int>* thresholds;
    const Primality* primality;
    Buckets buckets;

    SeriesAccumulator(const std::vector<Int>& ts, const Primality& pr)
        : thresholds(&ts), primality(&pr), buckets(ts.size()) {}

    // index of the first threshold strictly above the value, or size() if none
    std::size_t cell(Int value) const {
        return static_cast<std::size_t>(
            std::upper_bound(thresholds->begin(), thresholds->end(), value) - thresholds->begin());
    }

    bool prime(Int v) const { return v > 1 && primality->is_prime_int(v); }

    void root_pairs(const Quadruple& rq) {
        for (const auto& p : kPairIdx) {
            Int hi = std::max(rq[p[0]], rq[p[1]]);
            std::size_t c = cell(hi);
            if (c >= thresholds->size()) continue;
            buckets.pairs[c] += 1;
            if (prime(rq[p[0]]) && prime(rq[p[1]])) buckets.pi2[c] += 1;
        }
    }

    void operator()(const CircleEvent& ev) {
        std::size_t c = cell(ev.curvature);
        if (c >= thresholds->size()) return;
        buckets.n[c] += 1;
        bool p = prime(ev.curvature);
        if (p) buckets.pi[c] += 1;
        if (ev.depth == 0) return;
        buckets.pairs[c] += 3;
        if (p)
            for (Int parent : ev.parents)
                if (prime(parent)) buckets.pi2[c] += 1;
    }
};

// Sequential walk down to split_depth collecting subtree roots for workers.
struct FrontierSplitter {
    Int bound;
    int split_depth;
    SeriesAccumulator& acc;
    std::vector<WalkNode> frontier;

    void run(const WalkNode& node) {
        if (node.depth >= split_depth) {
            frontier.push_back(node);
            return;
        }
        for (int slot = 1; slot <= 4; ++slot) {
            if (slot == node.last) continue;
            Quadruple child = flip(node.quad, slot);
            Int created = child[slot - 1];
            if (created != child.max_entry())
                throw InvariantError("new entry is not maximal at " + child.str());
            if (created >= bound) continue;
            acc(CircleEvent{created, other_three(child, slot), node.depth + 1, slot});
            run(WalkNode{child, slot, node.depth + 1, created});
        }
    }
};

}  // namespace

CountSeries count_series(const RootQuadruple& root, const ThresholdGrid& grid,
                         const SeriesOptions& opts) {
    if (grid.thresholds.empty()) throw InvalidInputError("empty threshold grid");
    if (!std::is_sorted(grid.thresholds.begin(), grid.thresholds.end()))
        throw InvalidInputError("threshold grid must be increasing");
    if (opts.workers < 1) throw InvalidInputError("worker count must be >= 1");

    auto t_start = std::chrono::steady_clock::now();
    Int bound = grid.thresholds.back();
    if (bound > static_cast<Int>(UINT64_MAX))
        throw InvalidInputError("count series needs bound < 2^64 (prime columns)");
    Primality primality(bound);

    SeriesAccumulator acc(grid.thresholds, primality);
    const Quadruple& rq = root.quad();
    for (int i = 0; i < 4; ++i)
        acc(CircleEvent{rq[i], other_three(rq, i + 1), 0, 0});
    acc.root_pairs(rq);

    int workers = opts.workers;
    if (root.packing_class() == PackingClass::Strip) workers = 1;  // visited set is shared state

    if (workers == 1 || opts.split_depth <= 0) {
        if (root.packing_class() == PackingClass::Strip) {
            strip_walk(root, bound, acc, opts.enumerate);
        } else {
            BoundedWalker<SeriesAccumulator> w{bound, opts.enumerate.max_depth,
                                               opts.enumerate.truncate_at_depth, acc, {}};
            w.run(WalkNode{rq, 0, 0, root.max_entry()});
        }
    } else {
        FrontierSplitter splitter{bound, std::min(opts.split_depth, opts.enumerate.max_depth), acc,
                                  {}};
        splitter.run(WalkNode{rq, 0, 0, root.max_entry()});

        std::vector<Buckets> partial(static_cast<std::size_t>(workers),
                                     Buckets(grid.thresholds.size()));
        std::atomic<std::size_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                SeriesAccumulator local(grid.thresholds, primality);
                try {
                    for (;;) {
                        std::size_t i = next.fetch_add(1);
                        if (i >= splitter.frontier.size()) break;
                        BoundedWalker<SeriesAccumulator> walker{
                            bound, opts.enumerate.max_depth, opts.enumerate.truncate_at_depth,
                            local, {}};
                        walker.run(splitter.frontier[i]);
                    }
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
                partial[static_cast<std::size_t>(w)] = std::move(local.buckets);
            });
        }
        for (auto& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
        for (const Buckets& b : partial) acc.buckets.merge(b);
    }

    CountSeries out;
    out.thresholds = grid.thresholds;
    out.root_label = rq.str();
    out.root_max = root.max_entry();
    out.workers = workers;
    std::size_t cells = grid.thresholds.size();
    out.n.resize(cells);
    out.n2.resize(cells);
    out.pi.resize(cells);
    out.pi2.resize(cells);
    std::int64_t cn = 0, cpairs = 0, cpi = 0, cpi2 = 0;
    for (std::size_t i = 0; i < cells; ++i) {
        cn += acc.buckets.n[i];
        cpairs += acc.buckets.pairs[i];
        cpi += acc.buckets.pi[i];
        cpi2 += acc.buckets.pi2[i];
        out.n[i] = cn;
        out.n2[i] = cpairs;
        out.pi[i] = cpi;
        out.pi2[i] = cpi2;
        if (grid.thresholds[i] > root.max_entry() && cpairs != 3 * cn - 6)
            throw InvariantError("N2 != 3N - 6 at threshold " + to_string(grid.thresholds[i]));
    }
    out.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return out;
}

}  // namespace apollo

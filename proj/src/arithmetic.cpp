#include "apollo/arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace apollo {

PrimeCounts prime_counts(const RootQuadruple& root, Int bound, const EnumerateOptions& opts) {
    if (primitive_content(root.quad()) != 1)
        throw InvalidInputError("prime counting requires a primitive root (content " +
                                to_string(primitive_content(root.quad())) + ")");
    if (bound <= root.max_entry())
        throw InvalidInputError("prime counting requires bound > max root entry");
    Primality primality(bound);
    auto prime = [&](Int v) { return v > 1 && primality.is_prime_int(v); };

    PrimeCounts out;
    out.threshold = bound;
    const Quadruple& rq = root.quad();
    for (int i = 0; i < 4; ++i)
        if (rq[i] < bound && prime(rq[i])) ++out.pi;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (rq[i] < bound && rq[j] < bound && prime(rq[i]) && prime(rq[j])) ++out.pi2;

    auto visit = [&](const CircleEvent& ev) {
        if (ev.depth == 0) return;  // root handled above
        if (!prime(ev.curvature)) return;
        ++out.pi;
        for (Int parent : ev.parents)
            if (parent < bound && prime(parent)) ++out.pi2;
    };
    enumerate_circles(root, bound, visit, opts);
    return out;
}

Rational::Rational(Int n, Int d) : num(n), den(d) {
    if (den == 0) throw InvalidInputError("rational with zero denominator");
    if (den < 0) {
        num = checked_sub(0, num);
        den = checked_sub(0, den);
    }
    Int g = gcd_int(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::operator*(const Rational& o) const {
    // cross-reduce before multiplying to keep terms small
    Int g1 = gcd_int(checked_abs(num), o.den);
    Int g2 = gcd_int(checked_abs(o.num), den);
    return Rational(checked_mul(num / g1, o.num / g2), checked_mul(den / g2, o.den / g1));
}

double Rational::value() const { return static_cast<double>(num) / static_cast<double>(den); }

std::string Rational::str() const { return to_string(num) + "/" + to_string(den); }

namespace {

std::uint64_t pack(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d,
                   std::uint64_t m) {
    return ((static_cast<std::uint64_t>(d) * m + c) * m + b) * m + a;
}

}  // namespace

bool ModOrbit::contains(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) const {
    return membership[pack(a % modulus, b % modulus, c % modulus, d % modulus, modulus)];
}

ModOrbit orbit_mod(const Quadruple& root, std::uint32_t m, const ModOrbitOptions& opts) {
    if (m < 2) throw InvalidInputError("modulus must be >= 2");
    if (m > opts.max_modulus)
        throw ResourceError("modulus " + std::to_string(m) + " exceeds cap " +
                            std::to_string(opts.max_modulus));
    const std::uint64_t mm = m;
    std::array<std::uint32_t, 4> r{};
    for (int i = 0; i < 4; ++i) {
        Int v = root[i] % static_cast<Int>(m);
        if (v < 0) v += m;
        r[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(v);
    }
    if (r[0] == 0 && r[1] == 0 && r[2] == 0 && r[3] == 0)
        throw InvalidInputError("root vanishes mod " + std::to_string(m));
    {
        std::uint64_t s = 0, sq = 0;
        for (std::uint32_t v : r) {
            s += v;
            sq += static_cast<std::uint64_t>(v) * v;
        }
        if ((2 * sq) % m != (s * s) % m)
            throw InvalidInputError("root is not on the cone mod " + std::to_string(m));
    }

    ModOrbit orbit;
    orbit.modulus = m;
    orbit.membership.assign(mm * mm * mm * mm, false);

    std::deque<std::array<std::uint32_t, 4>> queue;
    auto push = [&](const std::array<std::uint32_t, 4>& q) {
        std::uint64_t idx = pack(q[0], q[1], q[2], q[3], mm);
        if (orbit.membership[idx]) return;
        orbit.membership[idx] = true;
        ++orbit.size;
        if (q[0] == 0) ++orbit.slice_x1;
        // divisibility of the product, not of a factor: they differ when the
        // modulus is composite
        if (static_cast<std::uint64_t>(q[0]) * q[1] % m == 0) ++orbit.slice_x1x2;
        queue.push_back(q);
    };
    push(r);
    while (!queue.empty()) {
        std::array<std::uint32_t, 4> q = queue.front();
        queue.pop_front();
        std::uint64_t total = 0;
        for (std::uint32_t v : q) total += v;
        for (int i = 0; i < 4; ++i) {
            std::uint64_t others = total - q[static_cast<std::size_t>(i)];
            // 2*(sum of others) - q_i, reduced mod m
            std::uint64_t flipped =
                (2 * others + static_cast<std::uint64_t>(m) * m - q[static_cast<std::size_t>(i)]) %
                m;
            std::array<std::uint32_t, 4> next = q;
            next[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(flipped);
            push(next);
        }
    }
    return orbit;
}

ConeCount cone_points_mod_p(std::uint32_t p, std::vector<bool>* out_membership,
                            const ModOrbitOptions& opts) {
    if (p < 2) throw InvalidInputError("modulus must be >= 2");
    if (p > opts.max_modulus)
        throw ResourceError("modulus " + std::to_string(p) + " exceeds cap " +
                            std::to_string(opts.max_modulus));
    const std::uint64_t m = p;
    if (out_membership) out_membership->assign(m * m * m * m, false);
    ConeCount out;
    // Q(x) = 2*sum(x_i^2) - (sum x_i)^2 mod p, scanned over all p^4 tuples
    std::vector<std::uint32_t> sq(p);
    for (std::uint32_t i = 0; i < p; ++i) sq[i] = static_cast<std::uint32_t>((i * static_cast<std::uint64_t>(i)) % p);
    for (std::uint32_t a = 0; a < p; ++a)
        for (std::uint32_t b = 0; b < p; ++b)
            for (std::uint32_t c = 0; c < p; ++c)
                for (std::uint32_t d = 0; d < p; ++d) {
                    if ((a | b | c | d) == 0) continue;
                    std::uint64_t s = a + b + c + d;
                    std::uint64_t q2 = (2ull * (sq[a] + sq[b] + sq[c] + sq[d])) % p;
                    std::uint64_t s2 = (s % p) * (s % p) % p;
                    if (q2 != s2) continue;
                    ++out.points;
                    if (a == 0) ++out.slice_x1;
                    if (out_membership) (*out_membership)[pack(a, b, c, d, m)] = true;
                }
    return out;
}

bool orbit_fills_cone(const ModOrbit& orbit, const ConeCount& cone,
                      const std::vector<bool>& cone_membership) {
    if (orbit.membership.size() != cone_membership.size())
        throw InvalidInputError("orbit/cone modulus mismatch");
    // orbit must sit inside the cone; equality is then a size comparison
    for (std::size_t i = 0; i < orbit.membership.size(); ++i)
        if (orbit.membership[i] && !cone_membership[i])
            throw InvariantError("orbit point off the cone at index " + std::to_string(i));
    return orbit.size == cone.points;
}

Rational local_density(const ModOrbit& orbit, SlicePoly f) {
    if (orbit.size == 0) throw InvariantError("empty mod orbit");
    std::uint64_t hits = f == SlicePoly::X1 ? orbit.slice_x1 : orbit.slice_x1x2;
    return Rational(static_cast<Int>(hits), static_cast<Int>(orbit.size));
}

Rational local_density_product(const Quadruple& root, const std::vector<std::uint32_t>& primes,
                               SlicePoly f, const ModOrbitOptions& opts) {
    if (primes.empty()) throw InvalidInputError("empty prime list");
    for (std::size_t i = 0; i < primes.size(); ++i)
        for (std::size_t j = i + 1; j < primes.size(); ++j)
            if (primes[i] == primes[j]) throw InvalidInputError("repeated prime in squarefree product");
    Rational out(1, 1);
    for (std::uint32_t p : primes) out = out * local_density(orbit_mod(root, p, opts), f);
    return out;
}

std::vector<RatioRow> sieve_ratio_report(const CountSeries& series, double alpha_hat) {
    std::vector<RatioRow> rows;
    rows.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        double t = static_cast<double>(series.thresholds[i]);
        double logt = std::log(t);
        double talpha = std::pow(t, alpha_hat);
        RatioRow r;
        r.threshold = series.thresholds[i];
        r.pi_ratio = static_cast<double>(series.pi[i]) * logt / talpha;
        r.pi2_ratio = static_cast<double>(series.pi2[i]) * logt * logt / talpha;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace apollo

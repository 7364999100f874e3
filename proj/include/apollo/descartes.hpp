#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "apollo/checked_int.hpp"

namespace apollo {

// Curvature vector (a,b,c,d) of four mutually tangent circles. Entries are
// exact signed 128-bit integers; slot arguments throughout the library are
// 1-based (matching the generator names S1..S4), array access is 0-based.
struct Quadruple {
    std::array<Int, 4> v{};

    Quadruple() = default;
    Quadruple(Int a, Int b, Int c, Int d) : v{a, b, c, d} {}

    Int operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
    Int& operator[](int i) { return v[static_cast<std::size_t>(i)]; }

    bool operator==(const Quadruple&) const = default;

    Int sum() const;         // checked
    Int max_entry() const;   // signed maximum
    Int max_abs() const;     // max |entry|, checked
    Quadruple sorted() const;
    bool is_zero() const { return v[0] == 0 && v[1] == 0 && v[2] == 0 && v[3] == 0; }

    std::string str() const;  // "(a,b,c,d)"
};

// 2*(a^2+b^2+c^2+d^2) - (a+b+c+d)^2. Zero exactly on Descartes quadruples;
// the doubled form keeps everything in exact integers.
Int descartes_form(const Quadruple& q);

inline bool is_descartes(const Quadruple& q) { return descartes_form(q) == 0; }

// Replaces slot i (1..4) by 2*(sum of the other three) - q_i: the other
// solution of the quadratic, i.e. the reflected circle. Involution.
Quadruple flip(const Quadruple& q, int slot);

// True iff the sorted entries satisfy a <= 0 <= b <= c <= d, a+b+c >= d,
// and a+b+c+d > 0.
bool is_root(const Quadruple& q);

// gcd of |entries|; the packing is primitive iff this is 1.
// Throws InvalidInputError for the zero quadruple.
Int primitive_content(const Quadruple& q);

enum class PackingClass {
    Bounded,     // a < 0: bounding circle encloses the packing
    Strip,       // a = b = 0, c = d: packing between two parallel lines
    Degenerate,  // anything else (not reachable from a genuine packing)
};

// A validated root quadruple, stored sorted ascending.
class RootQuadruple {
public:
    // Validates root conditions on the sorted entries; throws InvalidInputError.
    static RootQuadruple from_quadruple(const Quadruple& q);

    const Quadruple& quad() const { return quad_; }
    PackingClass packing_class() const { return class_; }
    Int max_entry() const { return quad_[3]; }

private:
    RootQuadruple(Quadruple q, PackingClass c) : quad_(q), class_(c) {}
    Quadruple quad_;
    PackingClass class_;
};

struct Reduction {
    RootQuadruple root;
    std::vector<int> flips;  // slots applied, in order, to the input quadruple
};

// Repeatedly flips the largest entry (ties to the lowest slot) while that
// strictly decreases it; the fixed point of a genuine packing quadruple is
// its root. Requires is_descartes, positive sum, and at most one
// non-positive entry.
Reduction reduce_to_root(const Quadruple& q, std::size_t max_iterations = 1'000'000);

const char* packing_class_name(PackingClass c);

}  // namespace apollo

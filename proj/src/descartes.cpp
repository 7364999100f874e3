#include "apollo/descartes.hpp"

#include <algorithm>

namespace apollo {

Int Quadruple::sum() const {
    return checked_add(checked_add(v[0], v[1]), checked_add(v[2], v[3]));
}

Int Quadruple::max_entry() const {
    return std::max(std::max(v[0], v[1]), std::max(v[2], v[3]));
}

Int Quadruple::max_abs() const {
    Int m = 0;
    for (Int x : v) m = std::max(m, checked_abs(x));
    return m;
}

Quadruple Quadruple::sorted() const {
    Quadruple q = *this;
    std::sort(q.v.begin(), q.v.end());
    return q;
}

std::string Quadruple::str() const {
    return "(" + to_string(v[0]) + "," + to_string(v[1]) + "," + to_string(v[2]) + "," +
           to_string(v[3]) + ")";
}

Int descartes_form(const Quadruple& q) {
    Int sq = 0;
    for (Int x : q.v) sq = checked_add(sq, checked_mul(x, x));
    Int s = q.sum();
    return checked_sub(checked_mul(2, sq), checked_mul(s, s));
}

Quadruple flip(const Quadruple& q, int slot) {
    if (slot < 1 || slot > 4) throw InvalidInputError("flip slot must be 1..4");
    int i = slot - 1;
    Int others = checked_sub(q.sum(), q[i]);
    Quadruple r = q;
    r[i] = checked_sub(checked_mul(2, others), q[i]);
    return r;
}

bool is_root(const Quadruple& q) {
    Quadruple s = q.sorted();
    if (s[0] > 0) return false;
    if (s[1] < 0) return false;
    // a+b+c >= d and a+b+c+d > 0
    Int abc = checked_add(checked_add(s[0], s[1]), s[2]);
    if (abc < s[3]) return false;
    return checked_add(abc, s[3]) > 0;
}

Int primitive_content(const Quadruple& q) {
    if (q.is_zero()) throw InvalidInputError("primitive content of the zero quadruple");
    Int g = 0;
    for (Int x : q.v) g = gcd_int(g, checked_abs(x));
    return g;
}

RootQuadruple RootQuadruple::from_quadruple(const Quadruple& q) {
    Quadruple s = q.sorted();
    if (!is_descartes(s))
        throw InvalidInputError("not a Descartes quadruple (form = " + to_string(descartes_form(s)) +
                                "): " + q.str());
    if (!is_root(s)) throw InvalidInputError("not a root quadruple: " + q.str());
    PackingClass c = PackingClass::Degenerate;
    if (s[0] < 0)
        c = PackingClass::Bounded;
    else if (s[0] == 0 && s[1] == 0 && s[2] == s[3])
        c = PackingClass::Strip;
    return RootQuadruple(s, c);
}

Reduction reduce_to_root(const Quadruple& q, std::size_t max_iterations) {
    if (!is_descartes(q))
        throw InvalidInputError("not a Descartes quadruple (form = " + to_string(descartes_form(q)) +
                                "): " + q.str());
    if (q.sum() <= 0) throw InvalidInputError("quadruple has non-positive sum: " + q.str());
    // a packing holds at most one bounding circle; strip lines contribute zeros
    int negative = 0;
    for (Int x : q.v)
        if (x < 0) ++negative;
    if (negative > 1)
        throw InvalidInputError("more than one negative entry, not a packing quadruple: " +
                                q.str());

    Quadruple cur = q;
    std::vector<int> word;
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        // flip the largest entry, lowest slot on ties
        int slot = 1;
        for (int i = 1; i < 4; ++i)
            if (cur[i] > cur[slot - 1]) slot = i + 1;
        Quadruple next = flip(cur, slot);
        if (next[slot - 1] >= cur[slot - 1]) {
            // fixed point
            if (!is_root(cur))
                throw InvalidInputError("reduction reached a non-root fixed point from " + q.str());
            return Reduction{RootQuadruple::from_quadruple(cur), std::move(word)};
        }
        word.push_back(slot);
        cur = next;
    }
    throw ResourceError("reduction exceeded iteration cap for " + q.str());
}

const char* packing_class_name(PackingClass c) {
    switch (c) {
        case PackingClass::Bounded: return "bounded";
        case PackingClass::Strip: return "strip";
        case PackingClass::Degenerate: return "degenerate";
    }
    return "unknown";
}

}  // namespace apollo

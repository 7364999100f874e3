#pragma once

#include <array>
#include <optional>
#include <string>

#include "apollo/descartes.hpp"

namespace apollo {

struct Vec2 {
    double x = 0;
    double y = 0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const;
};

// One row (b-bar, b, b*x, b*y) of the augmented configuration matrix: signed
// curvature b, co-curvature b-bar (curvature of the image under inversion in
// the unit circle), and curvature-scaled center. A line is stored with b = 0,
// (cx, cy) the unit normal pointing into its half-plane interior, and
// b-bar = 2h where h is the signed offset along that normal; the limit of
// shrinking-curvature circles gives exactly this row, and it keeps the
// configuration matrix invertible for strip packings.
struct CircleRow {
    double cocurv = 0;
    double curv = 0;
    double cx = 0;
    double cy = 0;
};

// Resolved Euclidean shape of a row.
struct CircleShape {
    bool is_line = false;
    Vec2 center;          // circle only
    double radius = 0;    // circle only, positive
    Vec2 normal;          // line only, unit, points into the interior
    double offset = 0;    // line only: {p : normal . p = offset}
};

// Recovers center/radius (or normal/offset) from a row; validates the
// co-curvature identity b-bar = b(x^2+y^2) - 1/b to 1e-9 relative, or a unit
// normal for line rows. Throws InvalidInputError when violated.
CircleShape circle_from_row(const CircleRow& row);

using Mat4 = std::array<std::array<double, 4>, 4>;

// Ordered, oriented Descartes configuration as the 4x4 real matrix whose rows
// are CircleRows. Left multiplication by a generator replaces one circle by
// its reflection through the dual circle; the curvature column follows the
// exact integer flips.
class ConfigMatrix {
public:
    static ConfigMatrix from_rows(const std::array<CircleRow, 4>& rows);

    // Canonical embedding of a root quadruple: bounded packings center the
    // bounding circle at the origin with the slot-2 circle on the negative
    // x-axis; strip packings (0,0,c,c) lie between y = 0 and y = 2/c with
    // circles of radius 1/c at x = 0 and x = 2/c.
    static ConfigMatrix standard_embedding(const RootQuadruple& root);

    const CircleRow& row(int slot) const;  // 1..4
    std::array<double, 4> curvatures() const;
    Mat4 matrix() const;

private:
    ConfigMatrix() = default;
    std::array<CircleRow, 4> rows_;
};

// S_slot * W: row `slot` replaced by twice the sum of the other rows minus
// itself. Throws NumericError on non-finite output.
ConfigMatrix propagate(const ConfigMatrix& w, int slot);

// max_i || M_i^t Q_W M_i - Q_W ||_max / max(1, ||M_i||_max^2) with
// M_i = W^-1 S_i W: certifies numerically that conjugation by W carries the
// flip group into the orthogonal group of the Wilker form. The defect is
// normalized by the squared magnitude of M_i, whose entries grow like the
// squared curvature scale. Throws NumericError when W is singular.
double conjugation_check(const ConfigMatrix& w);

// Mutual tangency with orientation-compatible sign: |z1 - z2| = |1/b1 + 1/b2|
// for circles (signed curvatures make internal tangency work out), point-line
// distance = radius against lines, antiparallel normals for line pairs.
bool tangency_check(const CircleRow& a, const CircleRow& b, double tol = 1e-9);
bool tangency_check(const CircleShape& a, const CircleShape& b, double tol = 1e-9);

// Tangency point of two tangent circles/lines; empty for the line-line pair
// (tangent at infinity).
std::optional<Vec2> tangency_point(const CircleShape& a, const CircleShape& b);

// The circle (or line) through the three pairwise tangency points of the
// rows other than `slot`. Inversion in it swaps the slot circle with its
// flip and fixes the other three.
CircleShape dual_circle(const ConfigMatrix& w, int slot);

// Image of `c` under inversion in `mirror`. Circles through the mirror
// center map to lines and vice versa; reflection when the mirror is a line.
CircleShape invert_circle(const CircleShape& c, const CircleShape& mirror);

struct RenderOptions {
    Int bound = 0;            // curvature < bound; 0 means depth-limited only
    int max_depth = 10'000;
    bool labels = false;
    std::size_t element_cap = 100'000;
    int size_px = 800;
};

// Deterministic SVG of the packing: one circle element per circle event (so
// the element count matches count_circles at the same bound), line elements
// for strip packing lines.
std::string render_svg(const RootQuadruple& root, const RenderOptions& opts);

}  // namespace apollo

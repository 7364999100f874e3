#include "apollo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_set>
#include <vector>

namespace apollo {

namespace {

constexpr double kLineEps = 1e-12;

bool finite(double v) { return std::isfinite(v); }

double row_scale(const CircleRow& r) {
    return std::max({1.0, std::fabs(r.cocurv), std::fabs(r.curv), std::fabs(r.cx), std::fabs(r.cy)});
}

// Wilker form: rows (0,-4,0,0), (-4,0,0,0), (0,0,2,0), (0,0,0,2).
const Mat4 kWilker = {{{0, -4, 0, 0}, {-4, 0, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2}}};

Mat4 matmul(const Mat4& a, const Mat4& b) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            double aik = a[i][k];
            if (aik == 0) continue;
            for (int j = 0; j < 4; ++j) r[i][j] += aik * b[k][j];
        }
    return r;
}

Mat4 transpose(const Mat4& a) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = a[j][i];
    return r;
}

// Gauss-Jordan with partial pivoting; throws NumericError on singularity.
Mat4 inverse(const Mat4& a) {
    Mat4 m = a;
    Mat4 inv{};
    for (int i = 0; i < 4; ++i) inv[i][i] = 1.0;
    double scale = 0;
    for (const auto& row : a)
        for (double v : row) scale = std::max(scale, std::fabs(v));
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
        // valid configurations keep |det W| fixed at 8, so only a pivot
        // collapse far below the working precision marks real singularity
        if (std::fabs(m[pivot][col]) <= 1e-12 * std::max(scale, 1.0))
            throw NumericError("singular configuration matrix");
        std::swap(m[pivot], m[col]);
        std::swap(inv[pivot], inv[col]);
        double d = m[col][col];
        for (int j = 0; j < 4; ++j) {
            m[col][j] /= d;
            inv[col][j] /= d;
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            double f = m[r][col];
            if (f == 0) continue;
            for (int j = 0; j < 4; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

Mat4 generator_matrix(int slot) {
    Mat4 g{};
    for (int i = 0; i < 4; ++i) g[i][i] = 1.0;
    for (int j = 0; j < 4; ++j) g[slot - 1][j] = (j == slot - 1) ? -1.0 : 2.0;
    return g;
}

}  // namespace

double Vec2::norm() const { return std::hypot(x, y); }

CircleShape circle_from_row(const CircleRow& row) {
    CircleShape s;
    if (std::fabs(row.curv) < kLineEps) {
        double n = std::hypot(row.cx, row.cy);
        if (std::fabs(n - 1.0) > 1e-9)
            throw InvalidInputError("line row without a unit normal");
        s.is_line = true;
        s.normal = {row.cx, row.cy};
        s.offset = row.cocurv / 2.0;
        return s;
    }
    double x = row.cx / row.curv;
    double y = row.cy / row.curv;
    double expected = row.curv * (x * x + y * y) - 1.0 / row.curv;
    if (std::fabs(expected - row.cocurv) > 1e-9 * row_scale(row))
        throw InvalidInputError("co-curvature identity violated");
    s.center = {x, y};
    s.radius = 1.0 / std::fabs(row.curv);
    return s;
}

ConfigMatrix ConfigMatrix::from_rows(const std::array<CircleRow, 4>& rows) {
    ConfigMatrix w;
    w.rows_ = rows;
    for (const CircleRow& r : rows)
        circle_from_row(r);  // validates each row
    return w;
}

const CircleRow& ConfigMatrix::row(int slot) const {
    if (slot < 1 || slot > 4) throw InvalidInputError("row slot must be 1..4");
    return rows_[static_cast<std::size_t>(slot - 1)];
}

std::array<double, 4> ConfigMatrix::curvatures() const {
    return {rows_[0].curv, rows_[1].curv, rows_[2].curv, rows_[3].curv};
}

Mat4 ConfigMatrix::matrix() const {
    Mat4 m{};
    for (int i = 0; i < 4; ++i) {
        m[i][0] = rows_[static_cast<std::size_t>(i)].cocurv;
        m[i][1] = rows_[static_cast<std::size_t>(i)].curv;
        m[i][2] = rows_[static_cast<std::size_t>(i)].cx;
        m[i][3] = rows_[static_cast<std::size_t>(i)].cy;
    }
    return m;
}

namespace {

CircleRow row_from_circle(double curv, Vec2 center) {
    CircleRow r;
    r.curv = curv;
    r.cx = curv * center.x;
    r.cy = curv * center.y;
    r.cocurv = curv * (center.x * center.x + center.y * center.y) - 1.0 / curv;
    return r;
}

// Intersect |z - c1| = r1 with |z - c2| = r2; picks the solution with larger
// y (ties toward +y). Throws NumericError when the circles do not meet.
Vec2 circle_circle_point(Vec2 c1, double r1, Vec2 c2, double r2) {
    Vec2 d = c2 - c1;
    double dist = d.norm();
    if (dist < kLineEps) throw NumericError("concentric circles in embedding");
    double a = (r1 * r1 - r2 * r2 + dist * dist) / (2 * dist);
    double h2 = r1 * r1 - a * a;
    if (h2 < -1e-9 * std::max(1.0, r1 * r1)) throw NumericError("circles do not intersect");
    // the subtraction leaves ~ulp noise; taking its square root would shove
    // an exactly-on-axis intersection off by ~1e-8
    double noise_floor = 1e-14 * std::max(r1 * r1, a * a);
    double h = h2 <= noise_floor ? 0.0 : std::sqrt(h2);
    Vec2 base = c1 + d * (a / dist);
    Vec2 perp{-d.y / dist, d.x / dist};
    Vec2 p1 = base + perp * h;
    Vec2 p2 = base - perp * h;
    return (p1.y >= p2.y) ? p1 : p2;
}

}  // namespace

ConfigMatrix ConfigMatrix::standard_embedding(const RootQuadruple& root) {
    const Quadruple& q = root.quad();
    std::array<CircleRow, 4> rows{};
    if (root.packing_class() == PackingClass::Strip) {
        // lines y = 0 (interior below) and y = 2/c (interior above), circles
        // of radius 1/c at x = 0 and x = 2/c
        double c = static_cast<double>(q[2]);
        rows[0] = CircleRow{0, 0, 0, -1};
        rows[1] = CircleRow{4.0 / c, 0, 0, 1};
        rows[2] = row_from_circle(c, {0, 1.0 / c});
        rows[3] = row_from_circle(c, {2.0 / c, 1.0 / c});
        return from_rows(rows);
    }
    if (root.packing_class() != PackingClass::Bounded)
        throw InvalidInputError("no standard embedding for a degenerate root");
    double a = static_cast<double>(q[0]);
    double b = static_cast<double>(q[1]);
    double c = static_cast<double>(q[2]);
    double d = static_cast<double>(q[3]);
    double ra = 1.0 / -a;  // bounding radius
    Vec2 za{0, 0};
    Vec2 zb{-(ra - 1.0 / b), 0};
    // third circle: internally tangent to the bounding circle, externally to b
    Vec2 zc = circle_circle_point(za, ra - 1.0 / c, zb, 1.0 / b + 1.0 / c);
    Vec2 zd = circle_circle_point(za, ra - 1.0 / d, zb, 1.0 / b + 1.0 / d);
    // two mirror placements; keep the one tangent to circle c
    double want = 1.0 / c + 1.0 / d;
    if (std::fabs((zd - zc).norm() - want) > 1e-6 * std::max(1.0, want)) {
        zd.y = -zd.y;
        if (std::fabs((zd - zc).norm() - want) > 1e-6 * std::max(1.0, want))
            throw NumericError("standard embedding failed tangency closure");
    }
    rows[0] = row_from_circle(a, za);
    rows[1] = row_from_circle(b, zb);
    rows[2] = row_from_circle(c, zc);
    rows[3] = row_from_circle(d, zd);
    return from_rows(rows);
}

ConfigMatrix propagate(const ConfigMatrix& w, int slot) {
    if (slot < 1 || slot > 4) throw InvalidInputError("propagate slot must be 1..4");
    std::array<CircleRow, 4> rows = {w.row(1), w.row(2), w.row(3), w.row(4)};
    int i = slot - 1;
    auto& r = rows[static_cast<std::size_t>(i)];
    CircleRow sum{};
    for (int j = 0; j < 4; ++j) {
        if (j == i) continue;
        sum.cocurv += rows[static_cast<std::size_t>(j)].cocurv;
        sum.curv += rows[static_cast<std::size_t>(j)].curv;
        sum.cx += rows[static_cast<std::size_t>(j)].cx;
        sum.cy += rows[static_cast<std::size_t>(j)].cy;
    }
    r.cocurv = 2 * sum.cocurv - r.cocurv;
    r.curv = 2 * sum.curv - r.curv;
    r.cx = 2 * sum.cx - r.cx;
    r.cy = 2 * sum.cy - r.cy;
    if (!finite(r.cocurv) || !finite(r.curv) || !finite(r.cx) || !finite(r.cy))
        throw NumericError("propagation produced non-finite row");
    return ConfigMatrix::from_rows(rows);
}

double conjugation_check(const ConfigMatrix& w) {
    Mat4 m = w.matrix();
    Mat4 minv = inverse(m);
    double worst = 0;
    for (int slot = 1; slot <= 4; ++slot) {
        Mat4 conj = matmul(matmul(minv, generator_matrix(slot)), m);
        // entries of the conjugated reflection grow like curvature^2, so the
        // certificate is the defect relative to that scale; the absolute
        // defect would drown in representation error after a few levels
        double magnitude = 0;
        for (const auto& row : conj)
            for (double v : row) magnitude = std::max(magnitude, std::fabs(v));
        Mat4 lhs = matmul(matmul(transpose(conj), kWilker), conj);
        double defect = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                defect = std::max(defect, std::fabs(lhs[i][j] - kWilker[i][j]));
        worst = std::max(worst, defect / std::max(1.0, magnitude * magnitude));
    }
    return worst;
}

bool tangency_check(const CircleShape& a, const CircleShape& b, double tol) {
    if (a.is_line && b.is_line) {
        // parallel with opposite interiors: tangent at infinity
        return std::fabs(a.normal.x + b.normal.x) < tol && std::fabs(a.normal.y + b.normal.y) < tol;
    }
    if (a.is_line || b.is_line) {
        const CircleShape& line = a.is_line ? a : b;
        const CircleShape& circ = a.is_line ? b : a;
        double dist = std::fabs(line.normal.dot(circ.center) - line.offset);
        double scale = std::max(1.0, circ.center.norm());
        return std::fabs(dist - circ.radius) < tol * scale;
    }
    double dist = (a.center - b.center).norm();
    double scale = std::max({1.0, a.center.norm(), b.center.norm()});
    // signed curvatures were folded into radii, so test both tangency kinds
    bool external = std::fabs(dist - (a.radius + b.radius)) < tol * scale;
    bool internal = std::fabs(dist - std::fabs(a.radius - b.radius)) < tol * scale;
    return external || internal;
}

bool tangency_check(const CircleRow& a, const CircleRow& b, double tol) {
    if (std::fabs(a.curv) >= kLineEps && std::fabs(b.curv) >= kLineEps) {
        Vec2 za{a.cx / a.curv, a.cy / a.curv};
        Vec2 zb{b.cx / b.curv, b.cy / b.curv};
        double want = std::fabs(1.0 / a.curv + 1.0 / b.curv);  // orientation-compatible sign
        double scale = std::max({1.0, za.norm(), zb.norm()});
        return std::fabs((za - zb).norm() - want) < tol * scale;
    }
    return tangency_check(circle_from_row(a), circle_from_row(b), tol);
}

std::optional<Vec2> tangency_point(const CircleShape& a, const CircleShape& b) {
    if (a.is_line && b.is_line) return std::nullopt;
    if (a.is_line || b.is_line) {
        const CircleShape& line = a.is_line ? a : b;
        const CircleShape& circ = a.is_line ? b : a;
        double h = line.normal.dot(circ.center) - line.offset;
        return circ.center - line.normal * h;
    }
    // curvature-weighted mean (b1 z1 + b2 z2) / (b1 + b2); for internal
    // tangency the enclosing circle carries negative curvature
    double b1 = 1.0 / a.radius;
    double b2 = 1.0 / b.radius;
    double dist = (a.center - b.center).norm();
    bool internal =
        std::fabs(dist - std::fabs(a.radius - b.radius)) < std::fabs(dist - (a.radius + b.radius));
    if (internal) {
        if (a.radius >= b.radius)
            b1 = -b1;
        else
            b2 = -b2;
    }
    double denom = b1 + b2;
    if (std::fabs(denom) < kLineEps) return std::nullopt;
    return (a.center * b1 + b.center * b2) * (1.0 / denom);
}

namespace {

CircleShape line_through(Vec2 p, Vec2 q) {
    Vec2 d = q - p;
    double n = d.norm();
    if (n < kLineEps) throw InvalidInputError("degenerate tangency points");
    CircleShape s;
    s.is_line = true;
    s.normal = {-d.y / n, d.x / n};
    s.offset = s.normal.dot(p);
    return s;
}

CircleShape circle_through(Vec2 p1, Vec2 p2, Vec2 p3) {
    double ax = p1.x, ay = p1.y, bx = p2.x, by = p2.y, cx = p3.x, cy = p3.y;
    double d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    double scale = std::max({1.0, p1.norm(), p2.norm(), p3.norm()});
    if (std::fabs(d) < 1e-9 * scale * scale) return line_through(p1, (p2 - p1).norm() > kLineEps ? p2 : p3);
    double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
    CircleShape s;
    s.center = {(a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d,
                (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d};
    s.radius = (p1 - s.center).norm();
    return s;
}

}  // namespace

CircleShape dual_circle(const ConfigMatrix& w, int slot) {
    std::array<CircleShape, 3> shapes;
    int k = 0;
    for (int s = 1; s <= 4; ++s)
        if (s != slot) shapes[static_cast<std::size_t>(k++)] = circle_from_row(w.row(s));
    std::vector<Vec2> pts;
    bool at_infinity = false;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            auto p = tangency_point(shapes[static_cast<std::size_t>(i)],
                                    shapes[static_cast<std::size_t>(j)]);
            if (p)
                pts.push_back(*p);
            else
                at_infinity = true;
        }
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if ((pts[i] - pts[j]).norm() < kLineEps)
                throw InvalidInputError("coincident tangency points in dual circle");
    if (at_infinity) {
        if (pts.size() != 2) throw InvalidInputError("degenerate dual circle");
        return line_through(pts[0], pts[1]);  // one point at infinity
    }
    return circle_through(pts[0], pts[1], pts[2]);
}

CircleShape invert_circle(const CircleShape& c, const CircleShape& mirror) {
    if (mirror.is_line) {
        // inversion in a line is reflection
        if (c.is_line) {
            CircleShape s = c;
            double cosang = c.normal.dot(mirror.normal);
            Vec2 reflected = c.normal - mirror.normal * (2 * cosang);
            // reflect a point of c to recover the offset
            Vec2 p = c.normal * c.offset;
            double h = mirror.normal.dot(p) - mirror.offset;
            Vec2 pr = p - mirror.normal * (2 * h);
            s.normal = reflected;
            s.offset = reflected.dot(pr);
            return s;
        }
        CircleShape s = c;
        double h = mirror.normal.dot(c.center) - mirror.offset;
        s.center = c.center - mirror.normal * (2 * h);
        return s;
    }
    Vec2 z0 = mirror.center;
    double r2 = mirror.radius * mirror.radius;
    if (c.is_line) {
        double h = c.normal.dot(z0) - c.offset;
        if (std::fabs(h) < kLineEps) return c;  // line through the center is fixed
        // image: circle through z0 with diametral point z0 - (r^2/h) n
        Vec2 far = z0 - c.normal * (r2 / h);
        CircleShape s;
        s.center = (z0 + far) * 0.5;
        s.radius = (far - z0).norm() * 0.5;
        return s;
    }
    Vec2 d = c.center - z0;
    double sdist = d.dot(d) - c.radius * c.radius;
    if (std::fabs(sdist) < kLineEps * std::max(1.0, d.dot(d))) {
        // circle passes through the mirror center: image is a line
        Vec2 far = c.center * 2.0 - z0;  // antipode of z0 on c
        Vec2 far_img = z0 + (far - z0) * (r2 / (far - z0).dot(far - z0));
        double n = d.norm();
        if (n < kLineEps) throw NumericError("inversion degenerate: concentric through-center");
        CircleShape s;
        s.is_line = true;
        s.normal = {d.x / n, d.y / n};
        s.offset = s.normal.dot(far_img);
        return s;
    }
    CircleShape s;
    s.center = z0 + d * (r2 / sdist);
    s.radius = std::fabs(r2 * c.radius / sdist);
    if (!finite(s.center.x) || !finite(s.center.y) || !finite(s.radius))
        throw NumericError("inversion produced non-finite circle");
    return s;
}

// ---------------------------------------------------------------------------
// SVG rendering
// ---------------------------------------------------------------------------

namespace {

struct Extent {
    double min_x = 1e300, min_y = 1e300, max_x = -1e300, max_y = -1e300;

    void add(Vec2 p) {
        min_x = std::min(min_x, p.x);
        min_y = std::min(min_y, p.y);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
    }
    void add_circle(const CircleShape& c) {
        add({c.center.x - c.radius, c.center.y - c.radius});
        add({c.center.x + c.radius, c.center.y + c.radius});
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.8g", v == 0 ? 0.0 : v);  // avoid "-0"
    return buf;
}

struct SvgItem {
    CircleShape shape;
    Int curvature;
};

struct StripRenderKey {
    std::array<std::int64_t, 4> v;
    bool operator==(const StripRenderKey&) const = default;
};

struct StripRenderKeyHash {
    std::size_t operator()(const StripRenderKey& k) const {
        std::size_t h = 0;
        for (auto x : k.v) h = h * 1099511628211ULL + static_cast<std::size_t>(x);
        return h;
    }
};

}  // namespace

std::string render_svg(const RootQuadruple& root, const RenderOptions& opts) {
    if (opts.bound == 0 && opts.max_depth < 0) throw InvalidInputError("render needs a stop rule");
    Int bound = opts.bound;
    const bool by_depth_only = bound == 0;
    ConfigMatrix w0 = ConfigMatrix::standard_embedding(root);
    const Quadruple& rq = root.quad();

    std::vector<SvgItem> items;
    auto emit = [&](const CircleRow& row, Int curvature) {
        if (items.size() >= opts.element_cap) throw ResourceError("render element cap exceeded");
        items.push_back(SvgItem{circle_from_row(row), curvature});
    };

    // depth-0: the root circles
    for (int s = 1; s <= 4; ++s)
        if (by_depth_only || rq[s - 1] < bound) emit(w0.row(s), rq[s - 1]);

    struct Node {
        Quadruple quad;
        ConfigMatrix config;
        int last;
        int depth;
    };

    if (root.packing_class() == PackingClass::Strip) {
        // mirror of the counting walk: breadth-first with vector dedup
        std::unordered_set<StripRenderKey, StripRenderKeyHash> seen;
        auto key = [](const Quadruple& q) {
            StripRenderKey k{};
            for (int i = 0; i < 4; ++i) {
                if (q[i] < 0 || q[i] > static_cast<Int>(INT64_MAX))
                    throw ResourceError("strip render entry outside 64-bit dedup range");
                k.v[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(q[i]);
            }
            return k;
        };
        seen.insert(key(rq));
        std::vector<Node> frontier{Node{rq, w0, 0, 0}};
        while (!frontier.empty()) {
            std::vector<Node> next;
            for (const Node& node : frontier) {
                if (node.depth >= opts.max_depth) continue;
                for (int slot = 1; slot <= 4; ++slot) {
                    Quadruple child = flip(node.quad, slot);
                    Int created = child[slot - 1];
                    if (!by_depth_only && created >= bound) continue;
                    if (!seen.insert(key(child)).second) continue;
                    ConfigMatrix cw = propagate(node.config, slot);
                    emit(cw.row(slot), created);
                    next.push_back(Node{child, cw, slot, node.depth + 1});
                }
            }
            frontier = std::move(next);
        }
    } else {
        // emit+descend in ascending slot order, matching the counting walk
        std::vector<Node> stack{Node{rq, w0, 0, 0}};
        while (!stack.empty()) {
            Node node = std::move(stack.back());
            stack.pop_back();
            if (node.depth > 0) emit(node.config.row(node.last), node.quad[node.last - 1]);
            if (node.depth >= opts.max_depth) continue;
            for (int slot = 4; slot >= 1; --slot) {
                if (slot == node.last) continue;
                Quadruple child = flip(node.quad, slot);
                Int created = child[slot - 1];
                if (!by_depth_only && created >= bound) continue;
                stack.push_back(Node{child, propagate(node.config, slot), slot, node.depth + 1});
            }
        }
    }

    // view box from circle extents (lines span the box)
    Extent ext;
    for (const SvgItem& it : items)
        if (!it.shape.is_line) ext.add_circle(it.shape);
    if (ext.min_x > ext.max_x) ext = Extent{-1, -1, 1, 1};
    double pad = 0.02 * std::max(ext.max_x - ext.min_x, ext.max_y - ext.min_y);
    ext.min_x -= pad;
    ext.min_y -= pad;
    ext.max_x += pad;
    ext.max_y += pad;

    std::ostringstream svg;
    double width = ext.max_x - ext.min_x;
    double height = ext.max_y - ext.min_y;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.size_px << "\" height=\""
        << fmt(opts.size_px * height / width) << "\" viewBox=\"" << fmt(ext.min_x) << " "
        << fmt(-ext.max_y) << " " << fmt(width) << " " << fmt(height) << "\">\n";
    svg << "<g fill=\"none\" stroke=\"black\" stroke-width=\"" << fmt(width / 1200.0) << "\">\n";
    // y axis flipped so the packing renders in the usual orientation
    for (const SvgItem& it : items) {
        if (it.shape.is_line) {
            // clip the line n.p = offset to the view box
            Vec2 n = it.shape.normal;
            Vec2 dir{-n.y, n.x};
            Vec2 p0 = n * it.shape.offset;
            double span = 2 * std::max(width, height);
            Vec2 a = p0 - dir * span;
            Vec2 b = p0 + dir * span;
            svg << "<line x1=\"" << fmt(a.x) << "\" y1=\"" << fmt(-a.y) << "\" x2=\"" << fmt(b.x)
                << "\" y2=\"" << fmt(-b.y) << "\"/>\n";
        } else {
            svg << "<circle cx=\"" << fmt(it.shape.center.x) << "\" cy=\"" << fmt(-it.shape.center.y)
                << "\" r=\"" << fmt(it.shape.radius) << "\"/>\n";
        }
    }
    svg << "</g>\n";
    if (opts.labels) {
        svg << "<g fill=\"black\" text-anchor=\"middle\" font-family=\"sans-serif\">\n";
        for (const SvgItem& it : items) {
            if (it.shape.is_line) continue;
            double fs = it.shape.radius * 0.7;
            if (fs < width / 400.0) continue;  // unreadably small
            svg << "<text x=\"" << fmt(it.shape.center.x) << "\" y=\""
                << fmt(-it.shape.center.y + fs * 0.35) << "\" font-size=\"" << fmt(fs) << "\">"
                << to_string(it.curvature) << "</text>\n";
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace apollo

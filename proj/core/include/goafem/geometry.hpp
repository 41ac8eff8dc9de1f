#pragma once

#include <array>
#include <cmath>

namespace goafem {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return s * a; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

/// 2x2 matrix, row-major.
struct Mat2 {
    double a11 = 0.0, a12 = 0.0;
    double a21 = 0.0, a22 = 0.0;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

inline Vec2 operator*(const Mat2& m, Vec2 v) {
    return {m.a11 * v.x + m.a12 * v.y, m.a21 * v.x + m.a22 * v.y};
}
inline Mat2 operator*(double s, const Mat2& m) {
    return {s * m.a11, s * m.a12, s * m.a21, s * m.a22};
}
inline Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
}

/// Frobenius inner product A:B.
inline double contract(const Mat2& a, const Mat2& b) {
    return a.a11 * b.a11 + a.a12 * b.a12 + a.a21 * b.a21 + a.a22 * b.a22;
}

inline double det(const Mat2& m) { return m.a11 * m.a22 - m.a12 * m.a21; }

inline Mat2 inverse(const Mat2& m) {
    const double d = det(m);
    return {m.a22 / d, -m.a12 / d, -m.a21 / d, m.a11 / d};
}

inline Mat2 transpose(const Mat2& m) { return {m.a11, m.a21, m.a12, m.a22}; }

/// Smallest eigenvalue of a symmetric 2x2 matrix (symmetry assumed).
inline double min_eigenvalue_sym(const Mat2& m) {
    const double tr = m.a11 + m.a22;
    const double dt = det(m);
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * dt));
    return 0.5 * (tr - disc);
}

/// Affine map from the reference triangle {(0,0),(1,0),(0,1)} onto a
/// physical triangle. grad_phys = inv_t * grad_ref; hess_phys = inv_t * H * inv.
struct AffineMap {
    Vec2 origin;
    Mat2 jac;     // columns: p1-p0, p2-p0
    Mat2 inv;     // jac^{-1}
    Mat2 inv_t;   // jac^{-T}
    double det_jac = 0.0;

    AffineMap(Vec2 p0, Vec2 p1, Vec2 p2) {
        origin = p0;
        jac = {p1.x - p0.x, p2.x - p0.x, p1.y - p0.y, p2.y - p0.y};
        det_jac = det(jac);
        inv = inverse(jac);
        inv_t = transpose(inv);
    }

    Vec2 to_physical(Vec2 ref) const { return origin + jac * ref; }
    Vec2 to_reference(Vec2 phys) const { return inv * (phys - origin); }
};

inline double triangle_area(Vec2 a, Vec2 b, Vec2 c) {
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

}  // namespace goafem

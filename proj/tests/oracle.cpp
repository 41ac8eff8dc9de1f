#include "oracle.hpp"

namespace oracle {

namespace {

// 8-point Gauss-Legendre rule on [-1,1] (Abramowitz & Stegun 25.4.30).
constexpr int kN = 8;
constexpr double kNodes[kN] = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr double kWeights[kN] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

}  // namespace

double integrate_triangle(goafem::Vec2 a, goafem::Vec2 b, goafem::Vec2 c,
                          const std::function<double(goafem::Vec2)>& f) {
    using goafem::Vec2;
    const double jac = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
    double sum = 0.0;
    for (int i = 0; i < kN; ++i) {
        const double u = 0.5 * (kNodes[i] + 1.0);
        for (int j = 0; j < kN; ++j) {
            const double v = 0.5 * (kNodes[j] + 1.0);
            // collapsed square: (u, v) -> barycentric (1-u, u(1-v), uv)
            const double l1 = u * (1.0 - v);
            const double l2 = u * v;
            const double l0 = 1.0 - l1 - l2;
            const Vec2 x{l0 * a.x + l1 * b.x + l2 * c.x, l0 * a.y + l1 * b.y + l2 * c.y};
            sum += 0.25 * kWeights[i] * kWeights[j] * u * f(x);
        }
    }
    return sum * jac;
}

double integrate_segment(goafem::Vec2 a, goafem::Vec2 b,
                         const std::function<double(goafem::Vec2)>& f) {
    const double len = goafem::norm(b - a);
    double sum = 0.0;
    for (int i = 0; i < kN; ++i) {
        const double t = 0.5 * (kNodes[i] + 1.0);
        sum += 0.5 * kWeights[i] * f(a + t * (b - a));
    }
    return sum * len;
}

void local_matrix(const std::array<goafem::Vec2, 3>& c, int degree, const goafem::Mat2& A,
                  goafem::Vec2 b, double cc, double out[6][6]) {
    using goafem::Vec2;
    const int nd = degree == 1 ? 3 : 6;
    const double inv_det =
        1.0 / ((c[1].x - c[0].x) * (c[2].y - c[0].y) - (c[2].x - c[0].x) * (c[1].y - c[0].y));
    const Vec2 dl[3] = {{(c[1].y - c[2].y) * inv_det, (c[2].x - c[1].x) * inv_det},
                        {(c[2].y - c[0].y) * inv_det, (c[0].x - c[2].x) * inv_det},
                        {(c[0].y - c[1].y) * inv_det, (c[1].x - c[0].x) * inv_det}};
    auto bary = [&](Vec2 x) {
        std::array<double, 3> l;
        l[1] = ((x.x - c[0].x) * (c[2].y - c[0].y) - (c[2].x - c[0].x) * (x.y - c[0].y)) * inv_det;
        l[2] = ((c[1].x - c[0].x) * (x.y - c[0].y) - (x.x - c[0].x) * (c[1].y - c[0].y)) * inv_det;
        l[0] = 1.0 - l[1] - l[2];
        return l;
    };
    auto phi = [&](int i, Vec2 x) {
        const auto l = bary(x);
        if (degree == 1) return l[i];
        if (i < 3) return l[i] * (2.0 * l[i] - 1.0);
        const int p = i - 3, q = (i - 2) % 3;
        return 4.0 * l[p] * l[q];
    };
    auto dphi = [&](int i, Vec2 x) {
        const auto l = bary(x);
        if (degree == 1) return dl[i];
        if (i < 3) return (4.0 * l[i] - 1.0) * dl[i];
        const int p = i - 3, q = (i - 2) % 3;
        return 4.0 * (l[p] * dl[q] + l[q] * dl[p]);
    };
    for (int i = 0; i < nd; ++i)
        for (int j = 0; j < nd; ++j)
            out[i][j] = integrate_triangle(c[0], c[1], c[2], [&](Vec2 x) {
                return dot(A * dphi(j, x), dphi(i, x)) + dot(b, dphi(j, x)) * phi(i, x) +
                       cc * phi(j, x) * phi(i, x);
            });
}

}  // namespace oracle

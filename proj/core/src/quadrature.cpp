#include "goafem/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace goafem {

namespace {

// Legendre polynomial P_n and derivative at t in [-1,1].
std::pair<double, double> legendre(int n, double t) {
    double p0 = 1.0, p1 = t;
    if (n == 0) return {1.0, 0.0};
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    const double dp = n * (t * p1 - p0) / (t * t - 1.0);
    return {p1, dp};
}

GaussRule make_gauss(int n) {
    if (n < 1) throw std::invalid_argument("gauss_rule: need at least one point");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev initial guess, Newton to machine precision.
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            auto [p, dp] = legendre(n, t);
            const double dt = p / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        auto [p, dp] = legendre(n, t);
        (void)p;
        const double w = 2.0 / ((1.0 - t * t) * dp * dp);
        // map [-1,1] -> [0,1]
        rule.nodes[n - 1 - i] = 0.5 * (t + 1.0);
        rule.weights[n - 1 - i] = 0.5 * w;
    }
    return rule;
}

void add_orbit1(TriangleRule& r, double w) {  // centroid
    r.points.push_back({1.0 / 3.0, 1.0 / 3.0, 0.5 * w});
}

void add_orbit3(TriangleRule& r, double a, double w) {  // (a,a,1-2a) permutations
    const double c = 1.0 - 2.0 * a;
    r.points.push_back({a, a, 0.5 * w});
    r.points.push_back({c, a, 0.5 * w});
    r.points.push_back({a, c, 0.5 * w});
}

TriangleRule make_triangle_rule(int degree) {
    TriangleRule r;
    if (degree <= 2) {
        r.degree = 2;
        add_orbit3(r, 1.0 / 6.0, 1.0 / 3.0);
    } else if (degree <= 4) {
        r.degree = 4;
        add_orbit3(r, 0.445948490915965, 0.223381589678011);
        add_orbit3(r, 0.091576213509771, 0.109951743655322);
    } else if (degree <= 5) {
        r.degree = 5;
        const double s15 = std::sqrt(15.0);
        add_orbit1(r, 9.0 / 40.0);
        add_orbit3(r, (6.0 + s15) / 21.0, (155.0 + s15) / 1200.0);
        add_orbit3(r, (6.0 - s15) / 21.0, (155.0 - s15) / 1200.0);
    } else {
        // Collapsed tensor-product Gauss rule: x = xi, y = eta (1 - xi).
        // The Jacobian (1 - xi) raises the xi-degree by one, so exactness
        // for total degree d needs 2q - 1 >= d + 1.
        r.degree = degree;
        const int q = (degree + 3) / 2;
        const GaussRule& g = gauss_rule(q);
        for (int i = 0; i < q; ++i) {
            for (int j = 0; j < q; ++j) {
                const double xi = g.nodes[i];
                const double eta = g.nodes[j];
                r.points.push_back({xi, eta * (1.0 - xi),
                                    g.weights[i] * g.weights[j] * (1.0 - xi)});
            }
        }
    }
    return r;
}

}  // namespace

const TriangleRule& triangle_rule(int degree) {
    static std::map<int, TriangleRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(degree);
    if (it == cache.end()) it = cache.emplace(degree, make_triangle_rule(degree)).first;
    return it->second;
}

const GaussRule& gauss_rule(int n_points) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n_points);
    if (it == cache.end()) it = cache.emplace(n_points, make_gauss(n_points)).first;
    return it->second;
}

}  // namespace goafem

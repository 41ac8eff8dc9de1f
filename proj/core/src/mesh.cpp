#include "goafem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace goafem {

namespace {

struct PairHash {
    size_t operator()(const std::pair<int, int>& p) const {
        return std::hash<long long>()((static_cast<long long>(p.first) << 32) ^
                                      static_cast<unsigned>(p.second));
    }
};

std::pair<int, int> edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

Mesh::Mesh(std::vector<Vertex> vertices, std::vector<Triangle> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
    build_topology();
}

void Mesh::build_topology() {
    const int nv = n_vertices();
    for (const Vertex& v : vertices_) {
        if (!std::isfinite(v.x) || !std::isfinite(v.y))
            throw std::runtime_error("mesh: non-finite vertex coordinate");
    }
    tri_edges_.assign(triangles_.size(), {-1, -1, -1});
    edges_.clear();
    std::unordered_map<std::pair<int, int>, int, PairHash> edge_ids;
    edge_ids.reserve(triangles_.size() * 2);

    for (int t = 0; t < n_triangles(); ++t) {
        const auto& tri = triangles_[t];
        for (int k : tri.v) {
            if (k < 0 || k >= nv) throw std::runtime_error("mesh: vertex index out of range");
        }
        const auto c = coords(t);
        if (triangle_area(c[0], c[1], c[2]) <= 0.0)
            throw std::runtime_error("mesh: non-positive triangle orientation");
        for (int e = 0; e < 3; ++e) {
            const auto key = edge_key(tri.v[e], tri.v[(e + 1) % 3]);
            auto [it, inserted] = edge_ids.try_emplace(key, static_cast<int>(edges_.size()));
            if (inserted) {
                edges_.push_back({key.first, key.second, t, -1});
            } else {
                Edge& ed = edges_[it->second];
                if (ed.tri1 >= 0)
                    throw std::runtime_error("mesh: edge shared by more than two triangles");
                ed.tri1 = t;
            }
            tri_edges_[t][e] = it->second;
        }
    }
    boundary_vertex_.assign(nv, 0);
    for (const Edge& e : edges_) {
        if (e.tri1 < 0) {
            boundary_vertex_[e.a] = 1;
            boundary_vertex_[e.b] = 1;
        }
    }
}

std::array<Vec2, 3> Mesh::coords(int t) const {
    const auto& tri = triangles_[t];
    return {Vec2{vertices_[tri.v[0]].x, vertices_[tri.v[0]].y},
            Vec2{vertices_[tri.v[1]].x, vertices_[tri.v[1]].y},
            Vec2{vertices_[tri.v[2]].x, vertices_[tri.v[2]].y}};
}

Vec2 Mesh::centroid(int t) const {
    const auto c = coords(t);
    return {(c[0].x + c[1].x + c[2].x) / 3.0, (c[0].y + c[1].y + c[2].y) / 3.0};
}

double Mesh::area(int t) const {
    const auto c = coords(t);
    return triangle_area(c[0], c[1], c[2]);
}

std::vector<std::pair<int, int>> Mesh::boundary_edges() const {
    std::vector<std::pair<int, int>> out;
    for (const Edge& e : edges_)
        if (e.tri1 < 0) out.emplace_back(e.a, e.b);
    return out;
}

double Mesh::total_area() const {
    double s = 0.0;
    for (int t = 0; t < n_triangles(); ++t) s += area(t);
    return s;
}

double Mesh::min_interior_angle() const {
    double min_angle = std::numeric_limits<double>::infinity();
    for (int t = 0; t < n_triangles(); ++t) {
        const auto c = coords(t);
        for (int k = 0; k < 3; ++k) {
            const Vec2 u = c[(k + 1) % 3] - c[k];
            const Vec2 w = c[(k + 2) % 3] - c[k];
            const double angle = std::acos(dot(u, w) / (norm(u) * norm(w)));
            min_angle = std::min(min_angle, angle);
        }
    }
    return min_angle;
}

void Mesh::validate_unit_square() const {
    const double tol = 1e-12;
    for (const Edge& e : edges_) {
        if (e.tri1 >= 0) continue;
        const Vertex& a = vertices_[e.a];
        const Vertex& b = vertices_[e.b];
        const bool on_boundary =
            (std::abs(a.x) < tol && std::abs(b.x) < tol) ||
            (std::abs(a.x - 1.0) < tol && std::abs(b.x - 1.0) < tol) ||
            (std::abs(a.y) < tol && std::abs(b.y) < tol) ||
            (std::abs(a.y - 1.0) < tol && std::abs(b.y - 1.0) < tol);
        if (!on_boundary)
            throw std::runtime_error("mesh: boundary edge not on the unit-square boundary");
    }
    if (std::abs(total_area() - 1.0) > 1e-12)
        throw std::runtime_error("mesh: triangle areas do not sum to 1");
}

Mesh initial_mesh(int n) {
    if (n < 1) throw std::invalid_argument("initial_mesh: n must be >= 1");
    std::vector<Vertex> vertices;
    vertices.reserve(static_cast<size_t>(n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});

    auto vid = [n](int i, int j) { return j * (n + 1) + i; };
    std::vector<Triangle> triangles;
    triangles.reserve(static_cast<size_t>(2) * n * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int v00 = vid(i, j), v10 = vid(i + 1, j);
            const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
            // refinement edge = hypotenuse (v00, v11)
            triangles.push_back({{v11, v00, v10}, 0});
            triangles.push_back({{v00, v11, v01}, 0});
        }
    }
    return Mesh(std::move(vertices), std::move(triangles));
}

Mesh refine_nvb(const Mesh& mesh, const std::vector<int>& marked) {
    const int nt = mesh.n_triangles();
    for (int t : marked) {
        if (t < 0 || t >= nt) throw std::out_of_range("refine_nvb: marked index out of range");
    }

    std::vector<char> edge_marked(mesh.n_edges(), 0);
    for (int t : marked) edge_marked[mesh.triangle_edges(t)[0]] = 1;

    // Closure: a triangle with any marked edge must have its refinement
    // edge marked too.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int t = 0; t < nt; ++t) {
            const auto& te = mesh.triangle_edges(t);
            if (!edge_marked[te[0]] && (edge_marked[te[1]] || edge_marked[te[2]])) {
                edge_marked[te[0]] = 1;
                changed = true;
            }
        }
    }

    std::vector<Vertex> vertices = mesh.vertices();
    std::vector<int> edge_mid(mesh.n_edges(), -1);
    for (int t = 0; t < nt; ++t) {
        for (int e : mesh.triangle_edges(t)) {
            if (edge_marked[e] && edge_mid[e] < 0) {
                edge_mid[e] = static_cast<int>(vertices.size());
                const auto& ed = mesh.edges()[e];
                vertices.push_back({0.5 * (mesh.vertex(ed.a).x + mesh.vertex(ed.b).x),
                                    0.5 * (mesh.vertex(ed.a).y + mesh.vertex(ed.b).y)});
            }
        }
    }

    std::vector<Triangle> triangles = mesh.triangles();
    std::vector<int> parents(nt);
    for (int t = 0; t < nt; ++t) parents[t] = t;

    auto bisect = [](const Triangle& tri, int mid) {
        // (a,b,c) with refinement edge (a,b): children keep the convention
        // that the refinement edge is opposite the newest vertex.
        const Triangle child_a{{tri.v[2], tri.v[0], mid}, tri.generation + 1};
        const Triangle child_b{{tri.v[1], tri.v[2], mid}, tri.generation + 1};
        return std::pair{child_a, child_b};
    };

    for (int t = 0; t < nt; ++t) {
        const auto& te = mesh.triangle_edges(t);
        const bool m0 = edge_marked[te[0]] != 0;
        if (!m0) continue;
        const bool m1 = edge_marked[te[1]] != 0;
        const bool m2 = edge_marked[te[2]] != 0;
        const Triangle tri = mesh.triangle(t);

        auto [child_a, child_b] = bisect(tri, edge_mid[te[0]]);
        std::vector<Triangle> out;
        out.reserve(4);
        if (m2) {  // child_a's refinement edge is the parent edge (v2, v0)
            auto [ga, gb] = bisect(child_a, edge_mid[te[2]]);
            out.push_back(ga);
            out.push_back(gb);
        } else {
            out.push_back(child_a);
        }
        if (m1) {  // child_b's refinement edge is the parent edge (v1, v2)
            auto [ga, gb] = bisect(child_b, edge_mid[te[1]]);
            out.push_back(ga);
            out.push_back(gb);
        } else {
            out.push_back(child_b);
        }

        triangles[t] = out[0];
        for (size_t k = 1; k < out.size(); ++k) {
            triangles.push_back(out[k]);
            parents.push_back(t);
        }
    }

    Mesh refined(std::move(vertices), std::move(triangles));
    refined.parents_ = std::move(parents);
    return refined;
}

Mesh uniform_refine(const Mesh& mesh) {
    std::vector<int> all(mesh.n_triangles());
    for (int t = 0; t < mesh.n_triangles(); ++t) all[t] = t;
    Mesh once = refine_nvb(mesh, all);

    std::vector<int> all2(once.n_triangles());
    for (int t = 0; t < once.n_triangles(); ++t) all2[t] = t;
    Mesh twice = refine_nvb(once, all2);

    // Compose parent maps so parents() refers to the input mesh.
    std::vector<int> parents(twice.n_triangles());
    for (int t = 0; t < twice.n_triangles(); ++t)
        parents[t] = once.parents()[twice.parents()[t]];
    // Every input triangle must have been bisected at least twice.
    for (int t = 0; t < twice.n_triangles(); ++t) {
        if (twice.triangle(t).generation < mesh.triangle(parents[t]).generation + 2)
            throw std::runtime_error("uniform_refine: incomplete double bisection");
    }
    twice.parents_ = std::move(parents);
    return twice;
}

double element_diameter(const Mesh& mesh, int t) {
    if (t < 0 || t >= mesh.n_triangles())
        throw std::out_of_range("element_diameter: index out of range");
    const auto c = mesh.coords(t);
    return std::max({norm(c[1] - c[0]), norm(c[2] - c[1]), norm(c[0] - c[2])});
}

void write_mesh(std::ostream& out, const Mesh& mesh) {
    out << "vertices " << mesh.n_vertices() << " triangles " << mesh.n_triangles() << "\n";
    char buf[64];
    for (const Vertex& v : mesh.vertices()) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v.x, v.y);
        out << buf;
    }
    for (const Triangle& t : mesh.triangles())
        out << t.v[0] << " " << t.v[1] << " " << t.v[2] << " " << t.generation << "\n";
}

Mesh read_mesh(std::istream& in) {
    std::string kw_v, kw_t;
    int nv = 0, nt = 0;
    in >> kw_v >> nv >> kw_t >> nt;
    if (kw_v != "vertices" || kw_t != "triangles" || !in)
        throw std::runtime_error("read_mesh: malformed header");
    std::vector<Vertex> vertices(nv);
    for (auto& v : vertices) in >> v.x >> v.y;
    std::vector<Triangle> triangles(nt);
    for (auto& t : triangles) in >> t.v[0] >> t.v[1] >> t.v[2] >> t.generation;
    if (!in) throw std::runtime_error("read_mesh: truncated file");
    return Mesh(std::move(vertices), std::move(triangles));
}

}  // namespace goafem

#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "goafem/geometry.hpp"

namespace goafem {

struct Vertex {
    double x = 0.0;
    double y = 0.0;
};

/// Triangle with counterclockwise orientation. The refinement edge for
/// newest-vertex bisection is the edge between v[0] and v[1]; generation
/// counts bisection depth.
struct Triangle {
    std::array<int, 3> v{};
    int generation = 0;
};

inline bool operator==(const Triangle& a, const Triangle& b) {
    return a.v == b.v && a.generation == b.generation;
}

/// Conforming 2D triangulation. Edge/adjacency tables are derived on
/// construction; instances are immutable afterwards and safe to share
/// read-only across threads.
class Mesh {
public:
    Mesh(std::vector<Vertex> vertices, std::vector<Triangle> triangles);

    int n_vertices() const { return static_cast<int>(vertices_.size()); }
    int n_triangles() const { return static_cast<int>(triangles_.size()); }
    int n_edges() const { return static_cast<int>(edges_.size()); }

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Triangle>& triangles() const { return triangles_; }
    const Vertex& vertex(int i) const { return vertices_[i]; }
    const Triangle& triangle(int t) const { return triangles_[t]; }

    std::array<Vec2, 3> coords(int t) const;
    Vec2 centroid(int t) const;
    double area(int t) const;

    /// Undirected edge with a < b; tri1 == -1 on the boundary.
    struct Edge {
        int a, b;
        int tri0, tri1;
    };
    const std::vector<Edge>& edges() const { return edges_; }
    /// Edge ids of triangle t; local edge e joins v[e] and v[(e+1)%3],
    /// so local edge 0 is the refinement edge.
    const std::array<int, 3>& triangle_edges(int t) const { return tri_edges_[t]; }

    bool is_boundary_edge(int e) const { return edges_[e].tri1 < 0; }
    bool is_boundary_vertex(int v) const { return boundary_vertex_[v] != 0; }
    /// Vertex-index pairs (a < b) of edges on the boundary.
    std::vector<std::pair<int, int>> boundary_edges() const;

    /// For meshes produced by refinement: index of the source triangle in
    /// the refined mesh (identity for untouched triangles). Empty for
    /// directly constructed meshes.
    const std::vector<int>& parents() const { return parents_; }

    double total_area() const;
    double min_interior_angle() const;  // radians

    /// Checks invariants specific to triangulations of the unit square:
    /// boundary edges on the boundary of (0,1)^2 and total area 1.
    /// Throws std::runtime_error on violation.
    void validate_unit_square() const;

private:
    friend Mesh refine_nvb(const Mesh&, const std::vector<int>&);
    friend Mesh uniform_refine(const Mesh&);

    std::vector<Vertex> vertices_;
    std::vector<Triangle> triangles_;
    std::vector<Edge> edges_;
    std::vector<std::array<int, 3>> tri_edges_;
    std::vector<char> boundary_vertex_;
    std::vector<int> parents_;

    void build_topology();
};

/// Criss-cross n x n grid of the unit square, every cell split by its
/// (1,1)-direction diagonal; refinement edges are the hypotenuses.
/// All lines {x=k/n}, {y=k/n}, {x-y=k/n} are unions of element edges.
Mesh initial_mesh(int n);

/// Coarsest conforming newest-vertex-bisection refinement in which every
/// marked triangle is bisected. Untouched triangles keep their index;
/// children replace parents in place, overflow appended.
Mesh refine_nvb(const Mesh& mesh, const std::vector<int>& marked);

/// Bisects every triangle at least twice, halving every edge; the element
/// count quadruples.
Mesh uniform_refine(const Mesh& mesh);

/// diam(T) = longest edge length.
double element_diameter(const Mesh& mesh, int t);

void write_mesh(std::ostream& out, const Mesh& mesh);
Mesh read_mesh(std::istream& in);

}  // namespace goafem

#pragma once

#include <array>
#include <span>
#include <vector>

#include "goafem/geometry.hpp"
#include "goafem/mesh.hpp"

namespace goafem {

/// Lagrange P1/P2 space on a mesh with homogeneous Dirichlet boundary.
/// Dof order: vertex dofs (= vertex ids) first, then edge-midpoint dofs
/// (= n_vertices + edge id) for p = 2. The referenced mesh must outlive
/// the space.
class FeSpace {
public:
    FeSpace(const Mesh& mesh, int degree);

    const Mesh& mesh() const { return *mesh_; }
    int degree() const { return degree_; }
    int n_dofs() const { return n_dofs_; }
    int n_free() const { return n_free_; }
    int dofs_per_element() const { return degree_ == 1 ? 3 : 6; }

    int element_dof(int t, int local) const { return elem_dofs_[t][local]; }
    bool is_dirichlet(int dof) const { return dirichlet_[dof] != 0; }
    const std::vector<char>& dirichlet_mask() const { return dirichlet_; }
    Vertex dof_coord(int dof) const;

private:
    const Mesh* mesh_;
    int degree_;
    int n_dofs_;
    int n_free_;
    std::vector<std::array<int, 6>> elem_dofs_;
    std::vector<char> dirichlet_;
};

inline FeSpace build_space(const Mesh& mesh, int degree) { return FeSpace(mesh, degree); }

/// Shape function values at a reference point; out must hold 3 (p=1) or
/// 6 (p=2) entries.
void shape_values(int degree, Vec2 ref, std::span<double> out);
void shape_ref_gradients(int degree, Vec2 ref, std::span<Vec2> out);
/// Reference-space Hessians; constant over the element for p <= 2.
void shape_ref_hessians(int degree, std::span<Mat2> out);

/// Point evaluation of a finite element function given by its coefficient
/// vector. Physical derivatives via the element's affine map.
class FeFunction {
public:
    FeFunction(const FeSpace& space, std::span<const double> coeffs);

    double value(int elem, Vec2 ref) const;
    Vec2 gradient(int elem, Vec2 ref) const;
    Mat2 hessian(int elem) const;
    /// Evaluation at a physical point known to lie in elem.
    double value_at(int elem, Vec2 phys) const;
    Vec2 gradient_at(int elem, Vec2 phys) const;

private:
    const FeSpace* space_;
    std::span<const double> coeffs_;
};

/// Nodal interpolation of a coarse FE function onto a space over a mesh
/// obtained from the coarse one by one refine_nvb step. Exact for nested
/// P1/P2 spaces.
std::vector<double> prolong(const FeSpace& coarse, std::span<const double> coarse_coeffs,
                            const FeSpace& fine);

}  // namespace goafem

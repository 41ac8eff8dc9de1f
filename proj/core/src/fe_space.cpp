#include "goafem/fe_space.hpp"

#include <stdexcept>

namespace goafem {

FeSpace::FeSpace(const Mesh& mesh, int degree) : mesh_(&mesh), degree_(degree) {
    if (degree != 1 && degree != 2)
        throw std::invalid_argument("build_space: polynomial degree must be 1 or 2");

    const int nv = mesh.n_vertices();
    n_dofs_ = degree == 1 ? nv : nv + mesh.n_edges();
    elem_dofs_.resize(mesh.n_triangles());
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const auto& tri = mesh.triangle(t);
        auto& dofs = elem_dofs_[t];
        dofs = {tri.v[0], tri.v[1], tri.v[2], -1, -1, -1};
        if (degree == 2) {
            const auto& te = mesh.triangle_edges(t);
            dofs[3] = nv + te[0];
            dofs[4] = nv + te[1];
            dofs[5] = nv + te[2];
        }
    }

    dirichlet_.assign(n_dofs_, 0);
    for (int v = 0; v < nv; ++v)
        if (mesh.is_boundary_vertex(v)) dirichlet_[v] = 1;
    if (degree == 2) {
        for (int e = 0; e < mesh.n_edges(); ++e)
            if (mesh.is_boundary_edge(e)) dirichlet_[nv + e] = 1;
    }
    n_free_ = 0;
    for (char d : dirichlet_)
        if (!d) ++n_free_;
}

Vertex FeSpace::dof_coord(int dof) const {
    const int nv = mesh_->n_vertices();
    if (dof < nv) return mesh_->vertex(dof);
    const auto& e = mesh_->edges()[dof - nv];
    return {0.5 * (mesh_->vertex(e.a).x + mesh_->vertex(e.b).x),
            0.5 * (mesh_->vertex(e.a).y + mesh_->vertex(e.b).y)};
}

void shape_values(int degree, Vec2 ref, std::span<double> out) {
    const double l0 = 1.0 - ref.x - ref.y, l1 = ref.x, l2 = ref.y;
    if (degree == 1) {
        out[0] = l0;
        out[1] = l1;
        out[2] = l2;
        return;
    }
    out[0] = l0 * (2.0 * l0 - 1.0);
    out[1] = l1 * (2.0 * l1 - 1.0);
    out[2] = l2 * (2.0 * l2 - 1.0);
    out[3] = 4.0 * l0 * l1;
    out[4] = 4.0 * l1 * l2;
    out[5] = 4.0 * l2 * l0;
}

void shape_ref_gradients(int degree, Vec2 ref, std::span<Vec2> out) {
    static constexpr Vec2 dl[3] = {{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}};
    if (degree == 1) {
        out[0] = dl[0];
        out[1] = dl[1];
        out[2] = dl[2];
        return;
    }
    const double l[3] = {1.0 - ref.x - ref.y, ref.x, ref.y};
    for (int i = 0; i < 3; ++i) out[i] = (4.0 * l[i] - 1.0) * dl[i];
    out[3] = 4.0 * (l[1] * dl[0] + l[0] * dl[1]);
    out[4] = 4.0 * (l[2] * dl[1] + l[1] * dl[2]);
    out[5] = 4.0 * (l[0] * dl[2] + l[2] * dl[0]);
}

void shape_ref_hessians(int degree, std::span<Mat2> out) {
    if (degree == 1) {
        out[0] = out[1] = out[2] = Mat2{};
        return;
    }
    // H(phi_vertex_i) = 4 dl_i dl_i^T, H(phi_edge_ij) = 4 (dl_i dl_j^T + dl_j dl_i^T)
    out[0] = {4.0, 4.0, 4.0, 4.0};
    out[1] = {4.0, 0.0, 0.0, 0.0};
    out[2] = {0.0, 0.0, 0.0, 4.0};
    out[3] = {-8.0, -4.0, -4.0, 0.0};
    out[4] = {0.0, 4.0, 4.0, 0.0};
    out[5] = {0.0, -4.0, -4.0, -8.0};
}

FeFunction::FeFunction(const FeSpace& space, std::span<const double> coeffs)
    : space_(&space), coeffs_(coeffs) {
    if (static_cast<int>(coeffs.size()) != space.n_dofs())
        throw std::invalid_argument("FeFunction: coefficient vector does not match space");
}

double FeFunction::value(int elem, Vec2 ref) const {
    const int nd = space_->dofs_per_element();
    double vals[6];
    shape_values(space_->degree(), ref, {vals, static_cast<size_t>(nd)});
    double s = 0.0;
    for (int i = 0; i < nd; ++i) s += coeffs_[space_->element_dof(elem, i)] * vals[i];
    return s;
}

Vec2 FeFunction::gradient(int elem, Vec2 ref) const {
    const int nd = space_->dofs_per_element();
    Vec2 grads[6];
    shape_ref_gradients(space_->degree(), ref, {grads, static_cast<size_t>(nd)});
    const auto c = space_->mesh().coords(elem);
    const AffineMap map(c[0], c[1], c[2]);
    Vec2 g{0.0, 0.0};
    for (int i = 0; i < nd; ++i) g = g + coeffs_[space_->element_dof(elem, i)] * grads[i];
    return map.inv_t * g;
}

Mat2 FeFunction::hessian(int elem) const {
    if (space_->degree() == 1) return {};
    Mat2 hess[6];
    shape_ref_hessians(2, {hess, 6});
    Mat2 h{};
    for (int i = 0; i < 6; ++i)
        h = h + coeffs_[space_->element_dof(elem, i)] * hess[i];
    const auto c = space_->mesh().coords(elem);
    const AffineMap map(c[0], c[1], c[2]);
    // H_phys = B^{-T} H_ref B^{-1}
    Mat2 tmp{h.a11 * map.inv.a11 + h.a12 * map.inv.a21, h.a11 * map.inv.a12 + h.a12 * map.inv.a22,
             h.a21 * map.inv.a11 + h.a22 * map.inv.a21, h.a21 * map.inv.a12 + h.a22 * map.inv.a22};
    return {map.inv_t.a11 * tmp.a11 + map.inv_t.a12 * tmp.a21,
            map.inv_t.a11 * tmp.a12 + map.inv_t.a12 * tmp.a22,
            map.inv_t.a21 * tmp.a11 + map.inv_t.a22 * tmp.a21,
            map.inv_t.a21 * tmp.a12 + map.inv_t.a22 * tmp.a22};
}

double FeFunction::value_at(int elem, Vec2 phys) const {
    const auto c = space_->mesh().coords(elem);
    return value(elem, AffineMap(c[0], c[1], c[2]).to_reference(phys));
}

Vec2 FeFunction::gradient_at(int elem, Vec2 phys) const {
    const auto c = space_->mesh().coords(elem);
    return gradient(elem, AffineMap(c[0], c[1], c[2]).to_reference(phys));
}

std::vector<double> prolong(const FeSpace& coarse, std::span<const double> coarse_coeffs,
                            const FeSpace& fine) {
    const Mesh& fine_mesh = fine.mesh();
    if (fine_mesh.parents().empty())
        throw std::invalid_argument("prolong: fine mesh does not record parent triangles");
    if (coarse.degree() != fine.degree())
        throw std::invalid_argument("prolong: polynomial degrees differ");

    const FeFunction f(coarse, coarse_coeffs);
    std::vector<double> out(fine.n_dofs());
    std::vector<char> done(fine.n_dofs(), 0);
    const int nd = fine.dofs_per_element();
    for (int t = 0; t < fine_mesh.n_triangles(); ++t) {
        const int parent = fine_mesh.parents()[t];
        for (int i = 0; i < nd; ++i) {
            const int dof = fine.element_dof(t, i);
            if (done[dof]) continue;
            const Vertex c = fine.dof_coord(dof);
            out[dof] = f.value_at(parent, {c.x, c.y});
            done[dof] = 1;
        }
    }
    return out;
}

}  // namespace goafem

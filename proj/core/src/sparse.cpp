#include "goafem/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

namespace goafem {

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::vector<Triplet> triplets) {
    for (const Triplet& t : triplets) {
        if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
            throw std::invalid_argument("SparseMatrix: triplet index out of range");
    }
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SparseMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.row_offsets_.assign(rows + 1, 0);
    m.col_indices_.reserve(triplets.size());
    m.values_.reserve(triplets.size());
    size_t i = 0;
    for (int r = 0; r < rows; ++r) {
        while (i < triplets.size() && triplets[i].row == r) {
            const int c = triplets[i].col;
            double v = 0.0;
            while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c)
                v += triplets[i++].value;
            m.col_indices_.push_back(c);
            m.values_.push_back(v);
        }
        m.row_offsets_[r + 1] = static_cast<int>(m.col_indices_.size());
    }
    return m;
}

std::vector<double> SparseMatrix::multiply(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != cols_)
        throw std::invalid_argument("SparseMatrix::multiply: size mismatch");
    std::vector<double> y(rows_, 0.0);
    for (int r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k)
            s += values_[k] * x[col_indices_[k]];
        y[r] = s;
    }
    return y;
}

std::vector<double> SparseMatrix::multiply_transpose(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != rows_)
        throw std::invalid_argument("SparseMatrix::multiply_transpose: size mismatch");
    std::vector<double> y(cols_, 0.0);
    for (int r = 0; r < rows_; ++r)
        for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k)
            y[col_indices_[k]] += values_[k] * x[r];
    return y;
}

SparseMatrix SparseMatrix::transposed() const {
    SparseMatrix t;
    t.rows_ = cols_;
    t.cols_ = rows_;
    t.row_offsets_.assign(cols_ + 1, 0);
    for (int c : col_indices_) ++t.row_offsets_[c + 1];
    for (int r = 0; r < cols_; ++r) t.row_offsets_[r + 1] += t.row_offsets_[r];
    t.col_indices_.resize(values_.size());
    t.values_.resize(values_.size());
    std::vector<int> cursor(t.row_offsets_.begin(), t.row_offsets_.end() - 1);
    for (int r = 0; r < rows_; ++r) {
        for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
            const int pos = cursor[col_indices_[k]]++;
            t.col_indices_[pos] = r;
            t.values_[pos] = values_[k];
        }
    }
    return t;
}

double SparseMatrix::entry(int row, int col) const {
    for (int k = row_offsets_[row]; k < row_offsets_[row + 1]; ++k)
        if (col_indices_[k] == col) return values_[k];
    return 0.0;
}

namespace {

struct FreeBlock {
    SparseMatrix matrix;       // free x free
    std::vector<double> rhs;   // free entries
    std::vector<int> free_dofs;
};

FreeBlock extract_free(const SparseMatrix& matrix, std::span<const double> rhs,
                       const std::vector<char>& dirichlet) {
    const int n = matrix.rows();
    if (matrix.cols() != n || static_cast<int>(rhs.size()) != n ||
        static_cast<int>(dirichlet.size()) != n)
        throw std::invalid_argument("solve: dimension mismatch");

    FreeBlock fb;
    std::vector<int> to_free(n, -1);
    for (int i = 0; i < n; ++i) {
        if (!dirichlet[i]) {
            to_free[i] = static_cast<int>(fb.free_dofs.size());
            fb.free_dofs.push_back(i);
        }
    }
    const int nf = static_cast<int>(fb.free_dofs.size());
    std::vector<SparseMatrix::Triplet> triplets;
    triplets.reserve(matrix.nnz());
    const auto& off = matrix.row_offsets();
    const auto& col = matrix.col_indices();
    const auto& val = matrix.values();
    for (int r = 0; r < n; ++r) {
        if (to_free[r] < 0) continue;
        for (int k = off[r]; k < off[r + 1]; ++k) {
            if (to_free[col[k]] < 0) continue;
            triplets.push_back({to_free[r], to_free[col[k]], val[k]});
        }
    }
    fb.matrix = SparseMatrix::from_triplets(nf, nf, std::move(triplets));
    fb.rhs.resize(nf);
    for (int i = 0; i < nf; ++i) fb.rhs[i] = rhs[fb.free_dofs[i]];
    return fb;
}

double norm2(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

/// Direct solve of the free block, optionally of its transpose. The CSR
/// arrays of A are exactly the CSC arrays of A^T, which is what Eigen's
/// column-major SparseLU consumes.
std::vector<double> solve_free(const SparseMatrix& a, const std::vector<double>& b,
                               bool transpose) {
    const int n = a.rows();
    if (n == 0) return {};

    // CSR arrays of M read as CSC give M^T, so the plain solve maps the
    // transposed CSR and the transposed solve maps the CSR itself.
    SparseMatrix storage;
    if (!transpose) storage = a.transposed();
    const SparseMatrix& src = transpose ? a : storage;

    using EigenSparse = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
    Eigen::Map<const EigenSparse> mapped(n, n, src.nnz(), src.row_offsets().data(),
                                         src.col_indices().data(), src.values().data());
    EigenSparse sys = mapped;

    Eigen::SparseLU<EigenSparse> lu;
    lu.compute(sys);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("sparse solve: factorization failed (singular free block?)");

    Eigen::Map<const Eigen::VectorXd> bvec(b.data(), n);
    Eigen::VectorXd x = lu.solve(bvec);
    if (lu.info() != Eigen::Success) throw std::runtime_error("sparse solve: back-substitution failed");

    std::vector<double> out(x.data(), x.data() + n);
    const double bnorm = norm2(b);
    if (bnorm == 0.0) return std::vector<double>(n, 0.0);

    auto residual = [&](const std::vector<double>& sol) {
        std::vector<double> r = transpose ? a.multiply_transpose(sol) : a.multiply(sol);
        for (int i = 0; i < n; ++i) r[i] -= b[i];
        return r;
    };
    // Strict target 1e-12 ||b||; accepted fallback is the backward-error
    // bound 1e-12 (||b|| + ||A||_inf ||x||_inf), the best double precision
    // can certify once ||A|| ||x|| dominates ||b||.
    const double tol = 1e-12;
    std::vector<double> r = residual(out);
    for (int step = 0; step < 3 && norm2(r) > tol * bnorm; ++step) {
        Eigen::Map<const Eigen::VectorXd> rvec(r.data(), n);
        Eigen::VectorXd dx = lu.solve(rvec);
        for (int i = 0; i < n; ++i) out[i] -= dx[i];
        r = residual(out);
    }
    if (norm2(r) > tol * bnorm) {
        double a_inf = 0.0, x_inf = 0.0, row = 0.0;
        const auto& offsets = a.row_offsets();
        for (int i = 0; i < n; ++i) {
            row = 0.0;
            for (int k = offsets[i]; k < offsets[i + 1]; ++k) row += std::abs(a.values()[k]);
            a_inf = std::max(a_inf, row);
            x_inf = std::max(x_inf, std::abs(out[i]));
        }
        if (norm2(r) > tol * (bnorm + a_inf * x_inf * std::sqrt(static_cast<double>(n))))
            throw std::runtime_error("sparse solve: residual above tolerance");
    }
    return out;
}

std::vector<double> solve_masked(const SparseMatrix& matrix, std::span<const double> rhs,
                                 const std::vector<char>& dirichlet, bool transpose) {
    FreeBlock fb = extract_free(matrix, rhs, dirichlet);
    const std::vector<double> xf = solve_free(fb.matrix, fb.rhs, transpose);
    std::vector<double> x(matrix.rows(), 0.0);
    for (size_t i = 0; i < fb.free_dofs.size(); ++i) x[fb.free_dofs[i]] = xf[i];
    return x;
}

}  // namespace

std::vector<double> solve_primal(const SparseMatrix& matrix, std::span<const double> rhs,
                                 const std::vector<char>& dirichlet) {
    return solve_masked(matrix, rhs, dirichlet, false);
}

std::vector<double> solve_dual(const SparseMatrix& matrix, std::span<const double> rhs,
                               const std::vector<char>& dirichlet) {
    return solve_masked(matrix, rhs, dirichlet, true);
}

}  // namespace goafem

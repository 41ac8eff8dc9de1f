#pragma once

#include <span>
#include <vector>

namespace goafem {

/// Compressed sparse row matrix; no duplicate column entries per row.
class SparseMatrix {
public:
    struct Triplet {
        int row, col;
        double value;
    };

    SparseMatrix() = default;
    /// Sorts and sums duplicate entries.
    static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> triplets);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int nnz() const { return static_cast<int>(values_.size()); }

    const std::vector<int>& row_offsets() const { return row_offsets_; }
    const std::vector<int>& col_indices() const { return col_indices_; }
    const std::vector<double>& values() const { return values_; }

    std::vector<double> multiply(std::span<const double> x) const;
    std::vector<double> multiply_transpose(std::span<const double> x) const;
    SparseMatrix transposed() const;
    double entry(int row, int col) const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<int> row_offsets_{0};
    std::vector<int> col_indices_;
    std::vector<double> values_;
};

/// Solves the linear system restricted to free (non-Dirichlet) dofs by a
/// sparse direct factorization and scatters back with zeros on constrained
/// dofs. Requires the relative residual of the free block to reach 1e-12;
/// a singular or badly solved system raises std::runtime_error.
std::vector<double> solve_primal(const SparseMatrix& matrix, std::span<const double> rhs,
                                 const std::vector<char>& dirichlet);

/// Same as solve_primal on the transposed free block.
std::vector<double> solve_dual(const SparseMatrix& matrix, std::span<const double> rhs,
                               const std::vector<char>& dirichlet);

}  // namespace goafem

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace metagcn {

// Row-major dense matrix of 64-bit floats. All model math runs on doubles;
// the finite-difference checks need the headroom and the data is tiny.
class DenseMatrix {
  public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool same_shape(const DenseMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }
    bool all_finite() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// CSR sparse matrix. Column indices are strictly increasing within a row.
struct SparseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::size_t> row_offsets;  // length rows+1
    std::vector<std::size_t> col_indices;
    std::vector<double> values;

    SparseMatrix() : row_offsets(1, 0) {}
    SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), row_offsets(r + 1, 0) {}

    static SparseMatrix identity(std::size_t n);
    // Builds CSR from (row, col, value) triplets; duplicates are rejected.
    static SparseMatrix from_triplets(
        std::size_t rows, std::size_t cols,
        std::vector<std::tuple<std::size_t, std::size_t, double>> triplets);

    std::size_t nnz() const { return col_indices.size(); }
    // Throws ContractError if the CSR invariants do not hold.
    void validate() const;
    // Structural and value symmetry; requires rows == cols.
    bool is_symmetric(double tol = 0.0) const;
};

enum class Elementwise { add, sub, hadamard };

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix spmm(const SparseMatrix& s, const DenseMatrix& d);
DenseMatrix densify(const SparseMatrix& s);
DenseMatrix elementwise(const DenseMatrix& a, const DenseMatrix& b, Elementwise kind);
DenseMatrix scale(const DenseMatrix& a, double c);
DenseMatrix transpose(const DenseMatrix& a);
std::vector<double> row_sum(const DenseMatrix& a);
double frobenius_dot(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace metagcn

#include "metagcn/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "metagcn/error.hpp"

namespace metagcn {

namespace {

std::string shape_str(std::size_t r, std::size_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool DenseMatrix::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
    SparseMatrix s(n, n);
    s.col_indices.resize(n);
    s.values.assign(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        s.row_offsets[i + 1] = i + 1;
        s.col_indices[i] = i;
    }
    return s;
}

SparseMatrix SparseMatrix::from_triplets(
    std::size_t rows, std::size_t cols,
    std::vector<std::tuple<std::size_t, std::size_t, double>> triplets) {
    for (const auto& [r, c, v] : triplets) {
        (void)v;
        if (r >= rows || c >= cols)
            throw ParamError("from_triplets: entry (" + std::to_string(r) + "," +
                             std::to_string(c) + ") out of bounds");
    }
    std::sort(triplets.begin(), triplets.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    SparseMatrix s(rows, cols);
    s.col_indices.reserve(triplets.size());
    s.values.reserve(triplets.size());
    for (std::size_t t = 0; t < triplets.size(); ++t) {
        const auto& [r, c, v] = triplets[t];
        if (t > 0 && r == std::get<0>(triplets[t - 1]) && c == std::get<1>(triplets[t - 1]))
            throw ParamError("from_triplets: duplicate entry (" + std::to_string(r) + "," +
                             std::to_string(c) + ")");
        s.col_indices.push_back(c);
        s.values.push_back(v);
        s.row_offsets[r + 1]++;
    }
    for (std::size_t i = 0; i < rows; ++i) s.row_offsets[i + 1] += s.row_offsets[i];
    return s;
}

void SparseMatrix::validate() const {
    if (row_offsets.size() != rows + 1)
        throw ContractError("csr: row_offsets length must be rows+1");
    if (row_offsets.front() != 0 || row_offsets.back() != nnz())
        throw ContractError("csr: row_offsets endpoints invalid");
    if (col_indices.size() != values.size())
        throw ContractError("csr: col_indices/values length mismatch");
    for (std::size_t i = 0; i < rows; ++i) {
        if (row_offsets[i] > row_offsets[i + 1])
            throw ContractError("csr: row_offsets not monotone");
        for (std::size_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
            if (col_indices[k] >= cols) throw ContractError("csr: column index out of range");
            if (k > row_offsets[i] && col_indices[k] <= col_indices[k - 1])
                throw ContractError("csr: column indices not strictly increasing in row " +
                                    std::to_string(i));
        }
    }
}

bool SparseMatrix::is_symmetric(double tol) const {
    if (rows != cols) return false;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
            const std::size_t j = col_indices[k];
            // binary search for (j, i)
            const auto begin = col_indices.begin() + static_cast<std::ptrdiff_t>(row_offsets[j]);
            const auto end = col_indices.begin() + static_cast<std::ptrdiff_t>(row_offsets[j + 1]);
            const auto it = std::lower_bound(begin, end, i);
            if (it == end || *it != i) return false;
            const double vt = values[static_cast<std::size_t>(it - col_indices.begin())];
            if (std::abs(vt - values[k]) > tol) return false;
        }
    }
    return true;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows())
        throw ShapeError("matmul: " + shape_str(a.rows(), a.cols()) + " x " +
                         shape_str(b.rows(), b.cols()));
    DenseMatrix out(a.rows(), b.cols());
    // i-k-j loop order: fixed left-to-right accumulation per output entry.
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            const auto brow = b.row(k);
            auto orow = out.row(i);
            for (std::size_t j = 0; j < b.cols(); ++j) orow[j] += aik * brow[j];
        }
    }
    return out;
}

DenseMatrix spmm(const SparseMatrix& s, const DenseMatrix& d) {
    if (s.cols != d.rows())
        throw ShapeError("spmm: " + shape_str(s.rows, s.cols) + " x " +
                         shape_str(d.rows(), d.cols()));
    DenseMatrix out(s.rows, d.cols());
    for (std::size_t i = 0; i < s.rows; ++i) {
        auto orow = out.row(i);
        for (std::size_t k = s.row_offsets[i]; k < s.row_offsets[i + 1]; ++k) {
            const double v = s.values[k];
            const auto drow = d.row(s.col_indices[k]);
            for (std::size_t j = 0; j < d.cols(); ++j) orow[j] += v * drow[j];
        }
    }
    return out;
}

DenseMatrix densify(const SparseMatrix& s) {
    DenseMatrix out(s.rows, s.cols);
    for (std::size_t i = 0; i < s.rows; ++i)
        for (std::size_t k = s.row_offsets[i]; k < s.row_offsets[i + 1]; ++k)
            out(i, s.col_indices[k]) = s.values[k];
    return out;
}

DenseMatrix elementwise(const DenseMatrix& a, const DenseMatrix& b, Elementwise kind) {
    if (!a.same_shape(b))
        throw ShapeError("elementwise: " + shape_str(a.rows(), a.cols()) + " vs " +
                         shape_str(b.rows(), b.cols()));
    DenseMatrix out(a.rows(), a.cols());
    const auto& av = a.data();
    const auto& bv = b.data();
    auto& ov = out.data();
    switch (kind) {
        case Elementwise::add:
            for (std::size_t i = 0; i < av.size(); ++i) ov[i] = av[i] + bv[i];
            break;
        case Elementwise::sub:
            for (std::size_t i = 0; i < av.size(); ++i) ov[i] = av[i] - bv[i];
            break;
        case Elementwise::hadamard:
            for (std::size_t i = 0; i < av.size(); ++i) ov[i] = av[i] * bv[i];
            break;
    }
    return out;
}

DenseMatrix scale(const DenseMatrix& a, double c) {
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i) out.data()[i] = c * a.data()[i];
    return out;
}

DenseMatrix transpose(const DenseMatrix& a) {
    DenseMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

std::vector<double> row_sum(const DenseMatrix& a) {
    std::vector<double> out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double acc = 0.0;
        for (double v : a.row(i)) acc += v;
        out[i] = acc;
    }
    return out;
}

double frobenius_dot(const DenseMatrix& a, const DenseMatrix& b) {
    if (!a.same_shape(b))
        throw ShapeError("frobenius_dot: " + shape_str(a.rows(), a.cols()) + " vs " +
                         shape_str(b.rows(), b.cols()));
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a.data()[i] * b.data()[i];
    return acc;
}

}  // namespace metagcn

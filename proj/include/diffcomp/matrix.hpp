#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "diffcomp/cyclotomic.hpp"
#include "diffcomp/error.hpp"

namespace diffcomp {

/// Row-major dense matrix over an exact field.
template <typename T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix out(n, n);
        for (std::size_t i = 0; i < n; ++i) out(i, i) = T(1);
        return out;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    friend DenseMatrix operator*(const DenseMatrix& lhs, const DenseMatrix& rhs) {
        if (lhs.cols_ != rhs.rows_) fail(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
        DenseMatrix out(lhs.rows_, rhs.cols_);
        for (std::size_t i = 0; i < lhs.rows_; ++i) {
            for (std::size_t k = 0; k < lhs.cols_; ++k) {
                for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += lhs(i, k) * rhs(k, j);
            }
        }
        return out;
    }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RationalMatrix = DenseMatrix<Rational>;
using CycloMatrix = DenseMatrix<CycloRational>;

namespace detail {
inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const CycloRational& x) { return x.is_zero(); }
}  // namespace detail

/// Rank by fraction-free (Bareiss) elimination: each update is
/// (a_ij * pivot - a_ik * a_kj) / previous_pivot, an exact division.
template <typename T>
std::size_t rank(DenseMatrix<T> m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    T previous(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot_row = r;
        while (pivot_row < rows && detail::is_zero(m(pivot_row, c))) ++pivot_row;
        if (pivot_row == rows) continue;
        m.swap_rows(r, pivot_row);
        const T pivot = m(r, c);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                m(i, j) = (m(i, j) * pivot - m(i, c) * m(r, j)) / previous;
            }
            m(i, c) = T(0);
        }
        previous = pivot;
        ++r;
    }
    return r;
}

}  // namespace diffcomp

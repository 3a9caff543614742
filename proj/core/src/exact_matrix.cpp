#include "hermlag/exact_matrix.hpp"

#include "hermlag/errors.hpp"

namespace hermlag {

ExactMatrix::ExactMatrix(int rows, int cols, std::vector<GaussRational> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
    if (static_cast<int>(data_.size()) != rows * cols) throw DimensionError("ExactMatrix: entry count mismatch");
}

ExactMatrix ExactMatrix::identity(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = GaussRational(1);
    return m;
}

ExactMatrix ExactMatrix::unit(int n, int i, int j) {
    if (i < 0 || j < 0 || i >= n || j >= n) throw IndexError("unit matrix index out of range");
    ExactMatrix m(n, n);
    m(i, j) = GaussRational(1);
    return m;
}

GaussRational ExactMatrix::trace() const {
    if (rows_ != cols_) throw DimensionError("trace of non-square matrix");
    GaussRational t;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

ExactMatrix ExactMatrix::adjoint() const {
    ExactMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j).conj();
    return m;
}

bool ExactMatrix::is_zero() const {
    for (const auto& v : data_)
        if (!v.is_zero()) return false;
    return true;
}

ExactMatrix ExactMatrix::block(int r0, int c0, int rows, int cols) const {
    if (r0 < 0 || c0 < 0 || r0 + rows > rows_ || c0 + cols > cols_) throw IndexError("block out of range");
    ExactMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
}

void ExactMatrix::set_block(int r0, int c0, const ExactMatrix& b) {
    if (r0 < 0 || c0 < 0 || r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw IndexError("block out of range");
    for (int i = 0; i < b.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

CMatrix ExactMatrix::to_complex() const {
    CMatrix m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).to_complex();
    return m;
}

ExactMatrix& ExactMatrix::operator+=(const ExactMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("ExactMatrix shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

ExactMatrix& ExactMatrix::operator-=(const ExactMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("ExactMatrix shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

ExactMatrix& ExactMatrix::operator*=(const GaussRational& c) {
    for (auto& v : data_) v *= c;
    return *this;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("ExactMatrix product shape mismatch");
    ExactMatrix m(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            if (a(i, k).is_zero()) continue;
            for (int j = 0; j < b.cols_; ++j) m(i, j) += a(i, k) * b(k, j);
        }
    return m;
}

ExactMatrix commutator(const ExactMatrix& a, const ExactMatrix& b) { return a * b - b * a; }

}  // namespace hermlag

#pragma once

#include <vector>

#include "hermlag/hermitian.hpp"
#include "hermlag/rational.hpp"

namespace hermlag {

/// Dense matrix of Gaussian rationals, used for exact Lie algebra parameters.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    ExactMatrix(int rows, int cols, std::vector<GaussRational> row_major);

    static ExactMatrix zero(int n) { return {n, n}; }
    static ExactMatrix identity(int n);
    /// E_ij: one in entry (i, j), zero elsewhere.
    static ExactMatrix unit(int n, int i, int j);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    GaussRational& operator()(int i, int j) { return data_[i * cols_ + j]; }
    const GaussRational& operator()(int i, int j) const { return data_[i * cols_ + j]; }

    GaussRational trace() const;
    ExactMatrix adjoint() const;
    bool is_zero() const;
    bool is_hermitian() const { return *this == adjoint(); }

    ExactMatrix block(int r0, int c0, int rows, int cols) const;
    void set_block(int r0, int c0, const ExactMatrix& b);

    CMatrix to_complex() const;

    ExactMatrix& operator+=(const ExactMatrix& o);
    ExactMatrix& operator-=(const ExactMatrix& o);
    ExactMatrix& operator*=(const GaussRational& c);

    friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
    friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }
    friend ExactMatrix operator-(ExactMatrix a) { return a *= GaussRational(-1); }
    friend ExactMatrix operator*(ExactMatrix a, const GaussRational& c) { return a *= c; }
    friend ExactMatrix operator*(const GaussRational& c, ExactMatrix a) { return a *= c; }
    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<GaussRational> data_;
};

/// [A, B] = AB − BA.
ExactMatrix commutator(const ExactMatrix& a, const ExactMatrix& b);

}  // namespace hermlag

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "hermlag/combinatorics.hpp"
#include "hermlag/multipoly.hpp"

namespace hermlag {

using CMatrix = Eigen::MatrixXcd;

/// Real coordinates of Herm(n) in the basis {I_i, J_ij, K_ij}:
///   s = Σ_i t_i I_i + Σ_{i<j} (u_ij J_ij + v_ij K_ij),
/// so s_ii = t_i and s_ij = u_ij + i v_ij for i < j. Variable order: t_1..t_n, then
/// (u_ij, v_ij) for i < j in row-major order.
class HermCoords {
public:
    explicit HermCoords(int n);

    int rank() const { return n_; }
    int size() const { return n_ * n_; }

    int t(int i) const;
    int u(int i, int j) const;
    int v(int i, int j) const;
    /// True for diagonal (t) variables.
    bool is_diagonal_var(int var) const { return var < n_; }

    /// The entry s_ij as a polynomial in the coordinates.
    MultiPoly entry(int i, int j) const;
    /// tr(s).
    MultiPoly trace() const;
    /// Constant polynomial in these coordinates.
    MultiPoly constant(const GaussRational& c) const { return MultiPoly::constant(size(), c); }

    std::vector<double> coords_of(const CMatrix& s) const;
    std::vector<GaussRational> coords_of_exact(const std::vector<GaussRational>& row_major) const;
    CMatrix matrix_of(const std::vector<double>& x) const;

    /// Map from coordinates to the n diagonal variables (off-diagonals set to zero).
    std::vector<int> diagonal_restriction() const;

private:
    int n_;
};

/// Numeric Hermitian matrix; construction checks s = s* within 1e−12·‖s‖.
class HermMatrix {
public:
    explicit HermMatrix(CMatrix s);
    static HermMatrix diagonal(const std::vector<double>& d);

    int rank() const { return static_cast<int>(s_.rows()); }
    const CMatrix& matrix() const { return s_; }
    Eigen::VectorXd eigenvalues() const;

private:
    CMatrix s_;
};

/// tr(s^k) in Herm(n) coordinates.
MultiPoly powersum_poly(int k, int n);

/// Φ_m(s) = s_m(eigenvalues of s)/s_m(1ⁿ) in Herm(n) coordinates.
MultiPoly spherical_poly(const Partition& m, int n);

/// Evaluates a polynomial over Herm(n) coordinates at s. Throws DimensionError when the
/// variable count differs from n².
std::complex<double> eval_poly(const MultiPoly& p, const HermMatrix& s);

/// Φ_m at a matrix with the given eigenvalues, via Jacobi–Trudi.
double eval_spherical_eig(const Partition& m, const std::vector<double>& eigs);

}  // namespace hermlag

#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hermlag/matrixcalc.hpp"

namespace hermlag {

/// Gauss rule: Σ w_k g(x_k) ≈ ∫ g(x)·weight(x) dx.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int order = 0;
};

/// Generalized Gauss–Laguerre for x^α e^{−x} on (0, ∞), via Golub–Welsch.
QuadratureRule gauss_laguerre(int order, double alpha);
/// Gauss–Hermite for e^{−x²} on ℝ.
QuadratureRule gauss_hermite(int order);

/// Numeric value plus the change seen when the quadrature was refined.
struct QuadResult {
    std::complex<double> value;
    double rel_change = 0.0;
    bool warning = false;
};

using EigenFunction = std::function<std::complex<double>(const std::vector<double>&)>;

/// ∫_Ω f dμ_ν for an L-invariant f given on eigenvalues, computed as
///   k_n ∫ f(λ) ∏_{i<j}(λ_i − λ_j)² ∏ λ_i^{ν−n} dλ
/// with a tensor Gauss–Laguerre rule of the given order against λ^{ν−n}e^{−decay·λ}.
/// f must include its own exponential factor. Warns when the rule of twice the order
/// moves the result by more than 1e−8 relative to max(|result|, ∫|integrand|).
QuadResult invariant_integral(const EigenFunction& f, double nu, int n, int order = 24, double decay = 1.0);

/// Same integral without the constant k_n.
QuadResult raw_eigenvalue_integral(const EigenFunction& f, double nu, int n, int order = 24, double decay = 1.0);

/// k_n, fixed by ∫_Ω e^{−tr s} dμ_ν = Γ_Ω(ν).
double calibration_constant(int n, double nu, int order = 24);

/// ⟨f, g⟩ = ∫_Ω f·ḡ dμ_ν for L-invariant f, g (only their diagonal restriction is used).
QuadResult inner_product(const ExpPoly& f, const ExpPoly& g, double nu, int order = 24);

/// Point z = x + iy of the tube Ω + i·Herm(n). Throws DomainError unless x ≻ 0.
class TubePoint {
public:
    explicit TubePoint(CMatrix z);
    static TubePoint scalar(int n, std::complex<double> z);

    int rank() const { return static_cast<int>(z_.rows()); }
    const CMatrix& matrix() const { return z_; }

private:
    CMatrix z_;
};

/// L_ν f(z) = ∫_Ω e^{−tr(zs)} f(s) det(s)^{ν−n} ds for Re z + I ≻ 0 (DomainError otherwise),
/// with the chart and rule chosen at construction so that nearby z reuse identical nodes
/// (needed for difference quotients). z = 0 gives the plain integral of f.
///   n = 1: adaptive Gauss–Kronrod on (0, ∞), 1e−13 relative target; warns above 1e−10.
///   n ≥ 2: s = T*T with T upper triangular, σ_i = T_ii², measure ∏ σ_i^{ν−i} dσ d²T_ij;
///          tensor Gauss–Laguerre in σ and Gauss–Hermite in the off-diagonal entries,
///          both with decay c = 1 + tr(Re z₀)/n. The refinement check compares with
///          the rule of half the order.
class LaplaceTransform {
public:
    LaplaceTransform(ExpPoly f, double nu, const CMatrix& base, int order = 20);

    QuadResult operator()(const CMatrix& z) const;
    QuadResult operator()(const TubePoint& z) const { return (*this)(z.matrix()); }

private:
    // Quadrature sum and the sum of term magnitudes.
    std::pair<std::complex<double>, double> tensor_sum(const CMatrix& z, int order) const;

    ExpPoly f_;
    double nu_;
    int n_;
    int order_;
    double decay_;
};

/// One-shot convenience wrapper.
QuadResult laplace(const ExpPoly& f, const TubePoint& z, double nu, int order = 20);

using HoloFunction = std::function<std::complex<double>(const CMatrix&)>;

/// π_ν(X)F(z) for X in one block:
///   k_C  ν tr(bz)F + δ(zbz + za − az − b)F
///   p⁺   −ν tr(x(1+z))F − δ((1+z)x(1+z))F
///   p⁻   ν tr(x(z−1))F + δ((z−1)x(z−1))F
/// where δ(w)F(z) = d/dt F(z + tw) at t = 0 by five-point central differences.
/// Warns when halving the step moves the result by more than 1e−6 relative to
/// max(|π_ν(X)F(z)|, |F(z)|).
NumericEstimate pi_op(const LieElement& x, double nu, const HoloFunction& F, const CMatrix& z, double h = 1e-3);
/// General element of sl(2n) by linearity.
NumericEstimate pi_op(const ExactMatrix& x, double nu, const HoloFunction& F, const CMatrix& z, double h = 1e-3);

struct IntertwineResult {
    std::complex<double> lhs;  // π_ν(X) L_ν f (z)
    std::complex<double> rhs;  // L_ν(λ_ν(X) f)(z)
    double residual = 0.0;     // |lhs − rhs| / max(|lhs|, |rhs|, |L_ν f(z)|)
    bool warning = false;
};

IntertwineResult intertwine_check(const ExactMatrix& x, const ExpPoly& f, const TubePoint& z, const Rational& nu,
                                  int order = 20);

/// One line of a verification report.
struct CheckRecord {
    std::string check;
    nlohmann::json params = nlohmann::json::object();
    nlohmann::json value;
    nlohmann::json reference;
    double rel_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool skipped = false;  // not applicable at these parameters (e.g. a pole); counts as a pass
    std::string detail;
};

void to_json(nlohmann::json& j, const CheckRecord& r);

/// |a − b| / max(|a|, |b|), zero when both vanish.
double relative_error(std::complex<double> a, std::complex<double> b);

}  // namespace hermlag

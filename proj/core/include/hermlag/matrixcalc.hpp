#pragma once

#include <array>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hermlag/exact_matrix.hpp"
#include "hermlag/hermitian.hpp"
#include "hermlag/multipoly.hpp"

namespace hermlag {

/// f(s) = e^{−tr s}·p(s) on Herm(n). Every operator below maps this class to itself.
struct ExpPoly {
    int n = 1;
    MultiPoly p;

    ExpPoly() = default;
    ExpPoly(int rank, MultiPoly poly);

    static ExpPoly zero(int n) { return {n, MultiPoly(n * n)}; }
    static ExpPoly exp_trace(int n) { return {n, MultiPoly::constant(n * n, GaussRational(1))}; }

    bool is_zero() const { return p.is_zero(); }
    std::complex<double> evaluate(const HermMatrix& s) const;

    ExpPoly& operator+=(const ExpPoly& o);
    ExpPoly& operator-=(const ExpPoly& o);
    ExpPoly& operator*=(const GaussRational& c);
    friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
    friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
    friend ExpPoly operator*(ExpPoly a, const GaussRational& c) { return a *= c; }
    friend ExpPoly operator*(const GaussRational& c, ExpPoly a) { return a *= c; }
    friend bool operator==(const ExpPoly& a, const ExpPoly& b) { return a.n == b.n && a.p == b.p; }
};

/// The three block shapes of sl(2n, C) used by the representation:
///   KC     [[a, b], [b, a]]     tr a = 0
///   PPlus  [[x, x], [−x, −x]]
///   PMinus [[x, −x], [x, −x]]
enum class Block { KC, PPlus, PMinus };

class LieElement {
public:
    /// Throws ShapeError unless a, b are n×n and tr a = 0.
    static LieElement k_c(ExactMatrix a, ExactMatrix b);
    static LieElement p_plus(ExactMatrix x);
    static LieElement p_minus(ExactMatrix x);

    /// ξ = [[0, I], [I, 0]], the central element of k_C.
    static LieElement xi(int n);
    /// X⁺ = [[−I, −I], [I, I]] ∈ p⁺ (x = −I).
    static LieElement x_plus(int n);
    /// X⁻ = [[I, −I], [I, −I]] ∈ p⁻ (x = I).
    static LieElement x_minus(int n);

    Block block() const { return block_; }
    int rank() const { return a_.rows(); }
    const ExactMatrix& a() const { return a_; }
    const ExactMatrix& b() const { return b_; }
    const ExactMatrix& x() const { return a_; }

    /// The 2n×2n matrix.
    ExactMatrix matrix() const;

private:
    LieElement(Block block, ExactMatrix a, ExactMatrix b) : block_(block), a_(std::move(a)), b_(std::move(b)) {}

    Block block_;
    ExactMatrix a_;  // a for KC, x for the p± shapes
    ExactMatrix b_;
};

/// Unique split of a traceless 2n×2n matrix into its k_C, p⁺ and p⁻ components.
/// Throws ShapeError if the matrix is not in sl(2n).
std::array<LieElement, 3> decompose(const ExactMatrix& m);

/// Second-order operator
///   f ↦ Σ c₂(k,i,j,l)·D_{k,i}D_{j,l} f + Σ c₁(i,j)·D_{i,j} f + c₀·f
/// with polynomial coefficients multiplying after differentiation. Since the D_{i,j}
/// commute, second-order keys are stored with the two index pairs sorted.
class LinDiffOp {
public:
    using Pair = std::pair<int, int>;
    using PairPair = std::pair<Pair, Pair>;

    explicit LinDiffOp(int n);

    int rank() const { return n_; }
    const std::map<PairPair, MultiPoly>& second() const { return second_; }
    const std::map<Pair, MultiPoly>& first() const { return first_; }
    const MultiPoly& zeroth() const { return zeroth_; }

    void add_second(Pair p, Pair q, const MultiPoly& c);
    void add_first(Pair p, const MultiPoly& c);
    void add_zeroth(const MultiPoly& c);

    LinDiffOp& operator+=(const LinDiffOp& o);
    LinDiffOp& operator*=(const GaussRational& c);
    friend LinDiffOp operator+(LinDiffOp a, const LinDiffOp& b) { return a += b; }
    friend LinDiffOp operator-(LinDiffOp a, const LinDiffOp& b) { return a += b * GaussRational(-1); }
    friend LinDiffOp operator*(LinDiffOp a, const GaussRational& c) { return a *= c; }
    friend LinDiffOp operator*(const GaussRational& c, LinDiffOp a) { return a *= c; }
    friend bool operator==(const LinDiffOp& a, const LinDiffOp& b);

private:
    void prune();

    int n_;
    std::map<PairPair, MultiPoly> second_;
    std::map<Pair, MultiPoly> first_;
    MultiPoly zeroth_;
};

/// Operator dump: {"n", "c2": [{"k","i","j","l","coefficient"}], "c1": [...], "c0"} with
/// zero-based indices and coefficients in canonical MultiPoly JSON.
nlohmann::json to_json(const LinDiffOp& op);

/// D_{i,j} = D_{E_ij} (zero-based): ∂/∂t_i on the diagonal, ½(∂_u − i∂_v) above it and
/// ½(∂_u + i∂_v) below it.
MultiPoly d_entry(int i, int j, const MultiPoly& p, int n);
ExpPoly d_entry(int i, int j, const ExpPoly& f);

/// (∇f)_{i,j} = D_{j,i} f, row-major.
std::vector<ExpPoly> gradient(const ExpPoly& f);

/// D_w f = Σ w_{i,j} D_{i,j} f = tr(w∇)f.
ExpPoly dir_derivative(const ExactMatrix& w, const ExpPoly& f);

/// Euler operator tr(s∇) on plain polynomials.
MultiPoly euler(const MultiPoly& p, int n);

/// λ_ν(X) for a single block shape.
LinDiffOp lambda_op(const LieElement& x, const Rational& nu);
/// λ_ν of a general element of sl(2n), by linearity over its block components.
LinDiffOp lambda_op(const ExactMatrix& m, const Rational& nu);

/// E_ν = νn + 2 tr(s∇).
LinDiffOp euler_op(const Rational& nu, int n);

ExpPoly apply(const LinDiffOp& op, const ExpPoly& f);
/// The same operator acting on a plain polynomial (no exponential factor).
MultiPoly apply(const LinDiffOp& op, const MultiPoly& p);

/// [A, B] f = A(B f) − B(A f).
ExpPoly commutator_apply(const LinDiffOp& a, const LinDiffOp& b, const ExpPoly& f);

/// Finite-difference estimate of λ_ν(X) f(s).
struct NumericEstimate {
    std::complex<double> value;      // Richardson-extrapolated
    std::complex<double> base;       // plain central differences at step h
    double refinement_gap = 0.0;     // |value − base| / max(|value|, tiny)
    bool warning = false;            // gap above the 1e−4 threshold
};

using HermFunction = std::function<std::complex<double>(const CMatrix&)>;

/// Central differences in the n² real coordinates with step h (default
/// 1e−4·(1 + ‖s‖)), extrapolated from steps h and h/2.
NumericEstimate numeric_apply(const LieElement& x, double nu, const HermFunction& f, const HermMatrix& s,
                              std::optional<double> h = std::nullopt);

}  // namespace hermlag

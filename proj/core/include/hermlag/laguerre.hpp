#pragma once

#include <map>
#include <string>
#include <vector>

#include "hermlag/combinatorics.hpp"
#include "hermlag/matrixcalc.hpp"

namespace hermlag {

/// ℓ^ν_m(s) = e^{−tr s}·L^ν_m(2s) with
///   L^ν_m(x) = (ν)_m Σ_{k ⊆ m} binom(m, k)·Φ_k(−x)/(ν)_k.
/// No 1/m! normalisation: at rank 1 this is m!·e^{−t}L_m^{ν−1}(2t) in classical terms.
struct LaguerreFn {
    Partition m;
    Rational nu;
    int n = 1;
    ExpPoly body;
};

/// Throws DomainError when some (ν)_k with k ⊆ m vanishes.
LaguerreFn laguerre_fn(const Partition& m, const Rational& nu, int n);

/// Exact coefficients c_k with Σ c_k ℓ^ν_k = f. Throws SolveError if f is not a finite
/// combination of Laguerre functions (for instance when it is not L-invariant).
std::map<Partition, GaussRational> laguerre_expand(const ExpPoly& f, const Rational& nu);

/// ExpPoly Σ c_k ℓ^ν_k.
ExpPoly laguerre_combination(const std::map<Partition, GaussRational>& coefficients, const Rational& nu, int n);

/// −binom(m, m − γ_j)·(m_j − 1 + ν − j) for zero-based j.
Rational lowering_coefficient(const Partition& m, int j, const Rational& nu, int n);

enum class Relation { Eigen, Lower, Raise, Z };
std::string to_string(Relation r);

struct CoefficientEntry {
    Partition target;  // ℓ_target the coefficient multiplies
    int j = -1;        // zero-based shift index, −1 for the eigenvalue
    GaussRational value;
};

struct RecursionReport {
    Relation relation = Relation::Eigen;
    Partition m;
    Rational nu;
    int n = 1;
    ExpPoly residual;
    std::vector<CoefficientEntry> coefficients;
    /// Laguerre expansion of the left-hand side, when one was computed.
    std::map<Partition, GaussRational> expansion;
    bool structure_ok = true;
    std::string detail;

    bool verified() const { return residual.is_zero() && structure_ok; }
};

/// tr(−s∇∇ − ν∇ + s)ℓ_m − (nν + 2|m|)ℓ_m.
RecursionReport verify_eigen(const Partition& m, const Rational& nu, int n);

/// −½λ_ν(X⁺)ℓ_m against −Σ_j binom(m, m−γ_j)(m_j − 1 + ν − j)ℓ_{m−γ_j}; also checks that
/// the exact Laguerre expansion of the left side reproduces the formula term by term.
RecursionReport verify_lowering(const Partition& m, const Rational& nu, int n);

/// Expands ½λ_ν(X⁻)ℓ_m in the Laguerre basis and reads off c_m(j). The residual is what is
/// left outside span{ℓ_{m+γ_j}}.
RecursionReport extract_raising(const Partition& m, const Rational& nu, int n);

/// E_ν ℓ_m against the lowering-plus-raising combination, with grading and operator
/// identity E_ν = ½(λ_ν(X⁻) − λ_ν(X⁺)) checks.
RecursionReport verify_Z(const Partition& m, const Rational& nu, int n);
RecursionReport verify_Z(const Partition& m, const Rational& nu, int n, const RecursionReport& lowering,
                         const RecursionReport& raising);

}  // namespace hermlag

#pragma once

#include <compare>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hermlag/multipoly.hpp"
#include "hermlag/rational.hpp"

namespace hermlag {

/// Weakly decreasing tuple of non-negative integers. Trailing zeros are kept, so the
/// length of a partition indexing a Laguerre function equals the rank n.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}
    /// Throws DomainError unless parts are non-negative and weakly decreasing.
    explicit Partition(std::vector<int> parts);

    static Partition zero(int n) { return Partition(std::vector<int>(n, 0)); }

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int nonzero_length() const;
    int weight() const;
    int operator[](int i) const { return parts_.at(i); }

    /// Padded with zeros (or trailing zeros dropped) to exactly n parts; throws
    /// DomainError if more than n parts are nonzero.
    Partition padded(int n) const;
    Partition trimmed() const;

    /// Young-diagram containment: k ⊆ m.
    bool contains(const Partition& k) const;

    std::string to_string() const;

    friend auto operator<=>(const Partition&, const Partition&) = default;
    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
};

/// Table order: increasing weight, then reverse-lexicographic within a weight.
struct EnumerationOrder {
    bool operator()(const Partition& a, const Partition& b) const;
};

/// All partitions with at most n parts and weight ≤ w_max, padded to length n.
std::vector<Partition> enumerate_partitions(int n, int w_max);

/// All partitions of `weight` (trimmed, no zero parts), reverse-lexicographic.
std::vector<Partition> partitions_of(int weight);

/// m ± γ_j (j zero-based), or nullopt if the result is not a partition.
std::optional<Partition> shift(const Partition& m, int j, int dir);

/// Generalized Pochhammer symbol (ν)_m = ∏_j ∏_{i<m_j} (ν − j + i), j zero-based.
Rational pochhammer_cone(const Rational& nu, const Partition& m);

/// Γ_Ω(ν) = π^{n(n−1)/2} ∏_{j=1}^n Γ(ν − j + 1); DomainError if ν ≤ n − 1.
double gindikin_gamma(double nu, int n);

/// Exact Γ_Ω(m + ν)/Γ_Ω(ν).
Rational gindikin_gamma_ratio(const Rational& nu, const Partition& m, int n);

/// Irreducible S_k character χ^λ(μ) by Murnaghan–Nakayama; DomainError if |λ| ≠ |μ|.
long character(const Partition& lambda, const Partition& mu);

/// Centralizer order z_μ = ∏ i^{a_i} a_i!.
long centralizer_order(const Partition& mu);

/// s_λ = Σ_μ χ^λ(μ)/z_μ · p_μ, keyed by trimmed μ.
std::map<Partition, Rational> schur_in_powersums(const Partition& lambda);

/// s_λ(1,…,1) with n ones, by the Weyl dimension formula.
Rational schur_dim(const Partition& lambda, int n);

/// Power sum x_1^k + … + x_n^k as a polynomial in n eigenvalue variables.
MultiPoly powersum_eig(int k, int n);

/// Schur polynomial s_λ(x_1,…,x_n).
MultiPoly schur_eig(const Partition& lambda, int n);

/// Expands a symmetric polynomial in n variables in the Schur basis. Throws SolveError
/// if p is not symmetric.
std::map<Partition, GaussRational> schur_decompose(const MultiPoly& p);

/// All nonzero generalized binomial coefficients binom(m, k) for fixed m, from
/// Φ_m(1 + x) = Σ_k binom(m, k) Φ_k(x). Keys padded to length n.
std::map<Partition, Rational> binomial_expansion(const Partition& m, int n);

/// Single generalized binomial coefficient; zero outside the expansion support.
Rational gen_binomial(const Partition& m, const Partition& k, int n);

}  // namespace hermlag

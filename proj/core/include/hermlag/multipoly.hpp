#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hermlag/rational.hpp"

namespace hermlag {

/// Upper bound on the number of variables of a MultiPoly; n² coordinates of Herm(n)
/// therefore limit the exact backend to rank n ≤ 4.
inline constexpr int kMaxVars = 16;

using Exponents = std::array<std::uint8_t, kMaxVars>;

int total_degree(const Exponents& e);

/// Sparse multivariate polynomial with exact Gaussian-rational coefficients.
/// No zero coefficient is ever stored, so structural equality is polynomial equality.
class MultiPoly {
public:
    using TermMap = std::map<Exponents, GaussRational>;

    MultiPoly() = default;
    explicit MultiPoly(int nvars);

    static MultiPoly constant(int nvars, const GaussRational& c);
    static MultiPoly variable(int nvars, int index);

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Adds c·x^e, removing the term if it cancels.
    void add_term(const Exponents& e, const GaussRational& c);
    GaussRational coefficient(const Exponents& e) const;

    int total_degree() const;
    MultiPoly homogeneous_part(int degree) const;
    bool has_real_coefficients() const;

    MultiPoly derivative(int var) const;
    MultiPoly conj() const;
    MultiPoly pow(int k) const;

    /// New polynomial in `new_nvars` variables: old variable j becomes new variable
    /// var_map[j], or is set to zero when var_map[j] < 0.
    MultiPoly remap(std::span<const int> var_map, int new_nvars) const;

    std::complex<double> evaluate(std::span<const std::complex<double>> x) const;
    std::complex<double> evaluate(std::span<const double> x) const;
    GaussRational evaluate(std::span<const GaussRational> x) const;

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const GaussRational& c);
    /// Accumulates c·a·b without materialising the product.
    void add_product(const MultiPoly& a, const MultiPoly& b, const GaussRational& c = GaussRational(1));

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator-(MultiPoly a) { return a *= GaussRational(-1); }
    friend MultiPoly operator*(MultiPoly a, const GaussRational& c) { return a *= c; }
    friend MultiPoly operator*(const GaussRational& c, MultiPoly a) { return a *= c; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);

    friend bool operator==(const MultiPoly& a, const MultiPoly& b);
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

private:
    void check_same(const MultiPoly& o) const;

    int nvars_ = 0;
    TermMap terms_;
};

Exponents make_exponents(std::initializer_list<int> e);

/// Canonical JSON: array of {"exponents": [...], "re": "p/q", "im": "p/q"}, exponent-sorted.
nlohmann::json to_json(const MultiPoly& p);
MultiPoly multipoly_from_json(const nlohmann::json& j, int nvars);

}  // namespace hermlag

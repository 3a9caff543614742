#pragma once

// Reference implementations that share no code with the library: classical one-variable
// Laguerre polynomials, Frobenius-formula characters, brute-force symmetric-group sums,
// and Schur polynomials as ratios of alternants.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Q = mpq_class;

inline Q frac(long a, long b) {
    Q q(a, b);
    q.canonicalize();
    return q;
}

/// Coefficients (in x) of the classical L_n^α(x) = Σ_k (−1)^k C(n+α, n−k) x^k / k!.
inline std::vector<Q> classical_laguerre(int n, const Q& alpha) {
    std::vector<Q> c(n + 1);
    for (int k = 0; k <= n; ++k) {
        Q binom = 1;  // C(n+α, n−k) = Π_{i=1}^{n−k} (k + α + i) / i
        for (int i = 1; i <= n - k; ++i) binom *= (k + alpha + i) / Q(i);
        Q kfact = 1;
        for (int i = 2; i <= k; ++i) kfact *= i;
        c[k] = (k % 2 ? -binom : binom) / kfact;
    }
    return c;
}

/// Coefficients in t of L_n^α(2t), i.e. of the polynomial factor of e^{−t}L_n^α(2t).
inline std::vector<Q> classical_ell(int n, const Q& alpha) {
    auto c = classical_laguerre(n, alpha);
    Q p = 1;
    for (auto& x : c) {
        x *= p;
        p *= 2;
    }
    return c;
}

inline long factorial(int k) {
    long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

/// Cycle type of a permutation, sorted decreasing.
inline std::vector<int> cycle_type(const std::vector<int>& perm) {
    std::vector<bool> seen(perm.size(), false);
    std::vector<int> type;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            ++len;
        }
        type.push_back(len);
    }
    std::sort(type.rbegin(), type.rend());
    return type;
}

/// Frobenius formula: χ^λ(μ) is the coefficient of x^{λ+δ} in a_δ(x)·p_μ(x), with
/// ℓ = |λ| variables. Dense polynomial arithmetic on exponent vectors.
inline long frobenius_character(std::vector<int> lambda, const std::vector<int>& mu) {
    int k = 0;
    for (int m : mu) k += m;
    const int l = std::max<int>(1, k);
    lambda.resize(l, 0);
    using Poly = std::map<std::vector<int>, long>;
    // Vandermonde a_δ = Σ_σ sign(σ) Π x_i^{l−1−σ(i)}
    Poly a;
    std::vector<int> perm(l);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        int inv = 0;
        for (int i = 0; i < l; ++i)
            for (int j = i + 1; j < l; ++j) inv += perm[i] > perm[j];
        std::vector<int> e(l);
        for (int i = 0; i < l; ++i) e[i] = l - 1 - perm[i];
        a[e] += inv % 2 ? -1 : 1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (int part : mu) {
        Poly next;
        for (const auto& [e, c] : a)
            for (int i = 0; i < l; ++i) {
                auto f = e;
                f[i] += part;
                next[f] += c;
            }
        a = std::move(next);
    }
    std::vector<int> target(l);
    for (int i = 0; i < l; ++i) target[i] = lambda[i] + l - 1 - i;
    auto it = a.find(target);
    return it == a.end() ? 0 : it->second;
}

/// s_λ(x) = det(x_i^{λ_j+n−j}) / det(x_i^{n−j}) for distinct x.
inline double schur_bialternant(const std::vector<int>& lambda, const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    auto det = [n](std::vector<std::vector<double>> m) {
        double d = 1.0;
        for (int c = 0; c < n; ++c) {
            int p = c;
            for (int r = c + 1; r < n; ++r)
                if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
            if (m[p][c] == 0.0) return 0.0;
            if (p != c) {
                std::swap(m[p], m[c]);
                d = -d;
            }
            d *= m[c][c];
            for (int r = c + 1; r < n; ++r) {
                const double f = m[r][c] / m[c][c];
                for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
            }
        }
        return d;
    };
    std::vector<std::vector<double>> num(n, std::vector<double>(n)), den(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int lj = j < static_cast<int>(lambda.size()) ? lambda[j] : 0;
            num[i][j] = std::pow(x[i], lj + n - 1 - j);
            den[i][j] = std::pow(x[i], n - 1 - j);
        }
    return det(num) / det(den);
}

/// Rank-one functions e^{−t}p(t), stored as the coefficients of p.
using Poly1 = std::vector<Q>;

inline Poly1 add(Poly1 a, const Poly1& b) {
    if (b.size() > a.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

inline Poly1 scale(Poly1 a, const Q& c) {
    for (auto& x : a) x *= c;
    return a;
}

inline Poly1 times_t(const Poly1& a) {
    Poly1 r(a.size() + 1);
    for (std::size_t i = 0; i < a.size(); ++i) r[i + 1] = a[i];
    return r;
}

/// d/dt (e^{−t}p) = e^{−t}(p′ − p)
inline Poly1 d(const Poly1& p) {
    Poly1 r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        r[i] -= p[i];
        if (i > 0) r[i - 1] += Q(static_cast<long>(i)) * p[i];
    }
    return r;
}

/// a·tD² + (b·t + c)D + (e·t + g) applied to e^{−t}p.
inline Poly1 second_order(const Poly1& p, const Q& a, const Q& b, const Q& c, const Q& e, const Q& g) {
    const Poly1 d1 = d(p), d2 = d(d1);
    Poly1 r = scale(times_t(d2), a);
    r = add(r, add(scale(times_t(d1), b), scale(d1, c)));
    return add(r, add(scale(times_t(p), e), scale(p, g)));
}

// The three classical rank-one operators.
inline Poly1 D_minus(const Poly1& p, const Q& nu) { return second_order(p, 1, 2, nu, 1, nu); }
inline Poly1 D_plus(const Poly1& p, const Q& nu) { return second_order(p, 1, -2, nu, 1, -nu); }
inline Poly1 D_zero(const Poly1& p, const Q& nu) { return second_order(p, 1, 0, nu, -1, 0); }

inline bool same(Poly1 a, Poly1 b) {
    const std::size_t n = std::max(a.size(), b.size());
    a.resize(n);
    b.resize(n);
    return a == b;
}

}  // namespace oracle

#include "hermlag/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hermlag/errors.hpp"
#include "memo.hpp"

namespace hermlag {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 0) throw DomainError("partition parts must be non-negative");
        if (i > 0 && parts_[i] > parts_[i - 1]) throw DomainError("partition parts must be weakly decreasing");
    }
}

int Partition::nonzero_length() const {
    return static_cast<int>(std::count_if(parts_.begin(), parts_.end(), [](int p) { return p > 0; }));
}

int Partition::weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

Partition Partition::padded(int n) const {
    if (nonzero_length() > n)
        throw DomainError("partition " + to_string() + " has more than " + std::to_string(n) + " parts");
    std::vector<int> p(n, 0);
    std::copy_n(parts_.begin(), std::min<std::size_t>(n, parts_.size()), p.begin());
    return Partition(std::move(p));
}

Partition Partition::trimmed() const { return padded(nonzero_length()); }

bool Partition::contains(const Partition& k) const {
    if (k.nonzero_length() > length()) return false;
    for (int i = 0; i < k.length(); ++i)
        if (k.parts_[i] > (i < length() ? parts_[i] : 0)) return false;
    return true;
}

std::string Partition::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(parts_[i]);
    }
    return s + ")";
}

bool EnumerationOrder::operator()(const Partition& a, const Partition& b) const {
    if (a.weight() != b.weight()) return a.weight() < b.weight();
    return a.parts() > b.parts();
}

namespace {

void fill_partitions(int remaining, int max_part, int slots, std::vector<int>& prefix,
                     std::vector<std::vector<int>>& out) {
    if (remaining == 0) {
        out.push_back(prefix);
        return;
    }
    if (slots == 0) return;
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        prefix.push_back(p);
        fill_partitions(remaining - p, p, slots - 1, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<Partition> enumerate_partitions(int n, int w_max) {
    if (n < 1 || w_max < 0) throw DomainError("enumerate_partitions requires n >= 1 and w_max >= 0");
    std::vector<Partition> out;
    for (int w = 0; w <= w_max; ++w) {
        std::vector<std::vector<int>> raw;
        std::vector<int> prefix;
        fill_partitions(w, w, n, prefix, raw);
        for (auto& r : raw) out.push_back(Partition(r).padded(n));
    }
    return out;
}

std::vector<Partition> partitions_of(int weight) {
    std::vector<std::vector<int>> raw;
    std::vector<int> prefix;
    fill_partitions(weight, weight, std::max(weight, 1), prefix, raw);
    std::vector<Partition> out;
    for (auto& r : raw) out.emplace_back(std::move(r));
    return out;
}

std::optional<Partition> shift(const Partition& m, int j, int dir) {
    if (j < 0 || j >= m.length()) throw IndexError("shift index out of range");
    std::vector<int> p = m.parts();
    p[j] += dir;
    if (p[j] < 0) return std::nullopt;
    if (j > 0 && p[j] > p[j - 1]) return std::nullopt;
    if (j + 1 < static_cast<int>(p.size()) && p[j] < p[j + 1]) return std::nullopt;
    return Partition(std::move(p));
}

Rational pochhammer_cone(const Rational& nu, const Partition& m) {
    Rational out = 1;
    for (int j = 0; j < m.length(); ++j)
        for (int i = 0; i < m[j]; ++i) out *= nu - j + i;
    return out;
}

double gindikin_gamma(double nu, int n) {
    if (n < 1) throw DomainError("gindikin_gamma requires n >= 1");
    if (!(nu > n - 1)) throw DomainError("gindikin_gamma requires nu > n - 1");
    double out = std::pow(std::numbers::pi, 0.5 * n * (n - 1));
    for (int j = 1; j <= n; ++j) out *= std::tgamma(nu - j + 1);
    return out;
}

Rational gindikin_gamma_ratio(const Rational& nu, const Partition& m, int n) {
    return pochhammer_cone(nu, m.padded(n));
}

namespace {

// Murnaghan–Nakayama on beta-sets: removing a rim hook of length k moves one bead
// from b to b − k; the sign counts beads jumped over.
long mn_recurse(std::vector<int>& beta, const std::vector<int>& mu, std::size_t idx) {
    if (idx == mu.size()) return 1;
    const int k = mu[idx];
    long total = 0;
    for (std::size_t a = 0; a < beta.size(); ++a) {
        const int b = beta[a];
        const int target = b - k;
        if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
        int between = 0;
        for (int x : beta)
            if (x > target && x < b) ++between;
        beta[a] = target;
        long sub = mn_recurse(beta, mu, idx + 1);
        beta[a] = b;
        total += (between % 2 ? -sub : sub);
    }
    return total;
}

}  // namespace

long character(const Partition& lambda, const Partition& mu) {
    if (lambda.weight() != mu.weight()) throw DomainError("character requires |lambda| == |mu|");
    const Partition lt = lambda.trimmed();
    const int len = lt.length();
    std::vector<int> beta(len);
    for (int i = 0; i < len; ++i) beta[i] = lt[i] + (len - 1 - i);
    std::vector<int> mparts;
    for (int p : mu.parts())
        if (p > 0) mparts.push_back(p);
    return mn_recurse(beta, mparts, 0);
}

long centralizer_order(const Partition& mu) {
    std::map<int, int> mult;
    for (int p : mu.parts())
        if (p > 0) ++mult[p];
    long z = 1;
    for (auto [part, a] : mult) {
        for (int i = 0; i < a; ++i) z *= part;
        for (int i = 2; i <= a; ++i) z *= i;
    }
    return z;
}

std::map<Partition, Rational> schur_in_powersums(const Partition& lambda) {
    std::map<Partition, Rational> out;
    for (const auto& mu : partitions_of(lambda.weight())) {
        long chi = character(lambda, mu);
        if (chi == 0) continue;
        Rational c(chi, centralizer_order(mu));
        c.canonicalize();
        out.emplace(mu, c);
    }
    return out;
}

Rational schur_dim(const Partition& lambda, int n) {
    if (lambda.nonzero_length() > n) return 0;
    const Partition l = lambda.padded(n);
    Rational out = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out *= Rational(l[i] - l[j] + j - i, j - i);
    out.canonicalize();
    return out;
}

MultiPoly powersum_eig(int k, int n) {
    if (k == 0) return MultiPoly::constant(n, GaussRational(n));
    MultiPoly p(n);
    for (int i = 0; i < n; ++i) {
        Exponents e{};
        e[i] = static_cast<std::uint8_t>(k);
        p.add_term(e, GaussRational(1));
    }
    return p;
}

MultiPoly schur_eig(const Partition& lambda, int n) {
    static detail::Memo<std::pair<Partition, int>, MultiPoly> memo;
    const Partition key = lambda.trimmed();
    return memo.get({key, n}, [&] {
        MultiPoly s(n);
        if (key.nonzero_length() > n) return s;
        for (const auto& [mu, c] : schur_in_powersums(key)) {
            MultiPoly term = MultiPoly::constant(n, GaussRational(1));
            for (int part : mu.parts()) term = term * powersum_eig(part, n);
            s += term * GaussRational(c);
        }
        return s;
    });
}

std::map<Partition, GaussRational> schur_decompose(const MultiPoly& p) {
    const int n = p.nvars();
    std::map<Partition, GaussRational> out;
    MultiPoly rest = p;
    while (!rest.is_zero()) {
        const int deg = rest.total_degree();
        const MultiPoly top = rest.homogeneous_part(deg);
        const Exponents& lead = top.terms().rbegin()->first;
        const GaussRational c = top.terms().rbegin()->second;
        std::vector<int> parts(lead.begin(), lead.begin() + n);
        if (!std::is_sorted(parts.begin(), parts.end(), std::greater<>()))
            throw SolveError("schur_decompose: polynomial is not symmetric");
        Partition k(parts);
        out.emplace(k, c);
        rest -= schur_eig(k, n) * c;
    }
    return out;
}

namespace {

MultiPoly shift_by_one(const MultiPoly& p) {
    const int n = p.nvars();
    std::vector<std::vector<MultiPoly>> one_plus(n);
    for (const auto& [e, c] : p.terms())
        for (int j = 0; j < n; ++j) {
            auto& powers = one_plus[j];
            if (powers.empty()) powers.push_back(MultiPoly::constant(n, GaussRational(1)));
            while (static_cast<int>(powers.size()) <= e[j])
                powers.push_back(powers.back() * (MultiPoly::constant(n, GaussRational(1)) + MultiPoly::variable(n, j)));
        }
    MultiPoly out(n);
    for (const auto& [e, c] : p.terms()) {
        MultiPoly term = MultiPoly::constant(n, c);
        for (int j = 0; j < n; ++j)
            if (e[j]) term = term * one_plus[j][e[j]];
        out += term;
    }
    return out;
}

}  // namespace

std::map<Partition, Rational> binomial_expansion(const Partition& m, int n) {
    static detail::Memo<std::pair<Partition, int>, std::map<Partition, Rational>> memo;
    const Partition key = m.padded(n);
    return memo.get({key, n}, [&] {
        std::map<Partition, Rational> out;
        const Rational dim_m = schur_dim(key, n);
        for (const auto& [k, c] : schur_decompose(shift_by_one(schur_eig(key, n)))) {
            if (!c.is_real()) throw SolveError("binomial_expansion: non-real Schur coefficient");
            Rational b = c.re() * schur_dim(k, n) / dim_m;
            b.canonicalize();
            out.emplace(k.padded(n), b);
        }
        return out;
    });
}

Rational gen_binomial(const Partition& m, const Partition& k, int n) {
    if (k.weight() > m.weight()) return 0;
    const auto table = binomial_expansion(m, n);
    auto it = table.find(k.padded(n));
    return it == table.end() ? Rational(0) : it->second;
}

}  // namespace hermlag

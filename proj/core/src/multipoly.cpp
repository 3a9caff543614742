#include "hermlag/multipoly.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "hermlag/errors.hpp"

namespace hermlag {

int total_degree(const Exponents& e) {
    int d = 0;
    for (auto x : e) d += x;
    return d;
}

Exponents make_exponents(std::initializer_list<int> e) {
    if (e.size() > static_cast<std::size_t>(kMaxVars)) throw DimensionError("too many exponents");
    Exponents out{};
    std::size_t i = 0;
    for (int x : e) out[i++] = static_cast<std::uint8_t>(x);
    return out;
}

MultiPoly::MultiPoly(int nvars) : nvars_(nvars) {
    if (nvars < 0 || nvars > kMaxVars)
        throw DimensionError("MultiPoly supports at most " + std::to_string(kMaxVars) + " variables");
}

MultiPoly MultiPoly::constant(int nvars, const GaussRational& c) {
    MultiPoly p(nvars);
    p.add_term(Exponents{}, c);
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int index) {
    if (index < 0 || index >= nvars) throw IndexError("variable index out of range");
    MultiPoly p(nvars);
    Exponents e{};
    e[index] = 1;
    p.add_term(e, GaussRational(1));
    return p;
}

void MultiPoly::add_term(const Exponents& e, const GaussRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GaussRational MultiPoly::coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? GaussRational() : it->second;
}

int MultiPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, hermlag::total_degree(e));
    return d;
}

MultiPoly MultiPoly::homogeneous_part(int degree) const {
    MultiPoly out(nvars_);
    for (const auto& [e, c] : terms_)
        if (hermlag::total_degree(e) == degree) out.terms_.emplace_hint(out.terms_.end(), e, c);
    return out;
}

bool MultiPoly::has_real_coefficients() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_real(); });
}

MultiPoly MultiPoly::derivative(int var) const {
    if (var < 0 || var >= nvars_) throw IndexError("derivative variable out of range");
    MultiPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents d = e;
        --d[var];
        out.terms_.emplace(d, c * GaussRational(static_cast<long>(e[var])));
    }
    return out;
}

MultiPoly MultiPoly::conj() const {
    MultiPoly out(nvars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, c.conj());
    return out;
}

MultiPoly MultiPoly::pow(int k) const {
    MultiPoly out = constant(nvars_, GaussRational(1));
    for (int i = 0; i < k; ++i) out = out * *this;
    return out;
}

MultiPoly MultiPoly::remap(std::span<const int> var_map, int new_nvars) const {
    if (static_cast<int>(var_map.size()) != nvars_) throw DimensionError("remap: map size mismatch");
    MultiPoly out(new_nvars);
    for (const auto& [e, c] : terms_) {
        Exponents ne{};
        bool vanishes = false;
        for (int j = 0; j < nvars_; ++j) {
            if (e[j] == 0) continue;
            if (var_map[j] < 0) {
                vanishes = true;
                break;
            }
            ne[var_map[j]] += e[j];
        }
        if (!vanishes) out.add_term(ne, c);
    }
    return out;
}

namespace {

template <class T, class Coef>
T evaluate_impl(const MultiPoly::TermMap& terms, int nvars, std::span<const T> x, Coef&& coef) {
    if (static_cast<int>(x.size()) != nvars) throw DimensionError("evaluate: coordinate count mismatch");
    int maxdeg = 0;
    for (const auto& [e, c] : terms)
        for (int j = 0; j < nvars; ++j) maxdeg = std::max<int>(maxdeg, e[j]);
    std::vector<std::vector<T>> powers(nvars, std::vector<T>(maxdeg + 1, T(1)));
    for (int j = 0; j < nvars; ++j)
        for (int k = 1; k <= maxdeg; ++k) powers[j][k] = powers[j][k - 1] * x[j];
    T sum(0);
    for (const auto& [e, c] : terms) {
        T term = coef(c);
        for (int j = 0; j < nvars; ++j)
            if (e[j]) term *= powers[j][e[j]];
        sum += term;
    }
    return sum;
}

}  // namespace

std::complex<double> MultiPoly::evaluate(std::span<const std::complex<double>> x) const {
    return evaluate_impl<std::complex<double>>(terms_, nvars_, x, [](const GaussRational& c) { return c.to_complex(); });
}

std::complex<double> MultiPoly::evaluate(std::span<const double> x) const {
    std::vector<std::complex<double>> cx(x.begin(), x.end());
    return evaluate(std::span<const std::complex<double>>(cx));
}

GaussRational MultiPoly::evaluate(std::span<const GaussRational> x) const {
    return evaluate_impl<GaussRational>(terms_, nvars_, x, [](const GaussRational& c) { return c; });
}

void MultiPoly::check_same(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) throw DimensionError("MultiPoly variable count mismatch");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const GaussRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

void MultiPoly::add_product(const MultiPoly& a, const MultiPoly& b, const GaussRational& c) {
    check_same(a);
    check_same(b);
    for (const auto& [ea, ca] : a.terms_) {
        GaussRational cac = ca * c;
        for (const auto& [eb, cb] : b.terms_) {
            Exponents e;
            for (int j = 0; j < kMaxVars; ++j) e[j] = static_cast<std::uint8_t>(ea[j] + eb[j]);
            add_term(e, cac * cb);
        }
    }
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly out(a.nvars());
    out.add_product(a, b);
    return out;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

nlohmann::json to_json(const MultiPoly& p) {
    auto arr = nlohmann::json::array();
    for (const auto& [e, c] : p.terms()) {
        std::vector<int> exps(e.begin(), e.begin() + p.nvars());
        arr.push_back({{"exponents", exps}, {"re", to_string(c.re())}, {"im", to_string(c.im())}});
    }
    return arr;
}

MultiPoly multipoly_from_json(const nlohmann::json& j, int nvars) {
    MultiPoly p(nvars);
    for (const auto& term : j) {
        const auto exps = term.at("exponents").get<std::vector<int>>();
        if (static_cast<int>(exps.size()) != nvars) throw DimensionError("exponent vector length mismatch");
        Exponents e{};
        for (int k = 0; k < nvars; ++k) {
            if (exps[k] < 0 || exps[k] > 255) throw std::invalid_argument("exponent out of range");
            e[k] = static_cast<std::uint8_t>(exps[k]);
        }
        p.add_term(e, GaussRational(parse_rational(term.at("re").get<std::string>()),
                                    parse_rational(term.at("im").get<std::string>())));
    }
    return p;
}

}  // namespace hermlag

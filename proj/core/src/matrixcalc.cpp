#include "hermlag/matrixcalc.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "hermlag/errors.hpp"

namespace hermlag {

// ---------------------------------------------------------------------------
// ExpPoly

ExpPoly::ExpPoly(int rank, MultiPoly poly) : n(rank), p(std::move(poly)) {
    if (p.nvars() != n * n) throw DimensionError("ExpPoly: polynomial is not over Herm(n) coordinates");
}

std::complex<double> ExpPoly::evaluate(const HermMatrix& s) const {
    return std::exp(-s.matrix().trace().real()) * eval_poly(p, s);
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
    if (n != o.n) throw DimensionError("ExpPoly rank mismatch");
    p += o.p;
    return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& o) {
    if (n != o.n) throw DimensionError("ExpPoly rank mismatch");
    p -= o.p;
    return *this;
}

ExpPoly& ExpPoly::operator*=(const GaussRational& c) {
    p *= c;
    return *this;
}

// ---------------------------------------------------------------------------
// LieElement

LieElement LieElement::k_c(ExactMatrix a, ExactMatrix b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows() || a.rows() < 1)
        throw ShapeError("k_C element needs square n×n blocks a and b");
    if (!a.trace().is_zero()) throw ShapeError("k_C element needs tr(a) = 0");
    return {Block::KC, std::move(a), std::move(b)};
}

LieElement LieElement::p_plus(ExactMatrix x) {
    if (x.rows() != x.cols() || x.rows() < 1) throw ShapeError("p+ element needs a square block x");
    const int n = x.rows();
    return {Block::PPlus, std::move(x), ExactMatrix::zero(n)};
}

LieElement LieElement::p_minus(ExactMatrix x) {
    if (x.rows() != x.cols() || x.rows() < 1) throw ShapeError("p- element needs a square block x");
    const int n = x.rows();
    return {Block::PMinus, std::move(x), ExactMatrix::zero(n)};
}

LieElement LieElement::xi(int n) { return k_c(ExactMatrix::zero(n), ExactMatrix::identity(n)); }
LieElement LieElement::x_plus(int n) { return p_plus(-ExactMatrix::identity(n)); }
LieElement LieElement::x_minus(int n) { return p_minus(ExactMatrix::identity(n)); }

ExactMatrix LieElement::matrix() const {
    const int n = rank();
    ExactMatrix m(2 * n, 2 * n);
    switch (block_) {
        case Block::KC:
            m.set_block(0, 0, a_);
            m.set_block(0, n, b_);
            m.set_block(n, 0, b_);
            m.set_block(n, n, a_);
            break;
        case Block::PPlus:
            m.set_block(0, 0, a_);
            m.set_block(0, n, a_);
            m.set_block(n, 0, -a_);
            m.set_block(n, n, -a_);
            break;
        case Block::PMinus:
            m.set_block(0, 0, a_);
            m.set_block(0, n, -a_);
            m.set_block(n, 0, a_);
            m.set_block(n, n, -a_);
            break;
    }
    return m;
}

std::array<LieElement, 3> decompose(const ExactMatrix& m) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0)
        throw ShapeError("decompose needs a 2n×2n matrix");
    if (!m.trace().is_zero()) throw ShapeError("decompose needs a traceless matrix");
    const int n = m.rows() / 2;
    const ExactMatrix A = m.block(0, 0, n, n), B = m.block(0, n, n, n);
    const ExactMatrix C = m.block(n, 0, n, n), D = m.block(n, n, n, n);
    const GaussRational half(Rational(1, 2)), quarter(Rational(1, 4));
    return {LieElement::k_c((A + D) * half, (B + C) * half), LieElement::p_plus((A - D + B - C) * quarter),
            LieElement::p_minus((A - D - B + C) * quarter)};
}

// ---------------------------------------------------------------------------
// LinDiffOp

LinDiffOp::LinDiffOp(int n) : n_(n), zeroth_(n * n) {
    if (n < 1) throw DimensionError("LinDiffOp rank must be positive");
}

namespace {

template <class Map, class Key>
void accumulate(Map& map, const Key& key, const MultiPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = map.try_emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) map.erase(it);
    }
}

}  // namespace

void LinDiffOp::add_second(Pair p, Pair q, const MultiPoly& c) {
    if (q < p) std::swap(p, q);
    accumulate(second_, PairPair{p, q}, c);
}

void LinDiffOp::add_first(Pair p, const MultiPoly& c) { accumulate(first_, p, c); }

void LinDiffOp::add_zeroth(const MultiPoly& c) { zeroth_ += c; }

LinDiffOp& LinDiffOp::operator+=(const LinDiffOp& o) {
    if (n_ != o.n_) throw DimensionError("LinDiffOp rank mismatch");
    for (const auto& [k, c] : o.second_) accumulate(second_, k, c);
    for (const auto& [k, c] : o.first_) accumulate(first_, k, c);
    zeroth_ += o.zeroth_;
    return *this;
}

LinDiffOp& LinDiffOp::operator*=(const GaussRational& c) {
    for (auto& [k, v] : second_) v *= c;
    for (auto& [k, v] : first_) v *= c;
    zeroth_ *= c;
    prune();
    return *this;
}

void LinDiffOp::prune() {
    std::erase_if(second_, [](const auto& kv) { return kv.second.is_zero(); });
    std::erase_if(first_, [](const auto& kv) { return kv.second.is_zero(); });
}

bool operator==(const LinDiffOp& a, const LinDiffOp& b) {
    return a.n_ == b.n_ && a.second_ == b.second_ && a.first_ == b.first_ && a.zeroth_ == b.zeroth_;
}

nlohmann::json to_json(const LinDiffOp& op) {
    nlohmann::json c2 = nlohmann::json::array(), c1 = nlohmann::json::array();
    for (const auto& [key, c] : op.second())
        c2.push_back({{"k", key.first.first},
                      {"i", key.first.second},
                      {"j", key.second.first},
                      {"l", key.second.second},
                      {"coefficient", to_json(c)}});
    for (const auto& [key, c] : op.first())
        c1.push_back({{"i", key.first}, {"j", key.second}, {"coefficient", to_json(c)}});
    return {{"n", op.rank()}, {"c2", c2}, {"c1", c1}, {"c0", to_json(op.zeroth())}};
}

// ---------------------------------------------------------------------------
// Derivatives

namespace {

struct StencilTerm {
    int var;
    GaussRational coef;
};

// D_{i,j} as a combination of real partial derivatives.
std::vector<StencilTerm> d_entry_stencil(int i, int j, const HermCoords& c) {
    const int n = c.rank();
    if (i < 0 || j < 0 || i >= n || j >= n) throw IndexError("D_{i,j} index out of range");
    if (i == j) return {{c.t(i), GaussRational(1)}};
    const GaussRational half(Rational(1, 2));
    const GaussRational half_i(Rational(0), Rational(1, 2));
    if (i < j) return {{c.u(i, j), half}, {c.v(i, j), -half_i}};
    return {{c.u(j, i), half}, {c.v(j, i), half_i}};
}

// Operator in real coordinates, already conjugated by e^{−tr s} when acting on ExpPoly.
struct RealFormOp {
    std::map<std::pair<int, int>, MultiPoly> second;  // a ≤ b
    std::map<int, MultiPoly> first;
    MultiPoly zeroth;
};

RealFormOp real_form(const LinDiffOp& op, bool exp_weighted) {
    const HermCoords c(op.rank());
    std::map<std::pair<int, int>, MultiPoly> full2;
    std::map<int, MultiPoly> full1;
    for (const auto& [key, coef] : op.second())
        for (const auto& sa : d_entry_stencil(key.first.first, key.first.second, c))
            for (const auto& sb : d_entry_stencil(key.second.first, key.second.second, c))
                accumulate(full2, std::pair{sa.var, sb.var}, coef * (sa.coef * sb.coef));
    for (const auto& [key, coef] : op.first())
        for (const auto& sa : d_entry_stencil(key.first, key.second, c)) accumulate(full1, sa.var, coef * sa.coef);

    RealFormOp out{{}, {}, op.zeroth()};
    // ∂_a(e^{−tr s} p) = e^{−tr s}(∂_a − ε_a) p with ε_a = 1 exactly on diagonal coordinates.
    auto eps = [&](int var) { return exp_weighted && c.is_diagonal_var(var); };
    for (const auto& [ab, coef] : full2) {
        auto [a, b] = ab;
        accumulate(out.second, std::pair{std::min(a, b), std::max(a, b)}, coef);
        if (eps(b)) accumulate(out.first, a, -coef);
        if (eps(a)) accumulate(out.first, b, -coef);
        if (eps(a) && eps(b)) out.zeroth += coef;
    }
    for (const auto& [a, coef] : full1) {
        accumulate(out.first, a, coef);
        if (eps(a)) out.zeroth -= coef;
    }
    return out;
}

MultiPoly apply_real_form(const RealFormOp& op, const MultiPoly& p) {
    MultiPoly out(p.nvars());
    std::map<int, MultiPoly> d1;
    auto first_partial = [&](int a) -> const MultiPoly& {
        auto it = d1.find(a);
        if (it == d1.end()) it = d1.emplace(a, p.derivative(a)).first;
        return it->second;
    };
    for (const auto& [ab, coef] : op.second) {
        const MultiPoly d2 = first_partial(ab.first).derivative(ab.second);
        out.add_product(coef, d2);
    }
    for (const auto& [a, coef] : op.first) out.add_product(coef, first_partial(a));
    out.add_product(op.zeroth, p);
    return out;
}

}  // namespace

MultiPoly d_entry(int i, int j, const MultiPoly& p, int n) {
    const HermCoords c(n);
    if (p.nvars() != c.size()) throw DimensionError("d_entry: polynomial is not over Herm(n) coordinates");
    MultiPoly out(c.size());
    for (const auto& s : d_entry_stencil(i, j, c)) out += p.derivative(s.var) * s.coef;
    return out;
}

ExpPoly d_entry(int i, int j, const ExpPoly& f) {
    MultiPoly out = d_entry(i, j, f.p, f.n);
    if (i == j) out -= f.p;
    return {f.n, std::move(out)};
}

std::vector<ExpPoly> gradient(const ExpPoly& f) {
    std::vector<ExpPoly> g;
    g.reserve(f.n * f.n);
    for (int i = 0; i < f.n; ++i)
        for (int j = 0; j < f.n; ++j) g.push_back(d_entry(j, i, f));
    return g;
}

ExpPoly dir_derivative(const ExactMatrix& w, const ExpPoly& f) {
    if (w.rows() != f.n || w.cols() != f.n) throw DimensionError("dir_derivative: direction has wrong shape");
    ExpPoly out = ExpPoly::zero(f.n);
    for (int i = 0; i < f.n; ++i)
        for (int j = 0; j < f.n; ++j)
            if (!w(i, j).is_zero()) out += d_entry(i, j, f) * w(i, j);
    return out;
}

MultiPoly euler(const MultiPoly& p, int n) {
    const HermCoords c(n);
    MultiPoly out(c.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.add_product(c.entry(i, j), d_entry(i, j, p, n));
    return out;
}

// ---------------------------------------------------------------------------
// λ_ν

LinDiffOp lambda_op(const LieElement& x, const Rational& nu) {
    const int n = x.rank();
    const HermCoords c(n);
    const GaussRational gnu(nu);
    std::vector<MultiPoly> S(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) S[i * n + j] = c.entry(i, j);
    auto s = [&](int i, int j) -> const MultiPoly& { return S[i * n + j]; };

    LinDiffOp op(n);
    // ± tr(s∇y∇) f = ± Σ s_{j,i} y_{k,l} D_{k,i} D_{j,l} f
    auto add_second_order = [&](const ExactMatrix& y, const GaussRational& sign) {
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                if (y(k, l).is_zero()) continue;
                const GaussRational w = sign * y(k, l);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) op.add_second({k, i}, {j, l}, s(j, i) * w);
            }
    };
    // (s·y)_{i,j} and (y·s)_{i,j}
    auto s_times = [&](const ExactMatrix& y, int i, int j) {
        MultiPoly out(c.size());
        for (int k = 0; k < n; ++k)
            if (!y(k, j).is_zero()) out += s(i, k) * y(k, j);
        return out;
    };
    auto times_s = [&](const ExactMatrix& y, int i, int j) {
        MultiPoly out(c.size());
        for (int k = 0; k < n; ++k)
            if (!y(i, k).is_zero()) out += s(k, j) * y(i, k);
        return out;
    };
    // tr(y s) = Σ y_{i,j} s_{j,i}
    auto trace_with_s = [&](const ExactMatrix& y) {
        MultiPoly out(c.size());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!y(i, j).is_zero()) out += s(j, i) * y(i, j);
        return out;
    };

    switch (x.block()) {
        case Block::KC: {
            // tr(−s∇b∇ + (sa − as − νb)∇ + bs)
            const ExactMatrix& a = x.a();
            const ExactMatrix& b = x.b();
            add_second_order(b, GaussRational(-1));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    MultiPoly coef = s_times(a, i, j) - times_s(a, i, j);
                    coef -= c.constant(gnu * b(i, j));
                    op.add_first({i, j}, coef);
                }
            op.add_zeroth(trace_with_s(b));
            break;
        }
        case Block::PPlus: {
            // tr(s∇x∇ + (νx + sx + xs)∇ + (νx + sx))
            const ExactMatrix& y = x.x();
            add_second_order(y, GaussRational(1));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    op.add_first({i, j}, s_times(y, i, j) + times_s(y, i, j) + c.constant(gnu * y(i, j)));
            op.add_zeroth(c.constant(gnu * y.trace()) + trace_with_s(y));
            break;
        }
        case Block::PMinus: {
            // tr(−s∇x∇ + (−νx + sx + xs)∇ + (νx − sx))
            const ExactMatrix& y = x.x();
            add_second_order(y, GaussRational(-1));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    op.add_first({i, j}, s_times(y, i, j) + times_s(y, i, j) - c.constant(gnu * y(i, j)));
            op.add_zeroth(c.constant(gnu * y.trace()) - trace_with_s(y));
            break;
        }
    }
    return op;
}

LinDiffOp lambda_op(const ExactMatrix& m, const Rational& nu) {
    const auto parts = decompose(m);
    LinDiffOp op(m.rows() / 2);
    for (const auto& part : parts) op += lambda_op(part, nu);
    return op;
}

LinDiffOp euler_op(const Rational& nu, int n) {
    const HermCoords c(n);
    LinDiffOp op(n);
    op.add_zeroth(c.constant(GaussRational(nu * n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) op.add_first({i, j}, c.entry(i, j) * GaussRational(2));
    return op;
}

ExpPoly apply(const LinDiffOp& op, const ExpPoly& f) {
    if (op.rank() != f.n) throw DimensionError("apply: operator and function ranks differ");
    return {f.n, apply_real_form(real_form(op, true), f.p)};
}

MultiPoly apply(const LinDiffOp& op, const MultiPoly& p) {
    if (p.nvars() != op.rank() * op.rank()) throw DimensionError("apply: polynomial is not over Herm(n)");
    return apply_real_form(real_form(op, false), p);
}

ExpPoly commutator_apply(const LinDiffOp& a, const LinDiffOp& b, const ExpPoly& f) {
    return apply(a, apply(b, f)) - apply(b, apply(a, f));
}

// ---------------------------------------------------------------------------
// Finite-difference backend

namespace {

std::complex<double> numeric_formula(const LieElement& x, double nu, const CMatrix& s, std::complex<double> f0,
                                     const std::vector<std::complex<double>>& grad,
                                     const std::vector<std::vector<std::complex<double>>>& hess,
                                     const HermCoords& c) {
    const int n = c.rank();
    // D_{i,j} f and D_{k,i}D_{j,l} f from real partials.
    std::vector<std::vector<std::pair<int, std::complex<double>>>> stencil(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const auto& t : d_entry_stencil(i, j, c)) stencil[i * n + j].push_back({t.var, t.coef.to_complex()});
    auto d1 = [&](int i, int j) {
        std::complex<double> v = 0;
        for (auto [a, w] : stencil[i * n + j]) v += w * grad[a];
        return v;
    };
    auto d2 = [&](int k, int i, int j, int l) {
        std::complex<double> v = 0;
        for (auto [a, wa] : stencil[k * n + i])
            for (auto [b, wb] : stencil[j * n + l]) v += wa * wb * hess[a][b];
        return v;
    };
    auto second_order = [&](const CMatrix& y) {
        std::complex<double> v = 0;
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                if (y(k, l) == 0.0) continue;
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) v += s(j, i) * y(k, l) * d2(k, i, j, l);
            }
        return v;
    };
    auto first_order = [&](const CMatrix& A) {
        std::complex<double> v = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) v += A(i, j) * d1(i, j);
        return v;
    };

    switch (x.block()) {
        case Block::KC: {
            const CMatrix a = x.a().to_complex(), b = x.b().to_complex();
            return -second_order(b) + first_order(s * a - a * s - nu * b) + (b * s).trace() * f0;
        }
        case Block::PPlus: {
            const CMatrix y = x.x().to_complex();
            return second_order(y) + first_order(nu * y + s * y + y * s) + (nu * y.trace() + (s * y).trace()) * f0;
        }
        case Block::PMinus: {
            const CMatrix y = x.x().to_complex();
            return -second_order(y) + first_order(-nu * y + s * y + y * s) + (nu * y.trace() - (s * y).trace()) * f0;
        }
    }
    return 0;
}

}  // namespace

NumericEstimate numeric_apply(const LieElement& x, double nu, const HermFunction& f, const HermMatrix& s,
                              std::optional<double> h) {
    const int n = s.rank();
    if (x.rank() != n) throw DimensionError("numeric_apply: element and point ranks differ");
    const HermCoords c(n);
    const int N = c.size();
    const std::vector<double> x0 = c.coords_of(s.matrix());
    const double step = h.value_or(1e-4 * (1.0 + s.matrix().norm()));
    if (!(step > 0)) throw DomainError("numeric_apply requires a positive step");

    auto g = [&](const std::vector<double>& xs) { return f(c.matrix_of(xs)); };
    const std::complex<double> f0 = g(x0);

    auto estimate = [&](double hh) {
        std::vector<std::complex<double>> grad(N), plus(N), minus(N);
        std::vector<std::vector<std::complex<double>>> hess(N, std::vector<std::complex<double>>(N));
        for (int a = 0; a < N; ++a) {
            auto xp = x0, xm = x0;
            xp[a] += hh;
            xm[a] -= hh;
            plus[a] = g(xp);
            minus[a] = g(xm);
            grad[a] = (plus[a] - minus[a]) / (2 * hh);
            hess[a][a] = (plus[a] - 2.0 * f0 + minus[a]) / (hh * hh);
        }
        for (int a = 0; a < N; ++a)
            for (int b = a + 1; b < N; ++b) {
                auto at = [&](double da, double db) {
                    auto xs = x0;
                    xs[a] += da;
                    xs[b] += db;
                    return g(xs);
                };
                hess[a][b] = hess[b][a] = (at(hh, hh) - at(hh, -hh) - at(-hh, hh) + at(-hh, -hh)) / (4 * hh * hh);
            }
        return numeric_formula(x, nu, s.matrix(), f0, grad, hess, c);
    };

    NumericEstimate out;
    out.base = estimate(step);
    const std::complex<double> fine = estimate(step / 2);
    out.value = (4.0 * fine - out.base) / 3.0;
    out.refinement_gap = std::abs(out.value - out.base) / std::max(std::abs(out.value), 1e-300);
    out.warning = out.refinement_gap > 1e-4;
    return out;
}

}  // namespace hermlag

#include "hermlag/integration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hermlag/combinatorics.hpp"
#include "hermlag/errors.hpp"
#include "memo.hpp"

namespace hermlag {

namespace {

// Golub–Welsch on the symmetric Jacobi matrix of a three-term recurrence.
QuadratureRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double mu0, int order) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw SolveError("Golub-Welsch eigenproblem failed");
    QuadratureRule r;
    r.order = order;
    for (int k = 0; k < order; ++k) {
        r.nodes.push_back(es.eigenvalues()(k));
        const double v0 = es.eigenvectors()(0, k);
        r.weights.push_back(mu0 * v0 * v0);
    }
    return r;
}

std::complex<double> pairwise_sum(const std::complex<double>* x, std::size_t n) {
    if (n <= 8) {
        std::complex<double> s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += x[k];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

// Sum of the terms and of their magnitudes; the latter scales refinement checks so that
// integrals which cancel to zero do not report spurious relative changes.
struct Sum {
    std::complex<double> value;
    double magnitude = 0.0;
};

Sum pairwise_sum(const std::vector<std::complex<double>>& x) {
    std::vector<std::complex<double>> mags(x.size());
    std::transform(x.begin(), x.end(), mags.begin(), [](std::complex<double> v) { return std::abs(v); });
    return {pairwise_sum(x.data(), x.size()), pairwise_sum(mags.data(), mags.size()).real()};
}

double refinement(const Sum& a, const Sum& b) {
    const double scale = std::max({std::abs(a.value), std::abs(b.value), a.magnitude});
    return scale == 0.0 ? 0.0 : std::abs(a.value - b.value) / scale;
}

// Calls visit(idx) for every multi-index in [0, sizes[0]) × … in lexicographic order.
template <class Fn>
void odometer(const std::vector<int>& sizes, Fn&& visit) {
    std::vector<int> idx(sizes.size(), 0);
    if (std::any_of(sizes.begin(), sizes.end(), [](int s) { return s <= 0; })) return;
    while (true) {
        visit(idx);
        std::size_t d = idx.size();
        while (d > 0) {
            --d;
            if (++idx[d] < sizes[d]) break;
            idx[d] = 0;
            if (d == 0) return;
        }
        if (idx.empty()) return;
    }
}

double rel_change(std::complex<double> a, std::complex<double> b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Stripped eigenvalue integral: ∫ g(λ) V(λ)² ∏ λ^{ν−n} e^{−decay·λ} dλ.
Sum eig_sum(const EigenFunction& g, double nu, int n, int order, double decay) {
    const double alpha = nu - n;
    const QuadratureRule rule = gauss_laguerre(order, alpha);
    const double scale = std::pow(decay, -n * (alpha + 1));
    std::vector<std::complex<double>> terms;
    terms.reserve(static_cast<std::size_t>(std::pow(order, n)));
    std::vector<double> lam(n);
    odometer(std::vector<int>(n, order), [&](const std::vector<int>& idx) {
        double w = scale;
        for (int i = 0; i < n; ++i) {
            lam[i] = rule.nodes[idx[i]] / decay;
            w *= rule.weights[idx[i]];
        }
        double vdm = 1.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) vdm *= (lam[i] - lam[j]) * (lam[i] - lam[j]);
        terms.push_back(w * vdm * g(lam));
    });
    return pairwise_sum(terms);
}

void check_nu(double nu, int n) {
    if (n < 1) throw DimensionError("rank must be positive");
    if (!(nu > n - 1)) throw DomainError("integration requires nu > n - 1");
}

QuadResult stripped_invariant(const EigenFunction& g, double nu, int n, int order, double decay) {
    check_nu(nu, n);
    const double k = calibration_constant(n, nu, order);
    const auto a = eig_sum(g, nu, n, order, decay);
    const auto b = eig_sum(g, nu, n, 2 * order, decay);
    QuadResult r{k * a.value, refinement(a, b), false};
    r.warning = r.rel_change > 1e-8;
    return r;
}

bool shifted_positive(const CMatrix& z) {
    const int n = static_cast<int>(z.rows());
    const Eigen::MatrixXcd h = 0.5 * (z + z.adjoint()) + Eigen::MatrixXcd::Identity(n, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() > 0.0;
}

}  // namespace

QuadratureRule gauss_laguerre(int order, double alpha) {
    if (order < 1) throw DomainError("quadrature order must be positive");
    if (!(alpha > -1.0)) throw DomainError("Gauss-Laguerre needs alpha > -1");
    Eigen::VectorXd d(order), e(std::max(order - 1, 0));
    for (int k = 0; k < order; ++k) d(k) = 2.0 * k + alpha + 1.0;
    for (int k = 1; k < order; ++k) e(k - 1) = std::sqrt(k * (k + alpha));
    return golub_welsch(d, e, std::tgamma(alpha + 1.0), order);
}

QuadratureRule gauss_hermite(int order) {
    if (order < 1) throw DomainError("quadrature order must be positive");
    Eigen::VectorXd d = Eigen::VectorXd::Zero(order), e(std::max(order - 1, 0));
    for (int k = 1; k < order; ++k) e(k - 1) = std::sqrt(0.5 * k);
    return golub_welsch(d, e, std::sqrt(std::numbers::pi), order);
}

QuadResult raw_eigenvalue_integral(const EigenFunction& f, double nu, int n, int order, double decay) {
    check_nu(nu, n);
    if (!(decay > 0.0)) throw DomainError("decay must be positive");
    const auto stripped = [&](const std::vector<double>& lam) {
        double s = 0.0;
        for (double l : lam) s += l;
        return f(lam) * std::exp(decay * s);
    };
    const auto a = eig_sum(stripped, nu, n, order, decay);
    const auto b = eig_sum(stripped, nu, n, 2 * order, decay);
    QuadResult r{a.value, refinement(a, b), false};
    r.warning = r.rel_change > 1e-8;
    return r;
}

QuadResult invariant_integral(const EigenFunction& f, double nu, int n, int order, double decay) {
    QuadResult r = raw_eigenvalue_integral(f, nu, n, order, decay);
    r.value *= calibration_constant(n, nu, order);
    return r;
}

double calibration_constant(int n, double nu, int order) {
    check_nu(nu, n);
    static detail::Memo<std::tuple<int, double, int>, double> memo;
    return memo.get({n, nu, order}, [&] {
        const auto raw = eig_sum([](const std::vector<double>&) { return std::complex<double>(1.0); }, nu, n, order, 1.0);
        return gindikin_gamma(nu, n) / raw.value.real();
    });
}

QuadResult inner_product(const ExpPoly& f, const ExpPoly& g, double nu, int order) {
    if (f.n != g.n) throw DimensionError("inner_product rank mismatch");
    const int n = f.n;
    const HermCoords c(n);
    const auto diag = c.diagonal_restriction();
    const MultiPoly pf = f.p.remap(diag, n), pg = g.p.remap(diag, n);
    const auto integrand = [&](const std::vector<double>& lam) {
        return pf.evaluate(std::span<const double>(lam)) * std::conj(pg.evaluate(std::span<const double>(lam)));
    };
    return stripped_invariant(integrand, nu, n, order, 2.0);
}

// ---------------------------------------------------------------------------

TubePoint::TubePoint(CMatrix z) : z_(std::move(z)) {
    if (z_.rows() != z_.cols() || z_.rows() == 0) throw DimensionError("tube point must be square");
    const CMatrix x = 0.5 * (z_ + z_.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(x, Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues().minCoeff() > 0.0)) throw DomainError("tube point needs positive definite real part");
}

TubePoint TubePoint::scalar(int n, std::complex<double> z) {
    return TubePoint(CMatrix::Identity(n, n) * z);
}

LaplaceTransform::LaplaceTransform(ExpPoly f, double nu, const CMatrix& base, int order)
    : f_(std::move(f)), nu_(nu), n_(f_.n), order_(order) {
    check_nu(nu, n_);
    if (base.rows() != n_ || base.cols() != n_) throw DimensionError("Laplace base point has wrong size");
    if (!shifted_positive(base)) throw DomainError("Laplace transform needs Re z + I positive definite");
    if (order < 2) throw DomainError("quadrature order must be at least 2");
    decay_ = 1.0 + (0.5 * (base + base.adjoint())).trace().real() / n_;
}

std::pair<std::complex<double>, double> LaplaceTransform::tensor_sum(const CMatrix& z, int order) const {
    const int n = n_;
    const int m = n * (n - 1) / 2;
    const double c = decay_;
    std::vector<QuadratureRule> lag;
    for (int i = 1; i <= n; ++i) lag.push_back(gauss_laguerre(order, nu_ - i));
    const QuadratureRule herm = gauss_hermite(order);

    // Scale factors for decay c: Laguerre c^{−α−1}, Hermite c^{−1/2} per real direction.
    double scale = 1.0;
    for (int i = 1; i <= n; ++i) scale *= std::pow(c, -(nu_ - i) - 1.0);
    scale *= std::pow(c, -double(m));
    const double root_c = std::sqrt(c);

    const CMatrix shifted = z + CMatrix::Identity(n, n);
    const HermCoords coords(n);
    std::vector<int> sizes(n + 2 * m, order);
    std::vector<std::complex<double>> terms;
    terms.reserve(static_cast<std::size_t>(std::pow(order, n + 2 * m)));
    CMatrix T = CMatrix::Zero(n, n);
    odometer(sizes, [&](const std::vector<int>& idx) {
        double w = scale;
        for (int i = 0; i < n; ++i) {
            T(i, i) = std::sqrt(lag[i].nodes[idx[i]] / c);
            w *= lag[i].weights[idx[i]];
        }
        int d = n;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double re = herm.nodes[idx[d]] / root_c, im = herm.nodes[idx[d + 1]] / root_c;
                w *= herm.weights[idx[d]] * herm.weights[idx[d + 1]];
                T(i, j) = {re, im};
                d += 2;
            }
        const CMatrix s = T.adjoint() * T;
        const std::complex<double> expo = -(shifted * s).trace() + c * s.trace().real();
        const auto x = coords.coords_of(s);
        terms.push_back(w * std::exp(expo) * f_.p.evaluate(std::span<const double>(x)));
    });
    const Sum total = pairwise_sum(terms);
    return {total.value, total.magnitude};
}

QuadResult LaplaceTransform::operator()(const CMatrix& z) const {
    if (z.rows() != n_ || z.cols() != n_) throw DimensionError("Laplace argument has wrong size");
    if (!shifted_positive(z)) throw DomainError("Laplace transform needs Re z + I positive definite");

    if (n_ == 1) {
        using boost::math::quadrature::gauss_kronrod;
        const std::complex<double> w = z(0, 0) + 1.0;
        const auto integrand = [&](double t) {
            const double x[1] = {t};
            return std::exp(-w * t) * std::pow(t, nu_ - 1.0) * f_.p.evaluate(std::span<const double>(x, 1));
        };
        constexpr double inf = std::numeric_limits<double>::infinity();
        double err_re = 0.0, err_im = 0.0;
        const double re =
            gauss_kronrod<double, 61>::integrate([&](double t) { return integrand(t).real(); }, 0.0, inf, 20, 1e-13, &err_re);
        const double im =
            gauss_kronrod<double, 61>::integrate([&](double t) { return integrand(t).imag(); }, 0.0, inf, 20, 1e-13, &err_im);
        QuadResult r{{re, im}, 0.0, false};
        const double mag = std::abs(r.value);
        r.rel_change = mag == 0.0 ? std::hypot(err_re, err_im) : std::hypot(err_re, err_im) / mag;
        r.warning = r.rel_change > 1e-10;
        return r;
    }

    const auto [a, a_mag] = tensor_sum(z, order_);
    const auto [b, b_mag] = tensor_sum(z, std::max(2, order_ / 2));
    QuadResult r{a, refinement({a, a_mag}, {b, b_mag}), false};
    r.warning = r.rel_change > 1e-4;
    return r;
}

QuadResult laplace(const ExpPoly& f, const TubePoint& z, double nu, int order) {
    return LaplaceTransform(f, nu, z.matrix(), order)(z);
}

// ---------------------------------------------------------------------------

namespace {

// Five-point derivative of F along w; steps scaled so that |t·w| stays ≈ h.
std::complex<double> delta(const HoloFunction& F, const CMatrix& z, const CMatrix& w, double h) {
    const double t = h / std::max(1.0, w.norm());
    return (-F(z + 2 * t * w) + 8.0 * F(z + t * w) - 8.0 * F(z - t * w) + F(z - 2 * t * w)) / (12.0 * t);
}

std::complex<double> pi_value(const LieElement& x, double nu, const HoloFunction& F, const CMatrix& z, double h,
                              std::complex<double> Fz) {
    const int n = x.rank();
    const CMatrix I = CMatrix::Identity(n, n);
    switch (x.block()) {
        case Block::KC: {
            const CMatrix a = x.a().to_complex(), b = x.b().to_complex();
            const CMatrix w = z * b * z + z * a - a * z - b;
            std::complex<double> out = nu * (b * z).trace() * Fz;
            if (w.norm() > 0.0) out += delta(F, z, w, h);
            return out;
        }
        case Block::PPlus: {
            const CMatrix xm = x.x().to_complex();
            const CMatrix w = (I + z) * xm * (I + z);
            std::complex<double> out = -nu * (xm * (I + z)).trace() * Fz;
            if (w.norm() > 0.0) out -= delta(F, z, w, h);
            return out;
        }
        case Block::PMinus: {
            const CMatrix xm = x.x().to_complex();
            const CMatrix w = (z - I) * xm * (z - I);
            std::complex<double> out = nu * (xm * (z - I)).trace() * Fz;
            if (w.norm() > 0.0) out += delta(F, z, w, h);
            return out;
        }
    }
    return 0.0;
}

NumericEstimate pi_estimate(const std::vector<LieElement>& parts, double nu, const HoloFunction& F, const CMatrix& z,
                            double h) {
    if (!(h > 0.0)) throw DomainError("step must be positive");
    const std::complex<double> Fz = F(z);
    NumericEstimate e;
    for (const auto& p : parts) {
        if (p.rank() != z.rows()) throw DimensionError("pi_op: rank mismatch between X and z");
        e.base += pi_value(p, nu, F, z, h, Fz);
        e.value += pi_value(p, nu, F, z, 0.5 * h, Fz);
    }
    const double scale = std::max({std::abs(e.value), std::abs(e.base), std::abs(Fz)});
    e.refinement_gap = scale == 0.0 ? 0.0 : std::abs(e.value - e.base) / scale;
    e.warning = e.refinement_gap > 1e-6;
    return e;
}

}  // namespace

NumericEstimate pi_op(const LieElement& x, double nu, const HoloFunction& F, const CMatrix& z, double h) {
    return pi_estimate({x}, nu, F, z, h);
}

NumericEstimate pi_op(const ExactMatrix& x, double nu, const HoloFunction& F, const CMatrix& z, double h) {
    const auto parts = decompose(x);
    return pi_estimate({parts.begin(), parts.end()}, nu, F, z, h);
}

IntertwineResult intertwine_check(const ExactMatrix& x, const ExpPoly& f, const TubePoint& z, const Rational& nu,
                                  int order) {
    const double nu_d = nu.get_d();
    const LaplaceTransform Lf(f, nu_d, z.matrix(), order);
    bool quad_warning = false;
    const HoloFunction F = [&](const CMatrix& w) {
        const auto r = Lf(w);
        quad_warning = quad_warning || r.warning;
        return r.value;
    };
    const NumericEstimate lhs = pi_op(x, nu_d, F, z.matrix());
    const ExpPoly g = apply(lambda_op(x, nu), f);
    const QuadResult rhs = LaplaceTransform(g, nu_d, z.matrix(), order)(z);

    IntertwineResult r;
    r.lhs = lhs.value;
    r.rhs = rhs.value;
    const double scale = std::max({std::abs(r.lhs), std::abs(r.rhs), std::abs(Lf(z).value)});
    r.residual = scale == 0.0 ? 0.0 : std::abs(r.lhs - r.rhs) / scale;
    r.warning = lhs.warning || rhs.warning || quad_warning;
    return r;
}

double relative_error(std::complex<double> a, std::complex<double> b) { return rel_change(a, b); }

void to_json(nlohmann::json& j, const CheckRecord& r) {
    j = nlohmann::json{{"check", r.check},         {"params", r.params},       {"value", r.value},
                       {"reference", r.reference}, {"rel_error", r.rel_error}, {"tolerance", r.tolerance},
                       {"pass", r.pass}};
    if (r.skipped) j["skipped"] = true;
    if (!r.detail.empty()) j["detail"] = r.detail;
}

}  // namespace hermlag

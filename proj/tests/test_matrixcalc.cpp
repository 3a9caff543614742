#include <doctest.h>

#include <random>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "hermlag/combinatorics.hpp"
#include "hermlag/errors.hpp"
#include "hermlag/matrixcalc.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace hermlag;
using testing_support::coeffs1d;
using testing_support::exppoly1d;
using testing_support::random_exppoly;

namespace {

const Rational kNus[] = {Rational(3), Rational(7, 2), Rational(6)};

MultiPoly det_poly(int n) { return spherical_poly(Partition(std::vector<int>(n, 1)), n); }

std::complex<double> eval_at(const MultiPoly& p, const CMatrix& s) {
    const auto x = HermCoords(static_cast<int>(s.rows())).coords_of(s);
    return p.evaluate(std::span<const double>(x));
}

CMatrix random_pd(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
    return a * a.adjoint() + CMatrix::Identity(n, n);
}

ExactMatrix random_exact(int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(-3, 3);
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = GaussRational(Rational(d(rng)), Rational(d(rng)));
    return m;
}

// A spanning set of sl(2n) split by block.
std::vector<LieElement> spanning_set(int n) {
    std::vector<LieElement> out{LieElement::xi(n), LieElement::x_plus(n), LieElement::x_minus(n)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i != j) out.push_back(LieElement::k_c(ExactMatrix::unit(n, i, j), ExactMatrix::zero(n)));
            out.push_back(LieElement::k_c(ExactMatrix::zero(n), ExactMatrix::unit(n, i, j)));
            out.push_back(LieElement::p_plus(ExactMatrix::unit(n, i, j)));
            out.push_back(LieElement::p_minus(ExactMatrix::unit(n, i, j)));
        }
    if (n > 1) out.push_back(LieElement::k_c(ExactMatrix::unit(n, 0, 0) - ExactMatrix::unit(n, 1, 1), ExactMatrix::zero(n)));
    return out;
}

}  // namespace

TEST_CASE("d_entry on coordinates") {
    const HermCoords c1(1);
    const MultiPoly t = MultiPoly::variable(1, c1.t(0));
    CHECK(d_entry(0, 0, t, 1) == MultiPoly::constant(1, GaussRational(1)));
    const ExpPoly ft(1, t);
    CHECK(d_entry(0, 0, ft).p == MultiPoly::constant(1, GaussRational(1)) - t);

    const HermCoords c2(2);
    const MultiPoly u = MultiPoly::variable(4, c2.u(0, 1)), v = MultiPoly::variable(4, c2.v(0, 1));
    CHECK(d_entry(1, 0, u, 2) == MultiPoly::constant(4, GaussRational(Rational(1, 2))));
    CHECK(d_entry(1, 0, v, 2) == MultiPoly::constant(4, GaussRational(Rational(0), Rational(1, 2))));
    CHECK(d_entry(0, 1, v, 2) == MultiPoly::constant(4, GaussRational(Rational(0), Rational(-1, 2))));
    // D_{ij} s_{kl} = δ_{ik}δ_{jl}
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    CHECK(d_entry(i, j, c2.entry(k, l), 2) ==
                          MultiPoly::constant(4, GaussRational((i == k && j == l) ? 1 : 0)));
}

TEST_CASE("gradient examples") {
    for (int n = 1; n <= 3; ++n) {
        const HermCoords c(n);
        const MultiPoly p2 = powersum_poly(2, n), p1 = powersum_poly(1, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                CHECK(d_entry(j, i, p2, n) == c.entry(i, j) * GaussRational(2));
                CHECK(d_entry(j, i, p1, n) == MultiPoly::constant(n * n, GaussRational(i == j ? 1 : 0)));
            }
    }
    // ∇ det at diag(1,2) is diag(2,1)
    const CMatrix s = HermMatrix::diagonal({1, 2}).matrix();
    const MultiPoly det = det_poly(2);
    CHECK(std::abs(eval_at(d_entry(0, 0, det, 2), s) - 2.0) < 1e-14);
    CHECK(std::abs(eval_at(d_entry(1, 1, det, 2), s) - 1.0) < 1e-14);
    CHECK(std::abs(eval_at(d_entry(0, 1, det, 2), s)) < 1e-14);

    const auto g = gradient(ExpPoly::exp_trace(2));
    CHECK(g.size() == 4);
    CHECK(g[0].p == MultiPoly::constant(4, GaussRational(-1)));
    CHECK(g[1].is_zero());
}

TEST_CASE("directional derivative examples") {
    for (int n = 1; n <= 3; ++n) {
        const ExpPoly f = dir_derivative(ExactMatrix::identity(n), ExpPoly::exp_trace(n));
        CHECK(f.p == MultiPoly::constant(n * n, GaussRational(-n)));
    }
    MultiPoly dw(4);
    for (int i = 0; i < 2; ++i) dw += d_entry(i, i, det_poly(2), 2);
    CHECK(std::abs(eval_at(dw, HermMatrix::diagonal({1, 2}).matrix()) - 3.0) < 1e-14);
}

TEST_CASE("derivative of det^m along w is m det^m tr(s^{-1} w)") {
    std::mt19937_64 rng(3);
    for (int n = 2; n <= 3; ++n)
        for (int m = 1; m <= 3; ++m) {
            const MultiPoly dm = det_poly(n).pow(m);
            const ExactMatrix w = random_exact(n, rng);
            MultiPoly lhs(n * n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) lhs += d_entry(i, j, dm, n) * w(i, j);
            const CMatrix s = random_pd(n, rng);
            const std::complex<double> det = s.determinant();
            const std::complex<double> expected =
                static_cast<double>(m) * std::pow(det, m) * (s.inverse() * w.to_complex()).trace();
            const std::complex<double> got = eval_at(lhs, s);
            CHECK(std::abs(got - expected) <= 1e-9 * std::abs(expected));
        }
}

TEST_CASE("Euler operator counts degree") {
    for (int n = 1; n <= 3; ++n)
        for (const auto& m : enumerate_partitions(n, 4)) {
            const MultiPoly p = spherical_poly(m, n);
            CHECK(euler(p, n) == p * GaussRational(m.weight()));
        }
}

TEST_CASE("LieElement shapes") {
    CHECK_THROWS_AS(LieElement::k_c(ExactMatrix::identity(2), ExactMatrix::zero(2)), ShapeError);
    CHECK_THROWS_AS(LieElement::k_c(ExactMatrix::zero(2), ExactMatrix::zero(3)), ShapeError);
    const auto xi = LieElement::xi(2).matrix();
    CHECK(xi.trace().is_zero());
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 2;
        ExactMatrix a = random_exact(2 * n, rng);
        a(0, 0) -= a.trace();
        const auto parts = decompose(a);
        CHECK(parts[0].matrix() + parts[1].matrix() + parts[2].matrix() == a);
        CHECK(parts[0].block() == Block::KC);
        CHECK(parts[1].block() == Block::PPlus);
        CHECK(parts[2].block() == Block::PMinus);
    }
    ExactMatrix bad = ExactMatrix::identity(4);
    CHECK_THROWS_AS(decompose(bad), ShapeError);
}

TEST_CASE("lambda of xi on the exponential") {
    for (int n = 1; n <= 3; ++n)
        for (const auto& nu : kNus) {
            const ExpPoly f = apply(lambda_op(LieElement::xi(n), nu), ExpPoly::exp_trace(n));
            CHECK(f.p == MultiPoly::constant(n * n, GaussRational(nu * n)));
        }
}

TEST_CASE("Euler-shifted operator") {
    for (int n = 1; n <= 3; ++n) {
        const Rational nu(7, 2);
        const ExpPoly f = apply(euler_op(nu, n), ExpPoly::exp_trace(n));
        CHECK(f.p == MultiPoly::constant(n * n, GaussRational(nu * n)) - powersum_poly(1, n) * GaussRational(2));
        // E_ν = ½(λ(X⁻) − λ(X⁺)) as operators
        const LinDiffOp z = (lambda_op(LieElement::x_minus(n), nu) - lambda_op(LieElement::x_plus(n), nu)) *
                            GaussRational(Rational(1, 2));
        CHECK(z == euler_op(nu, n));
    }
    // identity zeroth-order operator
    LinDiffOp id(2);
    id.add_zeroth(MultiPoly::constant(4, GaussRational(1)));
    std::mt19937_64 rng(1);
    const ExpPoly f = random_exppoly(2, 3, rng);
    CHECK(apply(id, f) == f);
}

TEST_CASE("rank-one operators reduce to the classical second-order operators") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> d(-7, 7);
    for (const auto& nu : kNus)
        for (int trial = 0; trial < 6; ++trial) {
            oracle::Poly1 p(5);
            for (auto& x : p) x = oracle::frac(d(rng), 3);
            const ExpPoly f = exppoly1d(p);
            const auto xi = coeffs1d(apply(lambda_op(LieElement::xi(1), nu), f), 7);
            const auto xp = coeffs1d(apply(lambda_op(LieElement::x_plus(1), nu), f), 7);
            const auto xm = coeffs1d(apply(lambda_op(LieElement::x_minus(1), nu), f), 7);
            CHECK(oracle::same(xi, oracle::scale(oracle::D_zero(p, nu), -1)));
            CHECK(oracle::same(xp, oracle::scale(oracle::D_minus(p, nu), -1)));
            CHECK(oracle::same(xm, oracle::scale(oracle::D_plus(p, nu), -1)));
            // E_ν = 2tD + ν
            const auto e = coeffs1d(apply(euler_op(nu, 1), f), 7);
            const oracle::Poly1 expected = oracle::second_order(p, 0, 2, 0, 0, nu);
            CHECK(oracle::same(e, expected));
        }
}

TEST_CASE("named commutation relations hold exactly") {
    std::mt19937_64 rng(2024);
    const Rational nu(7, 2);
    const int n = 2;
    const auto Lxi = lambda_op(LieElement::xi(n), nu);
    const auto Lp = lambda_op(LieElement::x_plus(n), nu);
    const auto Lm = lambda_op(LieElement::x_minus(n), nu);
    for (int trial = 0; trial < 20; ++trial) {
        const ExpPoly f = random_exppoly(n, 3, rng);
        CHECK(commutator_apply(Lxi, Lp, f) == apply(Lp, f) * GaussRational(-2));
        CHECK(commutator_apply(Lxi, Lm, f) == apply(Lm, f) * GaussRational(2));
        CHECK(commutator_apply(Lp, Lm, f) == apply(Lxi, f) * GaussRational(4));
    }
}

TEST_CASE("lambda is a Lie algebra homomorphism on a spanning set") {
    std::mt19937_64 rng(77);
    for (int n = 1; n <= 2; ++n) {
        const Rational nu(3);
        const auto basis = spanning_set(n);
        const ExpPoly f = random_exppoly(n, 2, rng);
        for (std::size_t a = 0; a < basis.size(); ++a)
            for (std::size_t b = a + 1; b < basis.size(); ++b) {
                const auto bracket = commutator(basis[a].matrix(), basis[b].matrix());
                const ExpPoly lhs = commutator_apply(lambda_op(basis[a], nu), lambda_op(basis[b], nu), f);
                CHECK(lhs == apply(lambda_op(bracket, nu), f));
            }
    }
}

TEST_CASE("operator JSON dump") {
    const auto j = to_json(lambda_op(LieElement::xi(2), Rational(6)));
    CHECK(j["n"] == 2);
    CHECK(j["c2"].is_array());
    CHECK(!j["c2"].empty());
    CHECK(j["c1"].is_array());
}

TEST_CASE("finite-difference backend agrees with the exact operators") {
    std::mt19937_64 rng(8);
    for (int n = 1; n <= 2; ++n) {
        const std::vector<LieElement> xs{LieElement::xi(n), LieElement::x_plus(n), LieElement::x_minus(n)};
        for (const auto& x : xs) {
            const Rational nu(7, 2);
            const ExpPoly f = random_exppoly(n, 2, rng);
            const ExpPoly exact = apply(lambda_op(x, nu), f);
            for (int trial = 0; trial < 3; ++trial) {
                const HermMatrix s(random_pd(n, rng) * 0.5);
                const auto est = numeric_apply(
                    x, nu.get_d(), [&](const CMatrix& m) { return f.evaluate(HermMatrix(m)); }, s);
                const auto ref = exact.evaluate(s);
                CHECK(std::abs(est.value - ref) <= 1e-6 * std::max(std::abs(ref), std::abs(f.evaluate(s))));
            }
        }
    }
    CHECK_THROWS_AS(numeric_apply(LieElement::xi(2), 3.0, [](const CMatrix&) { return std::complex<double>(1); },
                                  HermMatrix::diagonal({1})),
                    DimensionError);
}

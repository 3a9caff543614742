#include "hermlag/laguerre.hpp"

#include <algorithm>
#include <tuple>

#include "hermlag/errors.hpp"
#include "memo.hpp"

namespace hermlag {

LaguerreFn laguerre_fn(const Partition& m_in, const Rational& nu, int n) {
    static detail::Memo<std::tuple<Partition, Rational, int>, LaguerreFn> memo;
    const Partition m = m_in.padded(n);
    return memo.get({m, nu, n}, [&] {
        const HermCoords c(n);
        const Rational top = pochhammer_cone(nu, m);
        MultiPoly p(c.size());
        for (const auto& [k, binom] : binomial_expansion(m, n)) {
            const Rational low = pochhammer_cone(nu, k);
            if (sgn(low) == 0)
                throw DomainError("Laguerre function " + m.to_string() + " has a pole at nu = " + to_string(nu));
            Rational coef = top * binom / low;
            if (k.weight() % 2) coef = -coef;
            coef *= Rational(mpz_class(1) << k.weight());
            p += spherical_poly(k, n) * GaussRational(coef);
        }
        return LaguerreFn{m, nu, n, ExpPoly(n, std::move(p))};
    });
}

std::map<Partition, GaussRational> laguerre_expand(const ExpPoly& f, const Rational& nu) {
    const int n = f.n;
    const HermCoords c(n);
    const auto diag = c.diagonal_restriction();
    MultiPoly rest = f.p.remap(diag, n);

    std::map<Partition, GaussRational> out;
    while (!rest.is_zero()) {
        const MultiPoly top = rest.homogeneous_part(rest.total_degree());
        const auto& [lead, lead_coef] = *top.terms().rbegin();
        std::vector<int> parts(lead.begin(), lead.begin() + n);
        if (!std::is_sorted(parts.begin(), parts.end(), std::greater<>()))
            throw SolveError("laguerre_expand: function is not L-invariant");
        const Partition k(parts);
        const MultiPoly ell = laguerre_fn(k, nu, n).body.p.remap(diag, n);
        const GaussRational coef = lead_coef / ell.coefficient(lead);
        out[k] += coef;
        rest -= ell * coef;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });

    if (laguerre_combination(out, nu, n) != f)
        throw SolveError("laguerre_expand: function is not in the span of the Laguerre functions");
    return out;
}

ExpPoly laguerre_combination(const std::map<Partition, GaussRational>& coefficients, const Rational& nu, int n) {
    ExpPoly out = ExpPoly::zero(n);
    for (const auto& [k, coef] : coefficients) out += laguerre_fn(k, nu, n).body * coef;
    return out;
}

Rational lowering_coefficient(const Partition& m_in, int j, const Rational& nu, int n) {
    const Partition m = m_in.padded(n);
    const auto lower = shift(m, j, -1);
    if (!lower) return 0;
    Rational out = -gen_binomial(m, *lower, n) * (m[j] - 1 + nu - j);
    out.canonicalize();
    return out;
}

std::string to_string(Relation r) {
    switch (r) {
        case Relation::Eigen: return "eigen";
        case Relation::Lower: return "lower";
        case Relation::Raise: return "raise";
        case Relation::Z: return "z";
    }
    return "?";
}

namespace {

RecursionReport make_report(Relation r, const Partition& m, const Rational& nu, int n) {
    RecursionReport rep;
    rep.relation = r;
    rep.m = m.padded(n);
    rep.nu = nu;
    rep.n = n;
    rep.residual = ExpPoly::zero(n);
    return rep;
}

}  // namespace

RecursionReport verify_eigen(const Partition& m, const Rational& nu, int n) {
    auto rep = make_report(Relation::Eigen, m, nu, n);
    const LaguerreFn ell = laguerre_fn(m, nu, n);
    const Rational eigenvalue = nu * n + 2 * rep.m.weight();
    rep.residual = apply(lambda_op(LieElement::xi(n), nu), ell.body) - ell.body * GaussRational(eigenvalue);
    rep.coefficients.push_back({rep.m, -1, GaussRational(eigenvalue)});
    return rep;
}

RecursionReport verify_lowering(const Partition& m, const Rational& nu, int n) {
    auto rep = make_report(Relation::Lower, m, nu, n);
    const LaguerreFn ell = laguerre_fn(m, nu, n);
    const ExpPoly lhs = apply(lambda_op(LieElement::x_plus(n), nu), ell.body) * GaussRational(Rational(-1, 2));

    std::map<Partition, GaussRational> formula;
    ExpPoly rhs = ExpPoly::zero(n);
    for (int j = 0; j < n; ++j) {
        const auto lower = shift(rep.m, j, -1);
        if (!lower) continue;
        const GaussRational coef(lowering_coefficient(rep.m, j, nu, n));
        rep.coefficients.push_back({*lower, j, coef});
        formula[*lower] += coef;
        rhs += laguerre_fn(*lower, nu, n).body * coef;
    }
    std::erase_if(formula, [](const auto& kv) { return kv.second.is_zero(); });
    rep.residual = lhs - rhs;

    try {
        rep.expansion = laguerre_expand(lhs, nu);
        if (rep.expansion != formula) {
            rep.structure_ok = false;
            rep.detail = "extracted lowering coefficients differ from the closed form";
        }
    } catch (const SolveError& e) {
        rep.structure_ok = false;
        rep.detail = e.what();
    }
    return rep;
}

RecursionReport extract_raising(const Partition& m, const Rational& nu, int n) {
    auto rep = make_report(Relation::Raise, m, nu, n);
    const LaguerreFn ell = laguerre_fn(m, nu, n);
    const ExpPoly lhs = apply(lambda_op(LieElement::x_minus(n), nu), ell.body) * GaussRational(Rational(1, 2));

    try {
        rep.expansion = laguerre_expand(lhs, nu);
    } catch (const SolveError& e) {
        rep.structure_ok = false;
        rep.detail = e.what();
        rep.residual = lhs;
        return rep;
    }

    ExpPoly rhs = ExpPoly::zero(n);
    for (int j = 0; j < n; ++j) {
        const auto upper = shift(rep.m, j, +1);
        if (!upper) continue;
        auto it = rep.expansion.find(*upper);
        const GaussRational coef = it == rep.expansion.end() ? GaussRational() : it->second;
        rep.coefficients.push_back({*upper, j, coef});
        rhs += laguerre_fn(*upper, nu, n).body * coef;
    }
    rep.residual = lhs - rhs;
    if (!rep.residual.is_zero()) rep.detail = "raising image leaves span{l_(m+gamma_j)}";
    return rep;
}

RecursionReport verify_Z(const Partition& m, const Rational& nu, int n) {
    return verify_Z(m, nu, n, verify_lowering(m, nu, n), extract_raising(m, nu, n));
}

RecursionReport verify_Z(const Partition& m, const Rational& nu, int n, const RecursionReport& lowering,
                         const RecursionReport& raising) {
    auto rep = make_report(Relation::Z, m, nu, n);
    const LaguerreFn ell = laguerre_fn(m, nu, n);
    const LinDiffOp e_nu = euler_op(nu, n);
    const ExpPoly lhs = apply(e_nu, ell.body);

    ExpPoly rhs = ExpPoly::zero(n);
    for (const auto* part : {&lowering, &raising})
        for (const auto& entry : part->coefficients) {
            rep.coefficients.push_back(entry);
            rhs += laguerre_fn(entry.target, nu, n).body * entry.value;
        }
    rep.residual = lhs - rhs;

    std::vector<std::string> problems;
    if (!lowering.verified()) problems.push_back("lowering relation failed");
    if (!raising.verified()) problems.push_back("raising relation failed");
    const int w = rep.m.weight();
    for (const auto& [k, c] : lowering.expansion)
        if (k.weight() != w - 1) problems.push_back("lowering image leaves level |m|-1");
    for (const auto& [k, c] : raising.expansion)
        if (k.weight() != w + 1) problems.push_back("raising image leaves level |m|+1");
    const GaussRational half(Rational(1, 2));
    const LinDiffOp z_op = (lambda_op(LieElement::x_minus(n), nu) - lambda_op(LieElement::x_plus(n), nu)) * half;
    if (!(z_op == e_nu)) problems.push_back("lambda(Z) differs from E_nu");
    rep.structure_ok = problems.empty();
    for (const auto& p : problems) rep.detail += (rep.detail.empty() ? "" : "; ") + p;
    return rep;
}

}  // namespace hermlag

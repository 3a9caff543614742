#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "hermlag/cli/app.hpp"
#include "hermlag/errors.hpp"
#include "hermlag/laguerre.hpp"

namespace hermlag::cli {

using nlohmann::json;

long PortableRng::uniform_int(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
}

double PortableRng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

ExpPoly random_exppoly(int n, int max_degree, PortableRng& rng, int terms) {
    const int nv = n * n;
    MultiPoly p(nv);
    for (int t = 0; t < terms; ++t) {
        Exponents e{};
        const int deg = static_cast<int>(rng.uniform_int(0, max_degree));
        for (int d = 0; d < deg; ++d) ++e[rng.uniform_int(0, nv - 1)];
        const Rational re(rng.uniform_int(-9, 9), rng.uniform_int(1, 4));
        const Rational im(rng.uniform_int(-9, 9), rng.uniform_int(1, 4));
        p.add_term(e, GaussRational(re, im));
    }
    return ExpPoly(n, std::move(p));
}

std::vector<CheckRecord> run_parallel(const std::vector<std::function<CheckRecord()>>& tasks) {
    std::vector<CheckRecord> out(tasks.size());
    std::atomic<std::size_t> next{0};
    const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), tasks.size()));
    auto work = [&] {
        for (std::size_t k; (k = next++) < tasks.size();) out[k] = tasks[k]();
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return out;
}

namespace {

json coefficient_json(const std::vector<CoefficientEntry>& entries) {
    json arr = json::array();
    for (const auto& e : entries) {
        json row{{"target", e.target.to_string()}, {"coefficient", to_string(e.value)}};
        row["j"] = e.j < 0 ? json(nullptr) : json(e.j + 1);
        arr.push_back(row);
    }
    return arr;
}

CheckRecord from_report(const std::string& check, const RecursionReport& rep) {
    CheckRecord r;
    r.check = check;
    r.params = {{"n", rep.n}, {"nu", to_string(rep.nu)}, {"m", rep.m.to_string()}};
    r.value = {{"residual_terms", rep.residual.p.size()}, {"coefficients", coefficient_json(rep.coefficients)}};
    r.reference = {{"residual_terms", 0}};
    r.rel_error = rep.verified() ? 0.0 : 1.0;
    r.tolerance = 0.0;
    r.pass = rep.verified();
    r.detail = rep.detail;
    return r;
}

CheckRecord skipped(const std::string& check, json params, const std::string& why) {
    CheckRecord r;
    r.check = check;
    r.params = std::move(params);
    r.pass = true;
    r.skipped = true;
    r.detail = why;
    return r;
}

CheckRecord numeric(const std::string& check, json params, std::complex<double> value, std::complex<double> reference,
                    double tolerance) {
    CheckRecord r;
    r.check = check;
    r.params = std::move(params);
    const auto cjson = [](std::complex<double> z) { return z.imag() == 0.0 ? json(z.real()) : json{z.real(), z.imag()}; };
    r.value = cjson(value);
    r.reference = cjson(reference);
    r.rel_error = relative_error(value, reference);
    r.tolerance = tolerance;
    r.pass = r.rel_error <= tolerance;
    return r;
}

std::vector<CheckRecord> recursion_suite(const std::string& suite, const RunConfig& cfg) {
    const Rational nu = parse_rational(cfg.nu);
    std::vector<std::function<CheckRecord()>> tasks;
    for (const auto& m : enumerate_partitions(cfg.n, cfg.max_weight)) {
        tasks.push_back([=, n = cfg.n] {
            try {
                if (suite == "eigen") return from_report(suite, verify_eigen(m, nu, n));
                if (suite == "lower") return from_report(suite, verify_lowering(m, nu, n));
                if (suite == "raise") return from_report(suite, extract_raising(m, nu, n));
                return from_report(suite, verify_Z(m, nu, n));
            } catch (const DomainError& e) {
                return skipped(suite, {{"n", n}, {"nu", to_string(nu)}, {"m", m.to_string()}}, e.what());
            }
        });
    }
    return run_parallel(tasks);
}

struct NamedElement {
    std::string name;
    ExactMatrix matrix;
};

// Spanning set of k_C ⊕ p⁺ ⊕ p⁻ built from H_i = E_ii − E_{i+1,i+1}, J_ij, K_ij and I.
std::vector<NamedElement> spanning_set(int n) {
    std::vector<std::pair<std::string, ExactMatrix>> basis;
    for (int i = 0; i + 1 < n; ++i)
        basis.emplace_back("H" + std::to_string(i + 1),
                           ExactMatrix::unit(n, i, i) - ExactMatrix::unit(n, i + 1, i + 1));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const std::string ij = std::to_string(i + 1) + std::to_string(j + 1);
            basis.emplace_back("J" + ij, ExactMatrix::unit(n, i, j) + ExactMatrix::unit(n, j, i));
            basis.emplace_back("K" + ij, (ExactMatrix::unit(n, i, j) - ExactMatrix::unit(n, j, i)) * GaussRational::i());
        }
    basis.emplace_back("I", ExactMatrix::identity(n));

    const ExactMatrix zero(n, n);
    std::vector<NamedElement> out;
    for (const auto& [name, m] : basis)
        if (m.trace().is_zero()) out.push_back({"kc(a=" + name + ")", LieElement::k_c(m, zero).matrix()});
    for (const auto& [name, m] : basis) out.push_back({"kc(b=" + name + ")", LieElement::k_c(zero, m).matrix()});
    for (const auto& [name, m] : basis) out.push_back({"p+(" + name + ")", LieElement::p_plus(m).matrix()});
    for (const auto& [name, m] : basis) out.push_back({"p-(" + name + ")", LieElement::p_minus(m).matrix()});
    return out;
}

CheckRecord operator_identity(const std::string& check, json params, const std::vector<ExpPoly>& samples,
                              const std::function<ExpPoly(const ExpPoly&)>& residual) {
    CheckRecord r;
    r.check = check;
    r.params = std::move(params);
    r.params["samples"] = samples.size();
    std::size_t bad = 0;
    for (const auto& f : samples)
        if (!residual(f).is_zero()) ++bad;
    r.value = {{"nonzero_residuals", bad}};
    r.reference = {{"nonzero_residuals", 0}};
    r.rel_error = bad == 0 ? 0.0 : 1.0;
    r.pass = bad == 0;
    return r;
}

std::vector<CheckRecord> homo_suite(const RunConfig& cfg) {
    const int n = cfg.n;
    const Rational nu = parse_rational(cfg.nu);
    PortableRng rng(cfg.seed);
    constexpr int kNamedSamples = 20, kPairSamples = 3;
    std::vector<ExpPoly> named;
    for (int k = 0; k < kNamedSamples; ++k) named.push_back(random_exppoly(n, 3, rng));

    const LinDiffOp l_xi = lambda_op(LieElement::xi(n), nu);
    const LinDiffOp l_plus = lambda_op(LieElement::x_plus(n), nu);
    const LinDiffOp l_minus = lambda_op(LieElement::x_minus(n), nu);
    const json base{{"n", n}, {"nu", to_string(nu)}};

    std::vector<std::function<CheckRecord()>> tasks;
    tasks.push_back([=] {
        json p = base;
        p["identity"] = "[xi,X+] = -2 X+";
        return operator_identity("homo", p, named, [&](const ExpPoly& f) {
            return commutator_apply(l_xi, l_plus, f) + apply(l_plus, f) * GaussRational(2);
        });
    });
    tasks.push_back([=] {
        json p = base;
        p["identity"] = "[xi,X-] = 2 X-";
        return operator_identity("homo", p, named, [&](const ExpPoly& f) {
            return commutator_apply(l_xi, l_minus, f) - apply(l_minus, f) * GaussRational(2);
        });
    });
    tasks.push_back([=] {
        json p = base;
        p["identity"] = "[X+,X-] = 4 xi";
        return operator_identity("homo", p, named, [&](const ExpPoly& f) {
            return commutator_apply(l_plus, l_minus, f) - apply(l_xi, f) * GaussRational(4);
        });
    });
    tasks.push_back([=] {
        json p = base;
        p["identity"] = "E_nu = (lambda(X-) - lambda(X+))/2";
        const LinDiffOp z = (l_minus - l_plus) * GaussRational(Rational(1, 2));
        const LinDiffOp e = euler_op(nu, n);
        return operator_identity("homo", p, named, [&](const ExpPoly& f) { return apply(z, f) - apply(e, f); });
    });

    const auto elements = spanning_set(n);
    for (std::size_t a = 0; a < elements.size(); ++a)
        for (std::size_t b = a + 1; b < elements.size(); ++b) {
            std::vector<ExpPoly> samples;
            for (int k = 0; k < kPairSamples; ++k) samples.push_back(random_exppoly(n, 3, rng));
            const NamedElement& x = elements[a];
            const NamedElement& y = elements[b];
            tasks.push_back([=] {
                json p = base;
                p["identity"] = "[lambda(X),lambda(Y)] = lambda([X,Y])";
                p["X"] = x.name;
                p["Y"] = y.name;
                const LinDiffOp lx = lambda_op(x.matrix, nu), ly = lambda_op(y.matrix, nu);
                const LinDiffOp lxy = lambda_op(commutator(x.matrix, y.matrix), nu);
                return operator_identity("homo", p, samples,
                                         [&](const ExpPoly& f) { return commutator_apply(lx, ly, f) - apply(lxy, f); });
            });
        }
    return run_parallel(tasks);
}

double factorial(int k) { return std::tgamma(k + 1.0); }

std::vector<CheckRecord> ortho_suite(const RunConfig& cfg) {
    const int n = cfg.n;
    const Rational nu = parse_rational(cfg.nu);
    const double nu_d = nu.get_d();
    if (!(nu_d > n - 1)) throw DomainError("ortho suite needs nu > n - 1");
    std::vector<LaguerreFn> basis;
    std::vector<CheckRecord> out;
    for (const auto& m : enumerate_partitions(n, cfg.max_weight)) {
        try {
            basis.push_back(laguerre_fn(m, nu, n));
        } catch (const DomainError& e) {
            out.push_back(skipped("ortho", {{"n", n}, {"nu", cfg.nu}, {"m", m.to_string()}}, e.what()));
        }
    }
    const int order = std::max(cfg.quad_order, cfg.max_weight + n + 2);
    const std::size_t B = basis.size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < B; ++a)
        for (std::size_t b = a; b < B; ++b) pairs.emplace_back(a, b);
    std::vector<std::complex<double>> gram(B * B);
    {
        std::vector<std::function<CheckRecord()>> compute;
        for (auto [a, b] : pairs)
            compute.push_back([&, a = a, b = b] {
                gram[a * B + b] = inner_product(basis[a].body, basis[b].body, nu_d, order).value;
                return CheckRecord{};
            });
        run_parallel(compute);
    }
    for (auto [a, b] : pairs) {
        const json params{{"n", n}, {"nu", cfg.nu}, {"m", basis[a].m.to_string()}, {"k", basis[b].m.to_string()}};
        const auto g = gram[a * B + b];
        if (a != b) {
            const double scale = std::sqrt(std::abs(gram[a * B + a]) * std::abs(gram[b * B + b]));
            CheckRecord r;
            r.check = "ortho";
            r.params = params;
            r.params["kind"] = "off-diagonal";
            r.value = g.real();
            r.reference = 0.0;
            r.rel_error = std::abs(g) / scale;
            r.tolerance = 1e-6;
            r.pass = r.rel_error <= r.tolerance;
            out.push_back(r);
        } else if (n == 1) {
            const int k = basis[a].m[0];
            const double ref = factorial(k) * std::tgamma(k + nu_d) / std::pow(2.0, nu_d);
            auto r = numeric("ortho", params, g, ref, 1e-10);
            r.params["kind"] = "norm m!Gamma(m+nu)/2^nu";
            out.push_back(r);
        } else if (basis[a].m.weight() == 0) {
            const double ref = gindikin_gamma(nu_d, n) / std::pow(2.0, n * nu_d);
            auto r = numeric("ortho", params, g, ref, 1e-8);
            r.params["kind"] = "norm Gamma_Omega(nu)/2^(n nu)";
            out.push_back(r);
        }
    }
    return out;
}

std::vector<CheckRecord> gamma_suite(const RunConfig& cfg) {
    const int n = cfg.n;
    const double nu = parse_rational(cfg.nu).get_d();
    if (!(nu > n - 1)) throw DomainError("gamma suite needs nu > n - 1");
    std::vector<std::function<CheckRecord()>> tasks;
    const json base{{"n", n}, {"nu", cfg.nu}};
    tasks.push_back([=] {
        if (n > 2) {
            json p = base;
            p["kind"] = "closed form vs defining integral";
            return skipped("gamma", p, "Cholesky tensor grid has order^(n^2) nodes; run at n <= 2");
        }
        const CMatrix zero = CMatrix::Zero(n, n);
        const auto q = LaplaceTransform(ExpPoly::exp_trace(n), nu, zero, cfg.quad_order)(zero);
        auto r = numeric("gamma", base, q.value, gindikin_gamma(nu, n), 1e-4);
        r.params["kind"] = "closed form vs defining integral";
        if (q.warning) r.detail = "quadrature refinement warning";
        return r;
    });
    tasks.push_back([=] {
        double ref = std::pow(std::numbers::pi, 0.5 * n * (n - 1));
        for (int j = 1; j <= n; ++j) ref /= factorial(j);
        auto r = numeric("gamma", base, calibration_constant(n, nu, cfg.quad_order), ref, 1e-10);
        r.params["kind"] = "calibration constant k_n";
        return r;
    });
    for (double shift : {1.0, 2.0})
        tasks.push_back([=] {
            json p = base;
            p["kind"] = "k_n independent of nu";
            p["nu_other"] = nu + shift;
            return numeric("gamma", p, calibration_constant(n, nu + shift, cfg.quad_order),
                           calibration_constant(n, nu, cfg.quad_order), 1e-10);
        });
    return run_parallel(tasks);
}

std::vector<CheckRecord> intertwine_suite(const RunConfig& cfg) {
    const int n = cfg.n;
    if (n > 2) throw DimensionError("intertwine suite supports n <= 2");
    const Rational nu = parse_rational(cfg.nu);
    if (!(nu.get_d() > n - 1)) throw DomainError("intertwine suite needs nu > n - 1");

    const ExactMatrix xi = LieElement::xi(n).matrix(), xp = LieElement::x_plus(n).matrix(),
                      xm = LieElement::x_minus(n).matrix();
    const std::vector<NamedElement> elements{
        {"xi", xi}, {"X+", xp}, {"X-", xm}, {"Z", (xm - xp) * GaussRational(Rational(1, 2))}};
    std::vector<std::complex<double>> points;
    double tol;
    int wmax;
    if (n == 1) {
        points = {1.5, {2.0, 1.0}};
        tol = 1e-7;
        wmax = cfg.max_weight;
    } else {
        points = {2.0};
        tol = 1e-3;
        wmax = std::min(cfg.max_weight, 1);
    }

    std::vector<std::function<CheckRecord()>> tasks;
    for (const auto& x : elements)
        for (const auto& m : enumerate_partitions(n, wmax))
            for (auto z : points)
                tasks.push_back([=] {
                    json params{{"n", n}, {"nu", to_string(nu)}, {"X", x.name}, {"m", m.to_string()},
                                {"z", z.imag() == 0.0 ? json(z.real()) : json{z.real(), z.imag()}}};
                    LaguerreFn f;
                    try {
                        f = laguerre_fn(m, nu, n);
                    } catch (const DomainError& e) {
                        return skipped("intertwine", params, e.what());
                    }
                    const auto res = intertwine_check(x.matrix, f.body, TubePoint::scalar(n, z), nu, cfg.quad_order);
                    CheckRecord r = numeric("intertwine", params, res.lhs, res.rhs, tol);
                    r.rel_error = res.residual;
                    r.pass = r.rel_error <= tol;
                    if (res.warning) r.detail = "numerical refinement warning";
                    return r;
                });
    return run_parallel(tasks);
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"eigen", "lower", "raise", "z", "homo", "ortho", "gamma", "intertwine"};
    return names;
}

std::vector<CheckRecord> run_suite(const std::string& suite, const RunConfig& cfg) {
    if (suite == "eigen" || suite == "lower" || suite == "raise" || suite == "z") return recursion_suite(suite, cfg);
    if (suite == "homo") return homo_suite(cfg);
    if (suite == "ortho") return ortho_suite(cfg);
    if (suite == "gamma") return gamma_suite(cfg);
    if (suite == "intertwine") return intertwine_suite(cfg);
    throw std::invalid_argument("unknown suite '" + suite + "'");
}

}  // namespace hermlag::cli

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hermlag/cli/app.hpp"
#include "hermlag/errors.hpp"
#include "hermlag/laguerre.hpp"

namespace hermlag::cli {

using nlohmann::json;

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string json_cell(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_float()) return fmt_double(j.get<double>());
    if (j.is_null()) return "";
    return j.dump();
}

json config_json(const RunConfig& cfg) {
    return {{"n", cfg.n},
            {"nu", to_string(parse_rational(cfg.nu))},
            {"max_weight", cfg.max_weight},
            {"quad_order", cfg.quad_order},
            {"seed", cfg.seed}};
}

void validate(const RunConfig& cfg) {
    if (cfg.n < 1 || cfg.n > 4) throw UsageError("--n must be between 1 and 4");
    if (cfg.max_weight < 0) throw UsageError("--max-weight must be non-negative");
    if (cfg.quad_order < 2) throw UsageError("--quad-order must be at least 2");
    try {
        parse_rational(cfg.nu);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--nu: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// verify

std::string render_report(const std::string& suite, const RunConfig& cfg, const std::vector<CheckRecord>& records) {
    std::size_t passed = 0, failed = 0, skipped = 0;
    for (const auto& r : records) {
        if (r.skipped) ++skipped;
        else if (r.pass) ++passed;
        else ++failed;
    }
    std::ostringstream os;
    switch (cfg.format) {
        case Format::Json: {
            json j{{"command", "verify"}, {"suite", suite},  {"seed", cfg.seed},
                   {"config", config_json(cfg)}, {"checks", records},
                   {"summary", {{"total", records.size()}, {"passed", passed}, {"failed", failed}, {"skipped", skipped}}}};
            os << j.dump(2) << "\n";
            break;
        }
        case Format::Csv: {
            os << "# verify " << suite << " seed=" << cfg.seed << " config=" << config_json(cfg).dump() << "\n";
            os << "check,params,value,reference,rel_error,tolerance,pass,skipped,detail\n";
            for (const auto& r : records)
                os << csv_quote(r.check) << ',' << csv_quote(r.params.dump()) << ',' << csv_quote(json_cell(r.value))
                   << ',' << csv_quote(json_cell(r.reference)) << ',' << fmt_double(r.rel_error) << ','
                   << fmt_double(r.tolerance) << ',' << (r.pass ? "true" : "false") << ','
                   << (r.skipped ? "true" : "false") << ',' << csv_quote(r.detail) << "\n";
            break;
        }
        case Format::Pretty: {
            os << "verify " << suite << "  seed=" << cfg.seed << "  " << config_json(cfg).dump() << "\n";
            for (const auto& r : records) {
                os << (r.skipped ? "SKIP " : r.pass ? "PASS " : "FAIL ") << r.check << ' ' << r.params.dump()
                   << "  rel_error=" << fmt_double(r.rel_error) << " tol=" << fmt_double(r.tolerance);
                if (!r.detail.empty()) os << "  (" << r.detail << ")";
                os << "\n";
            }
            os << records.size() << " checks: " << passed << " passed, " << failed << " failed, " << skipped
               << " skipped\n";
            break;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// eval

struct MatrixInput {
    int n = 0;
    bool exact = false;
    std::vector<GaussRational> exact_entries;
    CMatrix numeric;
};

Rational exact_component(const json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw UsageError("matrix entry is not rational");
}

MatrixInput read_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open matrix file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("malformed matrix JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("entries") || !j["n"].is_number_integer() ||
        !j["entries"].is_array())
        throw UsageError("matrix JSON needs integer \"n\" and array \"entries\"");
    MatrixInput m;
    m.n = j["n"].get<int>();
    if (m.n < 1 || m.n > 4) throw UsageError("matrix rank must be between 1 and 4");
    const auto& entries = j["entries"];
    if (entries.size() != static_cast<std::size_t>(m.n * m.n))
        throw UsageError("matrix JSON must have n*n entries");
    m.exact = true;
    for (const auto& e : entries) {
        if (!e.is_array() || e.size() != 2) throw UsageError("each entry must be a [re, im] pair");
        for (const auto& c : e) {
            if (!(c.is_number() || c.is_string())) throw UsageError("entry components must be numbers or strings");
            if (c.is_number_float()) m.exact = false;
        }
    }
    m.numeric = CMatrix(m.n, m.n);
    for (int k = 0; k < m.n * m.n; ++k) {
        const auto& e = entries[k];
        if (m.exact) {
            try {
                m.exact_entries.emplace_back(exact_component(e[0]), exact_component(e[1]));
            } catch (const std::invalid_argument& ex) {
                throw UsageError(std::string("matrix entry: ") + ex.what());
            }
            m.numeric(k / m.n, k % m.n) = m.exact_entries.back().to_complex();
        } else {
            const auto part = [](const json& c) {
                if (c.is_number()) return c.get<double>();
                try {
                    return parse_rational(c.get<std::string>()).get_d();
                } catch (const std::invalid_argument& ex) {
                    throw UsageError(std::string("matrix entry: ") + ex.what());
                }
            };
            m.numeric(k / m.n, k % m.n) = {part(e[0]), part(e[1])};
        }
    }
    return m;
}

std::string cmd_eval(const std::string& m_text, const std::string& nu_text, const std::string& path, Format format,
                     std::optional<int> requested_n) {
    const MatrixInput mat = read_matrix(path);
    const int n = mat.n;
    if (requested_n && *requested_n != n)
        throw UsageError("--n " + std::to_string(*requested_n) + " disagrees with the matrix rank " + std::to_string(n));
    Partition m;
    try {
        m = parse_partition(m_text, n);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--m: ") + e.what());
    }
    Rational nu;
    try {
        nu = parse_rational(nu_text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--nu: ") + e.what());
    }
    const LaguerreFn ell = laguerre_fn(m, nu, n);

    json out{{"command", "eval"}, {"m", m.to_string()}, {"nu", to_string(nu)}, {"n", n}};
    std::complex<double> value;
    std::string exact_form;
    if (mat.exact) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!(mat.exact_entries[i * n + j] == mat.exact_entries[j * n + i].conj()))
                    throw NotHermitianError("matrix is not Hermitian");
        const HermCoords c(n);
        const auto x = c.coords_of_exact(mat.exact_entries);
        const GaussRational poly = ell.body.p.evaluate(std::span<const GaussRational>(x));
        GaussRational trace;
        for (int i = 0; i < n; ++i) trace += mat.exact_entries[i * n + i];
        value = std::exp(-trace.to_complex()) * poly.to_complex();
        out["exact"] = {{"polynomial", to_string(poly)}, {"trace", to_string(trace)}};
        exact_form = "exp(-(" + to_string(trace) + ")) * (" + to_string(poly) + ")";
    } else {
        value = ell.body.evaluate(HermMatrix(mat.numeric));
    }
    out["value"] = {{"re", value.real()}, {"im", value.imag()}};

    std::ostringstream os;
    switch (format) {
        case Format::Json: os << out.dump(2) << "\n"; break;
        case Format::Csv:
            os << "m,nu,n,re,im,exact\n"
               << csv_quote(m.to_string()) << ',' << to_string(nu) << ',' << n << ',' << fmt_double(value.real()) << ','
               << fmt_double(value.imag()) << ',' << csv_quote(exact_form) << "\n";
            break;
        case Format::Pretty:
            os << "l^" << to_string(nu) << "_" << m.to_string() << "(s) = " << fmt_double(value.real());
            if (value.imag() != 0.0) os << (value.imag() < 0 ? " - " : " + ") << fmt_double(std::abs(value.imag())) << "i";
            if (!exact_form.empty()) os << "  = " << exact_form;
            os << "\n";
            break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// table

std::string cmd_table(const std::string& kind, const RunConfig& cfg) {
    const Rational nu = parse_rational(cfg.nu);
    const int n = cfg.n;
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
    const auto parts = enumerate_partitions(n, cfg.max_weight);
    if (kind == "binom") {
        columns = {"m", "k", "coefficient"};
        for (const auto& m : parts) {
            std::vector<Partition> ks;
            const auto expansion = binomial_expansion(m, n);
            for (const auto& [k, c] : expansion) ks.push_back(k);
            std::sort(ks.begin(), ks.end(), EnumerationOrder{});
            for (const auto& k : ks) rows.push_back({m.to_string(), k.to_string(), to_string(expansion.at(k))});
        }
    } else if (kind == "pochhammer") {
        columns = {"m", "nu", "coefficient"};
        for (const auto& m : parts) rows.push_back({m.to_string(), to_string(nu), to_string(pochhammer_cone(nu, m))});
    } else if (kind == "cmj" || kind == "lowering") {
        columns = {"m", "j", "coefficient"};
        std::vector<std::function<CheckRecord()>> tasks;
        std::vector<std::vector<std::vector<json>>> per_m(parts.size());
        for (std::size_t a = 0; a < parts.size(); ++a)
            tasks.push_back([&, a] {
                const Partition& m = parts[a];
                CheckRecord status;
                status.pass = true;
                try {
                    if (kind == "lowering") {
                        for (int j = 0; j < n; ++j)
                            if (shift(m, j, -1))
                                per_m[a].push_back({m.to_string(), j + 1, to_string(lowering_coefficient(m, j, nu, n))});
                    } else {
                        const auto rep = extract_raising(m, nu, n);
                        if (!rep.verified()) {
                            status.pass = false;
                            status.detail = "raising relation failed at m=" + m.to_string() + ": " + rep.detail;
                        }
                        for (const auto& c : rep.coefficients)
                            per_m[a].push_back({m.to_string(), c.j + 1, to_string(c.value)});
                    }
                } catch (const DomainError&) {
                    // pole: no row
                }
                return status;
            });
        for (const auto& s : run_parallel(tasks))
            if (!s.pass) throw SolveError(s.detail);
        for (auto& block : per_m)
            for (auto& row : block) rows.push_back(std::move(row));
    } else {
        throw UsageError("unknown table '" + kind + "'");
    }

    std::ostringstream os;
    switch (cfg.format) {
        case Format::Json: {
            json j{{"command", "table"}, {"table", kind}, {"config", config_json(cfg)}, {"rows", json::array()}};
            for (const auto& row : rows) {
                json obj;
                for (std::size_t c = 0; c < columns.size(); ++c) obj[columns[c]] = row[c];
                j["rows"].push_back(obj);
            }
            os << j.dump(2) << "\n";
            break;
        }
        case Format::Csv:
        case Format::Pretty: {
            const char sep = cfg.format == Format::Csv ? ',' : '\t';
            for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? std::string(1, sep) : "") << columns[c];
            os << "\n";
            for (const auto& row : rows) {
                for (std::size_t c = 0; c < row.size(); ++c) {
                    const std::string cell = json_cell(row[c]);
                    os << (c ? std::string(1, sep) : "") << (cfg.format == Format::Csv ? csv_quote(cell) : cell);
                }
                os << "\n";
            }
            break;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// dump-op

std::string cmd_dump_op(const std::string& element, const RunConfig& cfg) {
    const Rational nu = parse_rational(cfg.nu);
    const int n = cfg.n;
    LinDiffOp op(n);
    if (element == "xi") op = lambda_op(LieElement::xi(n), nu);
    else if (element == "x_plus") op = lambda_op(LieElement::x_plus(n), nu);
    else if (element == "x_minus") op = lambda_op(LieElement::x_minus(n), nu);
    else if (element == "z")
        op = (lambda_op(LieElement::x_minus(n), nu) - lambda_op(LieElement::x_plus(n), nu)) *
             GaussRational(Rational(1, 2));
    else if (element == "euler") op = euler_op(nu, n);
    else throw UsageError("unknown element '" + element + "'");
    json j{{"command", "dump-op"}, {"element", element}, {"nu", to_string(nu)}, {"operator", to_json(op)}};
    return j.dump(2) + "\n";
}

void emit(const std::string& text, const RunConfig& cfg, std::ostream& out) {
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + cfg.out + "'");
    f << text;
}

}  // namespace

Partition parse_partition(const std::string& text, int n) {
    std::vector<int> parts;
    std::string digits;
    const auto flush = [&] {
        if (!digits.empty()) parts.push_back(std::stoi(digits));
        digits.clear();
    };
    for (char c : text) {
        if (std::isdigit(static_cast<unsigned char>(c))) digits += c;
        else if (c == ',' || c == ' ' || c == '(' || c == ')') flush();
        else throw std::invalid_argument("bad partition '" + text + "'");
    }
    flush();
    if (parts.empty()) throw std::invalid_argument("empty partition");
    return Partition(parts).padded(n);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Matrix-argument Laguerre functions on positive Hermitian matrices"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format = "json";
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "rank")->capture_default_str();
        sub->add_option("--nu", cfg.nu, "parameter nu as p/q")->capture_default_str();
        sub->add_option("--max-weight", cfg.max_weight, "largest |m|")->capture_default_str();
        sub->add_option("--format", format, "json, csv or pretty")
            ->check(CLI::IsMember({"json", "csv", "pretty"}))
            ->capture_default_str();
        sub->add_option("--quad-order", cfg.quad_order, "quadrature order")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "seed for randomized checks")->capture_default_str();
        sub->add_option("--out", cfg.out, "write the report to FILE");
    };

    auto* eval = app.add_subcommand("eval", "evaluate l^nu_m at a Hermitian matrix");
    std::string m_text, matrix_path;
    eval->add_option("--m", m_text, "partition, e.g. 1,0")->required();
    eval->add_option("--matrix", matrix_path, "JSON matrix file")->required();
    add_common(eval);

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    std::vector<std::string> suites = suite_names();
    suites.push_back("all");
    verify->add_option("suite", suite, "suite")->required()->check(CLI::IsMember(suites));
    add_common(verify);

    auto* table = app.add_subcommand("table", "print an exact coefficient table");
    std::string kind;
    table->add_option("kind", kind, "binom, pochhammer, cmj or lowering")
        ->required()
        ->check(CLI::IsMember({"binom", "pochhammer", "cmj", "lowering"}));
    add_common(table);

    auto* dump = app.add_subcommand("dump-op", "print an operator's coefficients as JSON");
    std::string element;
    dump->add_option("element", element, "xi, x_plus, x_minus, z or euler")
        ->required()
        ->check(CLI::IsMember({"xi", "x_plus", "x_minus", "z", "euler"}));
    add_common(dump);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::ParseError& e) {
        std::ostringstream os;
        app.exit(e, os, err);
        return kUsage;
    }
    cfg.format = format == "csv" ? Format::Csv : format == "pretty" ? Format::Pretty : Format::Json;

    try {
        if (eval->parsed()) {
            emit(cmd_eval(m_text, cfg.nu, matrix_path, cfg.format,
                          eval->count("--n") ? std::optional<int>(cfg.n) : std::nullopt),
                 cfg, out);
            return kPass;
        }
        validate(cfg);
        if (table->parsed()) {
            emit(cmd_table(kind, cfg), cfg, out);
            return kPass;
        }
        if (dump->parsed()) {
            emit(cmd_dump_op(element, cfg), cfg, out);
            return kPass;
        }
        std::vector<CheckRecord> records;
        if (suite == "all") {
            for (const auto& s : suite_names()) {
                if (s == "intertwine" && cfg.n > 2) continue;
                auto part = run_suite(s, cfg);
                records.insert(records.end(), part.begin(), part.end());
            }
        } else {
            records = run_suite(suite, cfg);
        }
        emit(render_report(suite, cfg, records), cfg, out);
        for (const auto& r : records)
            if (!r.pass) return kFail;
        return kPass;
    } catch (const NotHermitianError& e) {
        err << "error: " << e.what() << "\n";
        return kData;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DimensionError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const SolveError& e) {
        err << "error: " << e.what() << "\n";
        return kFail;
    }
}

}  // namespace hermlag::cli

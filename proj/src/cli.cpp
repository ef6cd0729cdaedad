#include "niep3/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "niep3/bounds.hpp"
#include "niep3/conditions.hpp"
#include "niep3/construct.hpp"
#include "niep3/eigensolve.hpp"
#include "niep3/oracle.hpp"

namespace niep3 {
namespace cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

MatrixClass parse_class(const std::string& name) {
    if (name == "general") return MatrixClass::General;
    if (name == "symmetric") return MatrixClass::Symmetric;
    if (name == "stochastic") return MatrixClass::Stochastic;
    if (name == "symmetric-stochastic") return MatrixClass::SymmetricStochastic;
    if (name == "doubly-stochastic") return MatrixClass::DoublyStochastic;
    throw UsageError("--class: unknown class '" + name +
                     "' (expected general, symmetric, stochastic, "
                     "symmetric-stochastic or doubly-stochastic)");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_real(const std::string& tok, const std::string& flag) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw UsageError(flag + ": cannot parse number '" + tok + "'");
    }
}

// Accepts "x", "a+bi", "a-bi", "bi", "+i", "-i".
std::complex<double> parse_complex(const std::string& tok, const std::string& flag) {
    if (tok.empty()) throw UsageError(flag + ": empty component");
    if (tok.back() != 'i') return {parse_real(tok, flag), 0.0};

    const std::string body = tok.substr(0, tok.size() - 1);
    auto unit_sign = [](const std::string& s) -> std::optional<double> {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        return std::nullopt;
    };
    if (auto u = unit_sign(body)) return {0.0, *u};

    std::size_t pos = 0;
    double first;
    try {
        first = std::stod(body, &pos);
    } catch (const std::exception&) {
        throw UsageError(flag + ": cannot parse '" + tok + "'");
    }
    if (pos == body.size()) return {0.0, first};

    const std::string rest = body.substr(pos);
    if (auto u = unit_sign(rest)) return {first, *u};
    return {first, parse_real(rest, flag)};
}

Spectrum parse_spectrum(const std::string& literal, const Tolerance& tol) {
    const auto parts = split(literal, ',');
    if (parts.size() != 3)
        throw UsageError("--lambda: expected three comma-separated values");
    return canonicalize_spectrum({parse_complex(parts[0], "--lambda"),
                                  parse_complex(parts[1], "--lambda"),
                                  parse_complex(parts[2], "--lambda")},
                                 tol);
}

Spectrum parse_abc(const std::string& literal, const Tolerance& tol) {
    const auto parts = split(literal, ',');
    if (parts.size() != 3) throw UsageError("--abc: expected a,b,c");
    const double a = parse_real(parts[0], "--abc");
    const double b = parse_real(parts[1], "--abc");
    const double c = parse_real(parts[2], "--abc");
    if (c < 0.0) throw UsageError("--abc: c must be nonnegative");
    return canonicalize_spectrum({std::complex<double>(a), {b, c}, {b, -c}}, tol);
}

DiagonalTriple parse_diagonal(const std::string& literal) {
    const auto parts = split(literal, ',');
    if (parts.size() != 3)
        throw UsageError("--omega: expected three comma-separated reals");
    return canonicalize_diagonal(parse_real(parts[0], "--omega"),
                                 parse_real(parts[1], "--omega"),
                                 parse_real(parts[2], "--omega"));
}

json to_json(const Spectrum& s) {
    if (s.is_real())
        return json{{"kind", "real"}, {"lambda", {s.l1(), s.l2(), s.l3()}}};
    return json{{"kind", "complex-pair"}, {"a", s.a()}, {"b", s.b()}, {"c", s.c()}};
}

json to_json(const ConditionItem& it) {
    return json{{"label", it.label},         {"description", it.description},
                {"slack", it.slack},         {"satisfied", it.satisfied},
                {"equality", it.is_equality}, {"citation", it.citation}};
}

json to_json(const ConditionReport& rep) {
    json items = json::array();
    for (const auto& it : rep.items) items.push_back(to_json(it));
    return json{{"class", to_string(rep.cls)}, {"overall", rep.overall}, {"items", items}};
}

json to_json(const RealizabilityReport& rep) {
    json items = json::array();
    for (const auto& it : rep.items) items.push_back(to_json(it));
    return json{
        {"class", to_string(rep.cls)}, {"satisfied", rep.satisfied}, {"items", items}};
}

json to_json(const Matrix3& m) {
    json rows = json::array();
    for (int i = 0; i < 3; ++i) rows.push_back(json::array({m(i, 0), m(i, 1), m(i, 2)}));
    return rows;
}

json to_json(const BoundConstants& bc) {
    json j{{"L1", bc.L1}};
    j["L2"] = bc.L2 ? json(*bc.L2) : json(nullptr);
    j["L3"] = bc.L3 ? json(*bc.L3) : json(nullptr);
    j["U1"] = bc.U1 ? json(*bc.U1) : json(nullptr);
    j["U2"] = bc.U2 ? json(*bc.U2) : json(nullptr);
    return j;
}

json to_json(const VerificationReport& rep) {
    json classes = json::array();
    for (MatrixClass c : rep.classes_satisfied) classes.push_back(to_string(c));
    return json{{"eigen_residual", rep.eigen_residual},
                {"diagonal_match", rep.diagonal_match},
                {"spectrum_match", rep.spectrum_match},
                {"classes_satisfied", classes},
                {"row_sum_deviation", rep.row_sum_deviation},
                {"col_sum_deviation", rep.col_sum_deviation},
                {"symmetry_deviation", rep.symmetry_deviation},
                {"min_entry", rep.min_entry},
                {"computed_spectrum", to_json(rep.computed)}};
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Options {
    std::string cls_name;
    std::string lambda_literal;
    std::string abc_literal;
    std::string omega_literal;
    double omega1 = std::numeric_limits<double>::quiet_NaN();
    bool normalize = false;
    double tol_rel = 0.0;  // 0 = unset
    int grid = 0;
    std::uint64_t seed = 0;
    int trials = 10000;
    int kmax = 4;
    std::string out_path;
    std::string in_path;
};

Tolerance effective_tolerance(const Options& opt) {
    Tolerance tol;
    if (const char* env = std::getenv("NIEP3_TOL")) {
        try {
            tol.rel = std::stod(env);
        } catch (const std::exception&) {
            throw UsageError("NIEP3_TOL: cannot parse tolerance");
        }
    }
    if (opt.tol_rel > 0.0) tol.rel = opt.tol_rel;
    if (!(tol.rel > 0.0)) throw UsageError("--tol: tolerance must be positive");
    return tol;
}

Spectrum spectrum_from(const Options& opt, const Tolerance& tol) {
    if (!opt.lambda_literal.empty() && !opt.abc_literal.empty())
        throw UsageError("--lambda and --abc are mutually exclusive");
    if (!opt.lambda_literal.empty()) return parse_spectrum(opt.lambda_literal, tol);
    if (!opt.abc_literal.empty()) return parse_abc(opt.abc_literal, tol);
    throw UsageError("--lambda: a spectrum is required");
}

Matrix3 read_matrix(std::istream& in) {
    json j = json::parse(in);
    if (j.is_object() && j.contains("matrix")) j = j["matrix"];
    if (!j.is_array() || j.size() != 3)
        throw UsageError("matrix input must be a JSON array of 3 rows");
    std::array<std::array<double, 3>, 3> rows{};
    for (std::size_t i = 0; i < 3; ++i) {
        if (!j[i].is_array() || j[i].size() != 3)
            throw UsageError("matrix rows must hold 3 numbers");
        for (std::size_t k = 0; k < 3; ++k) rows[i][k] = j[i][k].get<double>();
    }
    return Matrix3::from_rows(rows);
}

int cmd_check(const Options& opt, std::ostream& out) {
    const Tolerance tol = effective_tolerance(opt);
    const Spectrum s = spectrum_from(opt, tol);
    if (opt.omega_literal.empty()) throw UsageError("--omega: a diagonal is required");
    const ConditionReport rep =
        check(parse_class(opt.cls_name), s, parse_diagonal(opt.omega_literal), tol);
    out << to_json(rep).dump(2) << "\n";
    return rep.overall ? 0 : 1;
}

int cmd_realizable(const Options& opt, std::ostream& out) {
    const Tolerance tol = effective_tolerance(opt);
    const Spectrum s = spectrum_from(opt, tol);
    const RealizabilityReport rep = realizable(parse_class(opt.cls_name), s, tol);

    json j = to_json(rep);
    if (opt.kmax >= 1) {
        const PowerSumDiagnostics diag = power_sum_diagnostics(s, opt.kmax, tol);
        json ps = json::array();
        for (const auto& e : diag.power_sums)
            ps.push_back(json{{"k", e.k}, {"value", e.value}, {"nonneg", e.nonneg}});
        json jll = json::array();
        for (const auto& e : diag.jll)
            jll.push_back(
                json{{"k", e.k}, {"m", e.m}, {"slack", e.slack}, {"holds", e.holds}});
        j["power_sums"] = ps;
        j["jll"] = jll;
    }
    out << j.dump(2) << "\n";
    return rep.satisfied ? 0 : 1;
}

int cmd_range(const Options& opt, std::ostream& out) {
    const Tolerance tol = effective_tolerance(opt);
    const Spectrum s = spectrum_from(opt, tol);
    const MatrixClass cls = parse_class(opt.cls_name);
    const Interval range = omega1_range(cls, s, tol);

    json j{{"class", to_string(cls)}, {"empty", range.empty}};
    if (!range.empty) {
        j["lo"] = range.lo;
        j["hi"] = range.hi;
    }
    j["constants"] = to_json(bound_constants(s, tol));

    int rc = range.empty ? 1 : 0;
    if (std::isfinite(opt.omega1)) {
        try {
            const DiagonalTriple d = canonical_completion(cls, s, opt.omega1, tol);
            j["completion"] = {d.w1(), d.w2(), d.w3()};
        } catch (const Error& e) {
            if (e.code() != Errc::OutOfRange) throw;
            j["completion"] = nullptr;
            j["completion_error"] = "omega1 outside the feasible range";
            rc = 1;
        }
    }
    out << j.dump(2) << "\n";
    return rc;
}

int cmd_construct(const Options& opt, std::ostream& out) {
    const Tolerance tol = effective_tolerance(opt);
    const Spectrum s = spectrum_from(opt, tol);
    const MatrixClass cls = parse_class(opt.cls_name);

    DiagonalTriple d = [&] {
        if (!opt.omega_literal.empty()) return parse_diagonal(opt.omega_literal);
        if (std::isfinite(opt.omega1)) return canonical_completion(cls, s, opt.omega1, tol);
        throw UsageError("--omega or --omega1 is required");
    }();

    const ConstructionResult res = construct(cls, s, d, tol);

    Matrix3 matrix = res.matrix;
    Spectrum claim = s;
    DiagonalTriple claim_diag = d;
    if (opt.normalize) {
        matrix = normalize_unit(res, s, tol);
        const double lam1 = s.perron();
        claim = s.is_real() ? Spectrum::real_triple(1.0, s.l2() / lam1, s.l3() / lam1)
                            : Spectrum::complex_pair(1.0, s.b() / lam1, s.c() / lam1);
        claim_diag = DiagonalTriple::of(d.w1() / lam1, d.w2() / lam1, d.w3() / lam1);
    }
    const VerificationReport ver = verify(matrix, claim, claim_diag, tol);

    json j{{"class", to_string(cls)},
           {"normalized", opt.normalize},
           {"lambda", to_json(claim)},
           {"omega", {claim_diag.w1(), claim_diag.w2(), claim_diag.w3()}},
           {"matrix", to_json(matrix)},
           {"auxiliaries", res.auxiliaries},
           {"verification", to_json(ver)}};
    out << j.dump(2) << "\n";
    return 0;
}

int cmd_verify(const Options& opt, std::ostream& out) {
    const Tolerance tol = effective_tolerance(opt);

    Matrix3 m = [&] {
        if (opt.in_path.empty() || opt.in_path == "-") return read_matrix(std::cin);
        std::ifstream f(opt.in_path);
        if (!f) throw UsageError("--in: cannot open '" + opt.in_path + "'");
        return read_matrix(f);
    }();

    std::optional<Spectrum> claim;
    if (!opt.lambda_literal.empty() || !opt.abc_literal.empty())
        claim = spectrum_from(opt, tol);
    std::optional<DiagonalTriple> claim_diag;
    if (!opt.omega_literal.empty()) claim_diag = parse_diagonal(opt.omega_literal);

    const VerificationReport rep = verify(m, claim, claim_diag, tol);
    out << to_json(rep).dump(2) << "\n";

    bool ok = rep.min_entry >= -tol.at(std::abs(rep.computed.perron()), 1);
    if (claim) ok = ok && rep.spectrum_match;
    if (claim_diag) ok = ok && rep.diagonal_match;
    if (!opt.cls_name.empty()) {
        const MatrixClass cls = parse_class(opt.cls_name);
        ok = ok && std::find(rep.classes_satisfied.begin(), rep.classes_satisfied.end(),
                             cls) != rep.classes_satisfied.end();
    }
    return ok ? 0 : 1;
}

int cmd_sweep(const Options& opt, std::ostream& out) {
    const Tolerance tol = effective_tolerance(opt);
    const int grid = opt.grid > 0 ? opt.grid : 100;
    if (grid < 2) throw UsageError("--grid: resolution must be at least 2");

    constexpr MatrixClass kClasses[] = {
        MatrixClass::General, MatrixClass::Symmetric, MatrixClass::Stochastic,
        MatrixClass::SymmetricStochastic, MatrixClass::DoublyStochastic};

    out << "lambda2,lambda3";
    for (MatrixClass c : kClasses) out << ",realizable_" << to_string(c);
    for (MatrixClass c : kClasses)
        out << ",lo_" << to_string(c) << ",hi_" << to_string(c);
    out << ",region_R,region_Q\n";

    // lambda1 = 1; the grid covers the parameter triangle
    // -1/2 <= lambda2 <= 1, -(2 + lambda2)/3 <= lambda3 <= lambda2.
    const double eps = 1e-12;
    struct Cell {
        int i, j;
        double l2, l3;
    };
    std::vector<Cell> cells;
    for (int i = 0; i <= grid; ++i) {
        const double l2 = -0.5 + 1.5 * i / grid;
        for (int j = 0; j <= grid; ++j) {
            const double l3 = -1.0 + 2.0 * j / grid;
            if (l3 <= l2 + eps && l3 >= -(2.0 + l2) / 3.0 - eps)
                cells.push_back({i, j, l2, l3});
        }
    }

    std::vector<std::string> rows(cells.size());
#pragma omp parallel for schedule(static)
    for (std::size_t n = 0; n < cells.size(); ++n) {
        const auto& cell = cells[n];
        const Spectrum s =
            Spectrum::real_triple(1.0, std::min(1.0, cell.l2), std::min(cell.l2, cell.l3));
        std::string row = fmt17(cell.l2) + "," + fmt17(cell.l3);
        for (MatrixClass c : kClasses)
            row += realizable(c, s, tol).satisfied ? ",1" : ",0";
        for (MatrixClass c : kClasses) {
            const Interval r = omega1_range(c, s, tol);
            row += r.empty ? ",," : "," + fmt17(r.lo) + "," + fmt17(r.hi);
        }
        row += std::string(",") + to_string(classify_region_R(s, tol));
        row += std::string(",") + to_string(classify_region_Q(s, tol));
        rows[n] = std::move(row);
    }
    for (const auto& row : rows) out << row << "\n";
    return 0;
}

int cmd_diagnose(const Options& opt, std::ostream& out) {
    const MatrixClass cls = parse_class(opt.cls_name);
    oracle::ScanConfig cfg;
    cfg.trials = opt.trials;
    cfg.seed = opt.seed;
    if (opt.grid > 0) cfg.grid_n = opt.grid;

    const oracle::NecessityResult nec = oracle::necessity_trial(cls, cfg);

    // Audit the closed-form range on spectra of genuine class members.
    int audits = 0;
    double max_gap = 0.0;
    for (int i = 0; i < 20; ++i) {
        const Matrix3 m = oracle::random_matrix(
            cls, 1.0, oracle::stream_seed(cfg.seed ^ 0x5EEDULL, static_cast<std::uint64_t>(i)));
        const Spectrum s = solve_cubic(char_poly(m));
        if (!s.is_real() &&
            (cls == MatrixClass::Symmetric || cls == MatrixClass::SymmetricStochastic))
            continue;
        if (!realizable(cls, s).satisfied) continue;
        const oracle::RangeAuditResult audit = oracle::range_audit(cls, s, cfg);
        max_gap = std::max(max_gap, audit.max_endpoint_gap);
        ++audits;
    }

    json failures = json::array();
    for (const auto& [idx, m] : nec.failures) {
        failures.push_back(json{{"trial", idx}, {"matrix", to_json(m)}});
        if (failures.size() >= 10) break;
    }
    json j{{"class", to_string(cls)},
           {"trials", nec.trials},
           {"failure_count", nec.failures.size()},
           {"failures", failures},
           {"range_audits", audits},
           {"max_endpoint_gap", max_gap}};
    out << j.dump(2) << "\n";
    return nec.failures.empty() ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"3x3 nonnegative inverse eigenvalue solver with prescribed diagonals"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub, bool need_class) {
        auto* c = sub->add_option("--class", opt.cls_name,
                                  "matrix class: general, symmetric, stochastic, "
                                  "symmetric-stochastic, doubly-stochastic");
        if (need_class) c->required();
        sub->add_option("--tol", opt.tol_rel, "relative tolerance (default 1e-9)");
        sub->add_option("--out", opt.out_path, "write output to a file");
        return sub;
    };
    auto add_spectrum = [&](CLI::App* sub) {
        sub->add_option("--lambda", opt.lambda_literal,
                        "spectrum: x,y,z or a,b+ci,b-ci");
        sub->add_option("--abc", opt.abc_literal, "spectrum in a,b,c form");
    };

    auto* sc_check = add_common(app.add_subcommand("check", "evaluate feasibility conditions"), true);
    add_spectrum(sc_check);
    sc_check->add_option("--omega", opt.omega_literal, "diagonal: x,y,z");

    auto* sc_real = add_common(
        app.add_subcommand("realizable", "eigenvalue-only realizability"), true);
    add_spectrum(sc_real);
    sc_real->add_option("--kmax", opt.kmax,
                        "max power-sum order for the diagnostics block (default 4)");

    auto* sc_range =
        add_common(app.add_subcommand("range", "feasible interval for the largest "
                                               "diagonal entry"), true);
    add_spectrum(sc_range);
    sc_range->add_option("--omega1", opt.omega1, "also emit the canonical completion");

    auto* sc_construct =
        add_common(app.add_subcommand("construct", "build a realizing matrix"), true);
    add_spectrum(sc_construct);
    sc_construct->add_option("--omega", opt.omega_literal, "diagonal: x,y,z");
    sc_construct->add_option("--omega1", opt.omega1,
                             "largest diagonal entry; the rest is completed");
    sc_construct->add_flag("--normalize", opt.normalize,
                           "rescale so the Perron root is 1");

    auto* sc_verify = add_common(
        app.add_subcommand("verify", "verify a matrix read from file or stdin"), false);
    add_spectrum(sc_verify);
    sc_verify->add_option("--in", opt.in_path, "matrix file (JSON; '-' for stdin)");
    sc_verify->add_option("--omega", opt.omega_literal, "claimed diagonal");

    auto* sc_sweep = add_common(
        app.add_subcommand("sweep", "CSV sweep of the parameter triangle at lambda1=1"),
        false);
    sc_sweep->add_option("--grid", opt.grid, "grid resolution (default 100)");

    auto* sc_diag = add_common(
        app.add_subcommand("diagnose", "necessity trials plus range audit"), true);
    sc_diag->add_option("--trials", opt.trials, "necessity trials (default 10000)");
    sc_diag->add_option("--seed", opt.seed, "RNG seed");
    sc_diag->add_option("--grid", opt.grid, "scan grid resolution");
    sc_diag->add_option("--kmax", opt.kmax, "max power-sum order in reports");

    std::vector<const char*> argv;
    argv.push_back("niep3");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    std::ofstream file_out;
    std::ostream* sink = &out;
    if (!opt.out_path.empty()) {
        file_out.open(opt.out_path);
        if (!file_out) {
            err << "error: --out: cannot open '" << opt.out_path << "'\n";
            return 2;
        }
        sink = &file_out;
    }

    try {
        if (sc_check->parsed()) return cmd_check(opt, *sink);
        if (sc_real->parsed()) return cmd_realizable(opt, *sink);
        if (sc_range->parsed()) return cmd_range(opt, *sink);
        if (sc_construct->parsed()) return cmd_construct(opt, *sink);
        if (sc_verify->parsed()) return cmd_verify(opt, *sink);
        if (sc_sweep->parsed()) return cmd_sweep(opt, *sink);
        if (sc_diag->parsed()) return cmd_diagnose(opt, *sink);
        err << "error: no subcommand given\n";
        return 2;
    } catch (const InfeasibleError& e) {
        json j{{"error", "infeasible"}, {"report", to_json(e.report())}};
        *sink << j.dump(2) << "\n";
        return 1;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        switch (e.code()) {
            case Errc::OutOfRange:
            case Errc::EmptyRange:
                err << "infeasible: " << e.what() << "\n";
                return 1;
            default:
                err << "error: " << e.what() << "\n";
                return 2;
        }
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace cli
}  // namespace niep3

// m24rad: exact McKay-Thompson coefficients, decompositions, Rademacher
// verification and numeric diagnostics.
#include <cmath>
#include <cstdio>
#include <iostream>
#include <regex>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "m24rad/m24rad.hpp"

using namespace m24rad;

namespace {

enum Exit { ok = 0, check_failed = 1, bad_input = 2 };

struct Global {
    std::string format = "json";
    long precision = 128;
    unsigned threads = 1;
};

Cx<double> parse_complex(const std::string& s) {
    static const std::regex re(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?:([+-]?(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)i)?\s*$)");
    std::smatch m;
    if (s.empty() || !std::regex_match(s, m, re) || (!m[1].matched && !m[2].matched))
        throw std::invalid_argument("cannot parse complex number: " + s);
    double re_part = m[1].matched ? std::stod(m[1].str()) : 0.0;
    double im_part = 0.0;
    if (m[2].matched) {
        std::string t = m[2].str();
        if (t.empty() || t == "+") im_part = 1.0;
        else if (t == "-") im_part = -1.0;
        else im_part = std::stod(t);
    }
    return {re_part, im_part};
}

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<const ClassRecord*> pick_classes(const std::vector<std::string>& names, bool all) {
    std::vector<const ClassRecord*> out;
    if (all) {
        for (auto& c : all_classes()) out.push_back(&c);
        return out;
    }
    for (auto& n : names) out.push_back(&class_data(n));
    return out;
}

int cmd_coeffs(const Global& g, const std::vector<std::string>& names, bool all, const std::string& kind_s,
               long order) {
    if (order < 1) throw std::invalid_argument("--order must be positive");
    SeriesKind kind = parse_kind(kind_s);
    auto classes = pick_classes(names, all);
    if (classes.empty()) throw std::invalid_argument("give --class or --all");
    std::vector<std::vector<Rat>> cols;
    if (all) {
        cols = series_table(kind, order);
    } else {
        std::optional<PSeries> h;
        if (kind == SeriesKind::hg) h = h_series(row_exponent(kind, order) + Rat(1));
        for (auto* c : classes) cols.push_back(series_column(kind, *c, order, h ? &*h : nullptr));
    }
    if (g.format == "csv") {
        std::vector<std::string> head{"exponent"};
        for (auto* c : classes) head.push_back(c->name);
        csv_row(std::cout, head);
        for (long r = 0; r < order; ++r) {
            std::vector<std::string> row{rat_str(row_exponent(kind, r))};
            for (auto& col : cols) row.push_back(rat_str(col[r]));
            csv_row(std::cout, row);
        }
        return ok;
    }
    Json out{{"kind", kind_name(kind)}, {"rows", order}, {"columns", Json::array()}};
    for (std::size_t i = 0; i < classes.size(); ++i) {
        Json terms = Json::array();
        for (long r = 0; r < order; ++r) terms.push_back(term_record(row_exponent(kind, r), cols[i][r]));
        out["columns"].push_back({{"class", classes[i]->name}, {"terms", terms}});
    }
    emit(out);
    return ok;
}

int cmd_decompose(const Global& g, const std::string& kind_s, long rows) {
    if (rows < 1) throw std::invalid_argument("--rows must be positive");
    SeriesKind kind = parse_kind(kind_s);
    auto dec = decompose_table(series_table(kind, rows));
    const auto& names = character_table().names;
    bool bad = false;
    for (auto& d : dec) bad = bad || !d.integral || (kind == SeriesKind::etainv && !d.nonnegative);
    if (g.format == "csv") {
        std::vector<std::string> head{"row", "exponent"};
        head.insert(head.end(), names.begin(), names.end());
        head.push_back("integral");
        head.push_back("nonnegative");
        csv_row(std::cout, head);
        for (std::size_t r = 0; r < dec.size(); ++r) {
            std::vector<std::string> row{std::to_string(r), rat_str(row_exponent(kind, static_cast<long>(r)))};
            for (auto& m : dec[r].multiplicity) row.push_back(rat_str(m));
            row.push_back(dec[r].integral ? "true" : "false");
            row.push_back(dec[r].nonnegative ? "true" : "false");
            csv_row(std::cout, row);
        }
    } else {
        Json out{{"kind", kind_name(kind)}, {"rows", Json::array()}};
        for (std::size_t r = 0; r < dec.size(); ++r) {
            Json ms = Json::array();
            for (std::size_t i = 0; i < names.size(); ++i) {
                Json m = rat_to_json(dec[r].multiplicity[i]);
                m["character"] = names[i];
                ms.push_back(m);
            }
            out["rows"].push_back({{"row", r},
                                   {"exponent", rat_to_json(row_exponent(kind, static_cast<long>(r)))},
                                   {"multiplicities", ms},
                                   {"integral", dec[r].integral},
                                   {"nonnegative", dec[r].nonnegative}});
        }
        emit(out);
    }
    if (bad) {
        std::cerr << "decompose: non-integral or negative multiplicity\n";
        return check_failed;
    }
    return ok;
}

int cmd_verify(const Global& g, const std::vector<std::string>& names, bool all, long kmax, long cmax, long cmin,
               double tol) {
    auto classes = pick_classes(names, all);
    if (classes.empty()) throw std::invalid_argument("give --class or --all");
    if (kmax < 1) throw std::invalid_argument("--kmax must be positive");
    if (!(tol > 0 && tol < 0.5)) throw std::invalid_argument("--tol must lie in (0, 0.5)");
    if (cmax > 100000) throw std::invalid_argument("--cmax is capped at 100000");
    for (auto* c : classes)
        if (cmax < c->n) throw std::invalid_argument("--cmax must be at least the level of " + c->name);
    VerifyOptions opt;
    opt.c_max = cmax;
    opt.c_min = cmin;
    opt.tol = tol;
    opt.threads = g.threads;
    bool pass = true;
    Json out = Json::array();
    if (g.format == "csv")
        csv_row(std::cout, {"class", "k", "c_max", "value_re", "value_im", "target", "pass"});
    for (auto* c : classes) {
        VerifyReport rep = verify_theorem(*c, kmax, opt);
        pass = pass && rep.pass();
        Json j = report_to_json(rep);
        if (g.format == "csv") {
            for (auto& e : j)
                csv_row(std::cout, {e["class"].get<std::string>(), std::to_string(e["k"].get<long>()),
                                    std::to_string(e["c_max"].get<long>()), e["value_re"].get<std::string>(),
                                    e["value_im"].get<std::string>(), e["target"].dump(),
                                    e["pass"].get<bool>() ? "true" : "false"});
        } else {
            for (auto& e : j) out.push_back(e);
        }
    }
    if (g.format != "csv") emit(out);
    std::cerr << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? ok : check_failed;
}

int cmd_zeta(const Global& g, long n, long h, long cmax, long m, long l) {
    GroupCtx ctx(n, h);
    if (cmax < n) throw std::invalid_argument("--cmax must be at least n");
    auto pts = zeta_partial(ctx, m, l, cmax, g.threads);
    Json out{{"n", n}, {"h", h}, {"m", m}, {"l", l}, {"points", Json::array()}};
    if (g.format == "csv") csv_row(std::cout, {"C", "value_re", "value_im", "increment"});
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::string inc = i ? full_digits((pts[i].value - pts[i - 1].value).abs()) : "";
        if (g.format == "csv") {
            csv_row(std::cout, {std::to_string(pts[i].C), full_digits(pts[i].value.re), full_digits(pts[i].value.im),
                                inc});
        } else {
            out["points"].push_back({{"C", pts[i].C},
                                     {"value_re", full_digits(pts[i].value.re)},
                                     {"value_im", full_digits(pts[i].value.im)},
                                     {"increment", i ? Json(inc) : Json(nullptr)}});
        }
    }
    if (g.format != "csv") emit(out);
    return ok;
}

int cmd_jacobi(const Global& g, const std::string& tau_s, const std::string& z_s, long order) {
    Cx<double> t = parse_complex(tau_s), zz = parse_complex(z_s);
    if (!(t.im > 0)) throw std::invalid_argument("--tau must have positive imaginary part");
    JacobiPoint<BigReal> p{Cx<BigReal>(BigReal(t.re), BigReal(t.im)), Cx<BigReal>(BigReal(zz.re), BigReal(zz.im))};
    PSeries h = h_series(Rat(order));
    BigReal res = jacobi_residual(p, h);
    JacobiPoint<BigReal> p0{p.tau, Cx<BigReal>(BigReal(0))};
    BigReal z0 = (z_jacobi_numeric(p0) - Cx<BigReal>(BigReal(24))).abs();
    if (g.format == "csv") {
        csv_row(std::cout, {"tau", "z", "order", "residual", "z0_minus_24"});
        csv_row(std::cout, {tau_s, z_s, std::to_string(order), full_digits(res), full_digits(z0)});
    } else {
        emit({{"tau", tau_s}, {"z", z_s}, {"order", order}, {"residual", full_digits(res)},
              {"z0_minus_24", full_digits(z0)}});
    }
    return ok;
}

int cmd_direct(const Global& g, long n, long h, long K, const std::string& tau_s, long cmax, long kmax) {
    GroupCtx ctx(n, h);
    Cx<double> tau = parse_complex(tau_s);
    if (!(tau.im > 0)) throw std::invalid_argument("--tau must have positive imaginary part");
    if (K < 1) throw std::invalid_argument("--K must be positive");
    // q^{-1/8} + sum_k c(k - 1/8) q^{k - 1/8}
    Cx<double> ref = e_of(tau * -0.125);
    std::vector<long> ks;
    for (long k = 1; k <= kmax; ++k) ks.push_back(k);
    for (auto& est : coefficient_estimates(ctx, CoeffKind::holomorphic, ks, cmax, g.threads)) {
        Cx<double> c(to_double(est.value.re), to_double(est.value.im));
        ref += c * e_of(tau * ((8.0 * static_cast<double>(est.k) - 1) / 8));
    }
    std::vector<long> Ks;
    for (long k : {K / 4, K / 2, K})
        if (k >= 1 && (Ks.empty() || Ks.back() != k)) Ks.push_back(k);
    Json out{{"n", n}, {"h", h}, {"tau", tau_s}, {"reference_re", fmt_double(ref.re)},
             {"reference_im", fmt_double(ref.im)}, {"rows", Json::array()}};
    if (g.format == "csv") csv_row(std::cout, {"K", "direct_re", "direct_im", "discrepancy"});
    for (long k : Ks) {
        Cx<double> v = rademacher_direct(ctx, tau, k);
        double disc = (v - ref).abs();
        if (g.format == "csv") {
            csv_row(std::cout, {std::to_string(k), fmt_double(v.re), fmt_double(v.im), fmt_double(disc)});
        } else {
            out["rows"].push_back({{"K", k}, {"direct_re", fmt_double(v.re)}, {"direct_im", fmt_double(v.im)},
                                   {"discrepancy", fmt_double(disc)}});
        }
    }
    if (g.format != "csv") emit(out);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mathieu moonshine: McKay-Thompson series and Rademacher sums"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--precision", g.precision, "working precision in bits")
        ->envname("M24RAD_PRECISION")
        ->check(CLI::Range(53L, 4096L))
        ->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads for Kloosterman sums")
        ->envname("M24RAD_THREADS")
        ->check(CLI::Range(1u, 256u))
        ->capture_default_str();

    std::vector<std::string> classes;
    bool all = false;
    std::string kind = "hg";
    long order = 10;
    auto* coeffs = app.add_subcommand("coeffs", "exact H_g or 1/eta_g coefficients");
    coeffs->add_option("--class", classes, "class label, repeatable");
    coeffs->add_flag("--all", all, "all 26 classes");
    coeffs->add_option("--kind", kind, "hg or etainv")->check(CLI::IsMember({"hg", "etainv"}))->capture_default_str();
    coeffs->add_option("--order", order, "number of rows")->capture_default_str();

    long rows = 10;
    auto* decomp = app.add_subcommand("decompose", "multiplicities of irreducible characters per row");
    decomp->add_option("--kind", kind, "hg or etainv")->check(CLI::IsMember({"hg", "etainv"}))->capture_default_str();
    decomp->add_option("--rows", rows, "number of rows")->capture_default_str();

    long kmax = 5, cmax = 20000, cmin = 512;
    double tol = 0.4;
    auto* verify = app.add_subcommand("verify", "compare -2 c(k - 1/8) with the H_g coefficients");
    verify->add_option("--class", classes, "class label, repeatable");
    verify->add_flag("--all", all, "all 26 classes");
    verify->add_option("--kmax", kmax, "largest k")->capture_default_str();
    verify->add_option("--cmax", cmax, "cap on the c truncation")->capture_default_str();
    verify->add_option("--cmin", cmin, "first checkpoint considered")->capture_default_str();
    verify->add_option("--tol", tol, "rounding tolerance")->capture_default_str();

    auto* diag = app.add_subcommand("diag", "numeric diagnostics");
    diag->require_subcommand(1);
    diag->fallthrough();
    long n = 1, h = 1, m = 0, l = 1, K = 100, dcmax = 4096, jorder = 12, dkmax = 6;
    std::string tau = "0+1i", z = "0.31";
    auto* zeta = diag->add_subcommand("zeta", "dyadic partial sums of sum_c S(m, l, c) / c^{3/2}");
    zeta->set_help_flag("--help", "print this help message and exit");
    zeta->add_option("--n", n)->capture_default_str();
    zeta->add_option("--h", h)->capture_default_str();
    zeta->add_option("--cmax", dcmax)->capture_default_str();
    zeta->add_option("--m", m)->capture_default_str();
    zeta->add_option("--l", l)->capture_default_str();
    auto* jac = diag->add_subcommand("jacobi", "residual of Z eta^3 = theta_1^2 (24 mu + H)");
    jac->add_option("--tau", tau)->capture_default_str();
    jac->add_option("--z", z)->capture_default_str();
    jac->add_option("--order", jorder, "truncation order of H")->capture_default_str();
    auto* direct = diag->add_subcommand("direct", "direct Rademacher sum against the coefficient series");
    direct->set_help_flag("--help", "print this help message and exit");
    direct->add_option("--n", n)->capture_default_str();
    direct->add_option("--h", h)->capture_default_str();
    direct->add_option("--K", K)->capture_default_str();
    direct->add_option("--tau", tau)->capture_default_str();
    direct->add_option("--cmax", dcmax, "truncation of the reference coefficients")->capture_default_str();
    direct->add_option("--kmax", dkmax, "reference coefficients used")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : bad_input;
    }

    try {
        PrecisionScope prec(static_cast<mpfr_prec_t>(g.precision));
        if (coeffs->parsed()) return cmd_coeffs(g, classes, all, kind, order);
        if (decomp->parsed()) return cmd_decompose(g, kind, rows);
        if (verify->parsed()) return cmd_verify(g, classes, all, kmax, cmax, cmin, tol);
        if (zeta->parsed()) return cmd_zeta(g, n, h, dcmax, m, l);
        if (jac->parsed()) return cmd_jacobi(g, tau, z, jorder);
        if (direct->parsed()) return cmd_direct(g, n, h, K, tau, dcmax, dkmax);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bad_input;
    }
    return bad_input;
}

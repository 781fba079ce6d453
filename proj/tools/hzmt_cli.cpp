// Command line front end.  Four subcommands: eval (one function, one point),
// verify (identity suite on a grid), laurent (pole expansion data with a
// slope diagnostic), scan (sweep a parameter, one row per point).  Numeric
// work is dispatched at runtime to a binary64, 30 digit, or 50 digit backend
// chosen by --precision.
//
// Exit codes: 0 success / all checks pass, 1 verification failure,
// 2 usage or domain error.

#include <hzmt/hzmt.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using hzmt::ordered_json;

struct CliOptions {
    int precision = 30;
    std::string tol_str; // empty means backend default
    std::int64_t max_terms = 4'000'000;
    int em_order = 8;
    std::string format; // empty means subcommand default
    std::string out_path;
};

struct EvalArgs {
    std::string fn;
    std::vector<std::string> args;
};

struct VerifyArgs {
    std::string which = "all";
    std::vector<std::string> x, eps;
    std::vector<int> r, z;
};

struct LaurentArgs {
    std::string kind;
    std::string x = "1";
    int r = 2;
};

struct ScanArgs {
    std::string fn;
    std::string var = "x";
    std::string from, to;
    int points = 0;
    int r = 2;
    int z = 3;
};

template <class R>
R parse_real(const std::string& s) {
    return R(s); // throws std::runtime_error on malformed input
}

template <>
double parse_real<double>(const std::string& s) {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::runtime_error("malformed number: " + s);
    return v;
}

int parse_int(const std::string& s) {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::runtime_error("malformed integer: " + s);
    if (v < -1000000 || v > 1000000) throw std::runtime_error("integer out of range: " + s);
    return static_cast<int>(v);
}

const char* route_name(hzmt::ThetaRoute r) {
    switch (r) {
        case hzmt::ThetaRoute::zeta_product: return "zeta_product";
        case hzmt::ThetaRoute::axis_0r: return "axis_0r";
        case hzmt::ThetaRoute::axis_01: return "axis_01";
        case hzmt::ThetaRoute::diag_11: return "diag_11";
        case hzmt::ThetaRoute::block: return "block";
    }
    return "?";
}

void emit(const CliOptions& opt, const std::string& text) {
    if (opt.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + opt.out_path);
    f << text;
}

// arity and argument names per eval function
const std::map<std::string, std::vector<const char*>>& eval_signatures() {
    static const std::map<std::string, std::vector<const char*>> sig = {
        {"F", {"x"}},
        {"Fr", {"r", "x"}},
        {"phi", {"z", "x"}},
        {"theta", {"r", "s", "t", "x"}},
        {"mt", {"r", "s", "t"}},
        {"zeta", {"s"}},
        {"zetaD", {"s1", "s2"}},
        {"psi", {"a"}},
        {"polygamma", {"order", "a"}},
        {"hurwitz", {"s", "a"}},
        {"polylog", {"order", "z"}},
        {"P", {"x", "y"}},
        {"phi_ram", {"x"}},
    };
    return sig;
}

template <class R>
int run_eval(const CliOptions& opt, const EvalArgs& ea, const R& tol) {
    const auto& sigs = eval_signatures();
    auto it = sigs.find(ea.fn);
    if (it == sigs.end()) {
        std::cerr << "eval: unknown function '" << ea.fn << "'\n";
        return 2;
    }
    const auto& names = it->second;
    if (ea.args.size() != names.size()) {
        std::cerr << "eval: " << ea.fn << " expects " << names.size() << " argument(s), got "
                  << ea.args.size() << "\n";
        return 2;
    }

    hzmt::AccuracyBudget<R> bud{std::max(tol / 10, hzmt::real_eps<R>() * 100), opt.max_terms,
                                opt.em_order};
    hzmt::EvalOutcome<R> out;
    std::string route;
    const auto& a = ea.args;
    if (ea.fn == "F") {
        out = hzmt::herglotz_F(parse_real<R>(a[0]), bud);
    } else if (ea.fn == "Fr") {
        out = hzmt::higher_herglotz_F(parse_int(a[0]), parse_real<R>(a[1]), bud);
    } else if (ea.fn == "phi") {
        out = hzmt::phi(parse_real<R>(a[0]), parse_real<R>(a[1]), bud);
    } else if (ea.fn == "theta") {
        auto res = hzmt::mt_zeta_routed(parse_real<R>(a[0]), parse_real<R>(a[1]),
                                        parse_real<R>(a[2]), parse_real<R>(a[3]), bud);
        out = res.out;
        route = route_name(res.route);
    } else if (ea.fn == "mt") {
        auto res = hzmt::mt_zeta_routed(parse_real<R>(a[0]), parse_real<R>(a[1]),
                                        parse_real<R>(a[2]), R(1), bud);
        out = res.out;
        route = route_name(res.route);
    } else if (ea.fn == "zeta") {
        out = hzmt::riemann_zeta(parse_real<R>(a[0]), bud);
    } else if (ea.fn == "zetaD") {
        out = hzmt::double_zeta_conv(parse_real<R>(a[0]), parse_real<R>(a[1]), bud);
    } else if (ea.fn == "psi") {
        out = hzmt::digamma(parse_real<R>(a[0]), bud);
    } else if (ea.fn == "polygamma") {
        out = hzmt::polygamma(parse_int(a[0]), parse_real<R>(a[1]), bud);
    } else if (ea.fn == "hurwitz") {
        out = hzmt::hurwitz_zeta(parse_real<R>(a[0]), parse_real<R>(a[1]), bud);
    } else if (ea.fn == "polylog") {
        out = hzmt::polylog(parse_int(a[0]), parse_real<R>(a[1]), bud);
    } else if (ea.fn == "P") {
        out = hzmt::zagier_P(parse_real<R>(a[0]), parse_real<R>(a[1]), bud);
    } else { // phi_ram
        out = hzmt::ramanujan_phi(parse_real<R>(a[0]), bud);
    }

    const int d = opt.precision;
    std::string fmt = opt.format.empty() ? "table" : opt.format;
    if (fmt == "json") {
        ordered_json row;
        row["function"] = ea.fn;
        ordered_json args;
        for (std::size_t i = 0; i < names.size(); ++i) args[names[i]] = a[i];
        row["args"] = std::move(args);
        row["value"] = hzmt::to_decimal_string(out.value, d);
        row["err_bound"] = hzmt::to_decimal_string(out.err_bound, d);
        row["terms_used"] = out.terms_used;
        row["converged"] = out.converged;
        if (!route.empty()) row["route"] = route;
        ordered_json j;
        j["config"] = hzmt::make_config_json(d, tol, opt.max_terms, opt.em_order, fmt,
                                             static_cast<const hzmt::GridSpec<R>*>(nullptr));
        j["results"] = ordered_json::array({row});
        ordered_json s;
        s["total"] = 1;
        s["converged"] = out.converged;
        j["summary"] = std::move(s);
        emit(opt, j.dump(2) + "\n");
    } else if (fmt == "csv") {
        std::string args_inline;
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (i) args_inline += ";";
            args_inline += std::string(names[i]) + "=" + a[i];
        }
        std::string s = "function,args,value,err_bound,terms_used,converged,route\n";
        s += ea.fn + "," + args_inline + "," + hzmt::to_decimal_string(out.value, d) + "," +
             hzmt::to_decimal_string(out.err_bound, d) + "," + std::to_string(out.terms_used) +
             "," + (out.converged ? "true" : "false") + "," + route + "\n";
        emit(opt, s);
    } else {
        std::string s = ea.fn + "(";
        for (std::size_t i = 0; i < a.size(); ++i) s += (i ? ", " : "") + a[i];
        s += ") = " + hzmt::to_decimal_string(out.value, d) + "\n";
        s += "  err_bound   " + hzmt::to_decimal_string(out.err_bound, d) + "\n";
        s += "  terms_used  " + std::to_string(out.terms_used) + "\n";
        s += std::string("  converged   ") + (out.converged ? "yes" : "no") + "\n";
        if (!route.empty()) s += "  route       " + route + "\n";
        emit(opt, s);
    }
    return 0;
}

template <class R>
int run_verify(const CliOptions& opt, const VerifyArgs& va, const R& tol) {
    std::vector<hzmt::IdentityId> ids;
    if (va.which == "all") {
        ids.assign(std::begin(hzmt::all_identities), std::end(hzmt::all_identities));
    } else {
        hzmt::IdentityId id{};
        if (!hzmt::identity_from_string(va.which, id)) {
            std::cerr << "verify: unknown identity '" << va.which << "'\n";
            return 2;
        }
        ids.push_back(id);
    }

    auto grid = hzmt::GridSpec<R>::defaults();
    if (!va.x.empty()) {
        grid.x_values.clear();
        for (const auto& s : va.x) grid.x_values.push_back(parse_real<R>(s));
    }
    if (!va.r.empty()) grid.r_values = va.r;
    if (!va.z.empty()) grid.z_values = va.z;
    if (!va.eps.empty()) {
        grid.epsilon_offsets.clear();
        for (const auto& s : va.eps) grid.epsilon_offsets.push_back(parse_real<R>(s));
    }

    auto rep = hzmt::run_suite(grid, tol, opt.precision, ids);

    std::string fmt = opt.format.empty() ? "table" : opt.format;
    if (fmt == "json") {
        auto cfg = hzmt::make_config_json(opt.precision, tol, opt.max_terms, opt.em_order, fmt,
                                          &grid);
        emit(opt, hzmt::suite_to_json(rep, cfg).dump(2) + "\n");
    } else if (fmt == "csv") {
        emit(opt, hzmt::suite_to_csv(rep));
    } else {
        std::string banner = "hzmt " + std::string(hzmt::hzmt_version) + "  precision=" +
                             std::to_string(opt.precision) + "  tol=" +
                             hzmt::to_decimal_string(tol, 3) + "  max_terms=" +
                             std::to_string(opt.max_terms) + "  em_order=" +
                             std::to_string(opt.em_order) + "\n";
        emit(opt, banner + hzmt::suite_to_table(rep));
    }
    return rep.all_pass() ? 0 : 1;
}

template <class R>
int run_laurent(const CliOptions& opt, const LaurentArgs& la, const R& tol) {
    hzmt::AccuracyBudget<R> bud{std::max(tol / 10, hzmt::real_eps<R>() * 100), opt.max_terms,
                                opt.em_order};
    R x = parse_real<R>(la.x);
    std::vector<R> eps = {R(1) / 100, R(1) / 200, R(1) / 400};

    hzmt::LaurentExpansion<R> L;
    double slope;
    if (la.kind == "theta11") {
        L = hzmt::theta11_laurent(x);
        slope = hzmt::as_double(hzmt::klf11_slope(x, eps, bud));
    } else {
        L = hzmt::theta_rr_laurent(la.r, x); // throws for r < 2
        slope = hzmt::klf_rr_slope(la.r, x, eps);
    }

    const int d = opt.precision;
    std::string fmt = opt.format.empty() ? "table" : opt.format;
    if (fmt == "json") {
        ordered_json row = hzmt::laurent_to_json(L, d);
        row["kind"] = la.kind;
        row["x"] = hzmt::to_decimal_string(x, d);
        if (la.kind == "theta-rr") row["r"] = la.r;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", slope);
        row["remainder_slope"] = buf;
        ordered_json ev = ordered_json::array();
        for (const auto& e : eps) ev.push_back(hzmt::to_decimal_string(e, d));
        row["epsilon"] = std::move(ev);
        ordered_json j;
        j["config"] = hzmt::make_config_json(d, tol, opt.max_terms, opt.em_order, fmt,
                                             static_cast<const hzmt::GridSpec<R>*>(nullptr));
        j["results"] = ordered_json::array({row});
        ordered_json s;
        s["total"] = 1;
        j["summary"] = std::move(s);
        emit(opt, j.dump(2) + "\n");
    } else if (fmt == "csv") {
        std::string s = "order,coefficient\n";
        for (const auto& [k, v] : L.coeffs)
            s += std::to_string(k) + "," + hzmt::to_decimal_string(v, d) + "\n";
        emit(opt, s);
    } else {
        std::string s = "expansion of " + la.kind +
                        (la.kind == "theta-rr" ? " (r=" + std::to_string(la.r) + ")" : "") +
                        " at x=" + hzmt::to_decimal_string(x, d) + ", in " + L.variable +
                        " about " + hzmt::to_decimal_string(L.center, 3) + "\n";
        for (const auto& [k, v] : L.coeffs)
            s += "  c[" + std::to_string(k) + "] = " + hzmt::to_decimal_string(v, d) + "\n";
        s += "  remainder O(" + L.variable + "^" + std::to_string(L.remainder_order) + ")";
        char buf[48];
        std::snprintf(buf, sizeof buf, ", fitted slope %.4f\n", slope);
        s += buf;
        emit(opt, s);
    }
    return 0;
}

template <class R>
hzmt::CheckResult<R> scan_identity(hzmt::IdentityId id, const R& x, const ScanArgs& sa,
                                   const R& tol, const hzmt::AccuracyBudget<R>& bud) {
    using hzmt::IdentityId;
    std::vector<R> eps = {R(1) / 100, R(1) / 200, R(1) / 400};
    switch (id) {
        case IdentityId::fe2: return hzmt::verify_fe2(x, tol, bud);
        case IdentityId::fe1: return hzmt::verify_fe1(x, tol, bud);
        case IdentityId::vz2: return hzmt::verify_vz2(sa.r, x, tol, bud);
        case IdentityId::vz3: return hzmt::verify_vz3(sa.r, x, tol, bud);
        case IdentityId::guinand_deriv: return hzmt::verify_guinand_deriv(sa.z, x, tol, bud);
        case IdentityId::guinand_first: return hzmt::verify_guinand_first(x, tol, bud);
        case IdentityId::ramanujan_first: return hzmt::verify_ramanujan_first(x, tol, bud);
        case IdentityId::decomposition:
            return hzmt::verify_decomposition(R(sa.z), x, tol, bud);
        case IdentityId::klf11: return hzmt::verify_klf11(x, eps, tol, bud);
        case IdentityId::klf_rr: return hzmt::verify_klf_rr(sa.r, x, eps, tol, bud);
        default:
            throw hzmt::domain_error(std::string("scan: identity '") + hzmt::to_string(id) +
                                     "' is not parameterized by x");
    }
}

template <class R>
int run_scan(const CliOptions& opt, const ScanArgs& sa, const R& tol) {
    if (sa.var != "x") {
        std::cerr << "scan: only --var x is supported\n";
        return 2;
    }
    if (sa.points < 1) {
        std::cerr << "scan: --points must be at least 1\n";
        return 2;
    }
    R from = parse_real<R>(sa.from);
    R to = parse_real<R>(sa.to);
    if (from > to) {
        std::cerr << "scan: --from must not exceed --to\n";
        return 2;
    }

    hzmt::AccuracyBudget<R> bud{std::max(tol / 10, hzmt::real_eps<R>() * 100), opt.max_terms,
                                opt.em_order};
    hzmt::IdentityId id{};
    bool is_identity = hzmt::identity_from_string(sa.fn, id);
    if (!is_identity) {
        static const std::vector<std::string> fns = {"F", "Fr", "phi_ram", "zeta", "psi"};
        bool known = false;
        for (const auto& f : fns) known = known || f == sa.fn;
        if (!known) {
            std::cerr << "scan: unknown function or identity '" << sa.fn << "'\n";
            return 2;
        }
    }

    const int d = opt.precision;
    struct Row {
        std::string param, value, err;
    };
    std::vector<Row> rows;
    for (int i = 0; i < sa.points; ++i) {
        R x = sa.points == 1 ? from : R(from + (to - from) * R(i) / R(sa.points - 1));
        Row row;
        row.param = hzmt::to_decimal_string(x, d);
        if (is_identity) {
            auto c = scan_identity(id, x, sa, tol, bud);
            row.value = hzmt::to_decimal_string(c.abs_residual, d);
            row.err = hzmt::to_decimal_string(c.tol, d);
        } else {
            hzmt::EvalOutcome<R> out;
            if (sa.fn == "F") out = hzmt::herglotz_F(x, bud);
            else if (sa.fn == "Fr") out = hzmt::higher_herglotz_F(sa.r, x, bud);
            else if (sa.fn == "phi_ram") out = hzmt::ramanujan_phi(x, bud);
            else if (sa.fn == "zeta") out = hzmt::riemann_zeta(x, bud);
            else out = hzmt::digamma(x, bud);
            row.value = hzmt::to_decimal_string(out.value, d);
            row.err = hzmt::to_decimal_string(out.err_bound, d);
        }
        rows.push_back(std::move(row));
    }

    std::string fmt = opt.format.empty() ? "csv" : opt.format;
    if (fmt == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json row;
            row["param"] = r.param;
            row["value"] = r.value;
            row["err_bound"] = r.err;
            arr.push_back(std::move(row));
        }
        ordered_json j;
        j["config"] = hzmt::make_config_json(d, tol, opt.max_terms, opt.em_order, fmt,
                                             static_cast<const hzmt::GridSpec<R>*>(nullptr));
        j["results"] = std::move(arr);
        ordered_json s;
        s["total"] = sa.points;
        j["summary"] = std::move(s);
        emit(opt, j.dump(2) + "\n");
    } else if (fmt == "table") {
        std::string s;
        for (const auto& r : rows)
            s += r.param + "  " + r.value + "  (err " + r.err + ")\n";
        emit(opt, s);
    } else {
        std::string s = "param,value,err_bound\n";
        for (const auto& r : rows) s += r.param + "," + r.value + "," + r.err + "\n";
        emit(opt, s);
    }
    return 0;
}

template <class R>
int run_backend(const CliOptions& opt, const CLI::App& eval_cmd, const EvalArgs& ea,
                const CLI::App& verify_cmd, const VerifyArgs& va, const CLI::App& laurent_cmd,
                const LaurentArgs& la, const CLI::App& scan_cmd, const ScanArgs& sa) {
    R tol = opt.tol_str.empty()
                ? (opt.precision <= 15 ? R(1) / 1000000 : parse_real<R>("1e-9"))
                : parse_real<R>(opt.tol_str);
    if (!(tol > 0)) throw std::runtime_error("tolerance must be positive");
    if (eval_cmd.parsed()) return run_eval<R>(opt, ea, tol);
    if (verify_cmd.parsed()) return run_verify<R>(opt, va, tol);
    if (laurent_cmd.parsed()) return run_laurent<R>(opt, la, tol);
    if (scan_cmd.parsed()) return run_scan<R>(opt, sa, tol);
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"configurable-precision evaluator and identity verifier for "
                 "Herglotz-type series and block zeta functions"};
    app.set_config("--config", "", "read option defaults from a file")->envname("HZMT_CONFIG");

    CliOptions opt;
    app.add_option("--precision,-p", opt.precision,
                   "working decimal digits: <=15 binary64, <=30, <=50")
        ->envname("HZMT_PRECISION");
    app.add_option("--tol", opt.tol_str, "residual tolerance (default 1e-9, 1e-6 in binary64)")
        ->envname("HZMT_TOL");
    app.add_option("--max-terms", opt.max_terms, "series term ceiling per evaluation")
        ->envname("HZMT_MAX_TERMS");
    app.add_option("--em-order", opt.em_order, "tail expansion order")
        ->envname("HZMT_EM_ORDER");
    app.add_option("--format", opt.format, "json, csv, or table")
        ->envname("HZMT_FORMAT")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--out", opt.out_path, "write output to a file instead of stdout")
        ->envname("HZMT_OUT");

    EvalArgs ea;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate one function at one point");
    eval_cmd->add_option("function", ea.fn, "F Fr phi theta mt zeta zetaD psi polygamma "
                                            "hurwitz polylog P phi_ram")
        ->required();
    eval_cmd->add_option("args", ea.args, "numeric arguments");

    VerifyArgs va;
    auto* verify_cmd = app.add_subcommand("verify", "verify identities on a parameter grid");
    verify_cmd->add_option("identity", va.which, "identity name or 'all'");
    verify_cmd->add_option("--x", va.x, "x grid")->delimiter(',');
    verify_cmd->add_option("--r", va.r, "integer orders")->delimiter(',');
    verify_cmd->add_option("--z", va.z, "integer weights")->delimiter(',');
    verify_cmd->add_option("--eps", va.eps, "pole offsets for slope fits")->delimiter(',');

    LaurentArgs la;
    auto* laurent_cmd = app.add_subcommand("laurent", "pole expansion with slope diagnostic");
    laurent_cmd->add_option("kind", la.kind, "theta11 or theta-rr")
        ->required()
        ->check(CLI::IsMember({"theta11", "theta-rr"}));
    laurent_cmd->add_option("--x", la.x, "evaluation point");
    laurent_cmd->add_option("--r", la.r, "diagonal order for theta-rr");

    ScanArgs sa;
    auto* scan_cmd = app.add_subcommand("scan", "sweep a parameter");
    scan_cmd->add_option("--function", sa.fn, "function or identity to sweep")->required();
    scan_cmd->add_option("--var", sa.var, "swept variable (only x)");
    scan_cmd->add_option("--from", sa.from)->required();
    scan_cmd->add_option("--to", sa.to)->required();
    scan_cmd->add_option("--points", sa.points)->required();
    scan_cmd->add_option("--r", sa.r, "integer order where needed");
    scan_cmd->add_option("--z", sa.z, "integer weight where needed");

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (opt.precision < 1 || opt.precision > 50) {
            std::cerr << "precision must lie in [1, 50]\n";
            return 2;
        }
        if (opt.max_terms < 1 || opt.em_order < 1) {
            std::cerr << "--max-terms and --em-order must be positive\n";
            return 2;
        }
        if (opt.precision <= 15)
            return run_backend<double>(opt, *eval_cmd, ea, *verify_cmd, va, *laurent_cmd, la,
                                       *scan_cmd, sa);
        if (opt.precision <= 30)
            return run_backend<hzmt::real30>(opt, *eval_cmd, ea, *verify_cmd, va, *laurent_cmd,
                                             la, *scan_cmd, sa);
        return run_backend<hzmt::real50>(opt, *eval_cmd, ea, *verify_cmd, va, *laurent_cmd, la,
                                         *scan_cmd, sa);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

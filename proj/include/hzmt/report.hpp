#pragma once

// Report serialization.  JSON artifacts carry every number as a decimal
// string rendered at the active precision, so two runs with the same
// configuration produce byte-identical output.  Wall-clock timings stay out
// of the serialized artifacts for the same reason.

#include "real.hpp"
#include "budget.hpp"
#include "verify.hpp"
#include "laurent.hpp"

#include <json.hpp>

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace hzmt {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* hzmt_version = "1.0.0";

inline ordered_json module_versions_json() {
    ordered_json v;
    v["core"] = "1.0.0";
    v["special"] = "1.0.0";
    v["theta"] = "1.0.0";
    v["verify"] = "1.0.0";
    v["cli"] = "1.0.0";
    return v;
}

template <class R>
std::string to_decimal_string(const R& v, int digits) {
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

template <class R>
ordered_json grid_to_json(const GridSpec<R>& g, int digits) {
    ordered_json j;
    auto list = [&](const std::vector<R>& vs) {
        ordered_json a = ordered_json::array();
        for (const auto& v : vs) a.push_back(to_decimal_string(v, digits));
        return a;
    };
    j["x"] = list(g.x_values);
    j["r"] = g.r_values;
    j["z"] = g.z_values;
    j["epsilon"] = list(g.epsilon_offsets);
    return j;
}

template <class R>
ordered_json make_config_json(int precision, const R& tol, std::int64_t max_terms, int em_order,
                              const std::string& format, const GridSpec<R>* grid = nullptr) {
    ordered_json c;
    c["version"] = hzmt_version;
    c["precision"] = precision;
    c["tolerance"] = to_decimal_string(tol, precision);
    c["max_terms"] = max_terms;
    c["em_order"] = em_order;
    c["format"] = format;
    if (grid) c["grid"] = grid_to_json(*grid, precision);
    c["modules"] = module_versions_json();
    return c;
}

template <class R>
ordered_json check_to_json(const CheckResult<R>& c, int digits) {
    ordered_json j;
    j["id"] = to_string(c.id);
    ordered_json p;
    for (const auto& [k, v] : c.params) p[k] = to_decimal_string(v, digits);
    j["params"] = std::move(p);
    j["lhs"] = to_decimal_string(c.lhs, digits);
    j["rhs"] = to_decimal_string(c.rhs, digits);
    j["abs_residual"] = to_decimal_string(c.abs_residual, digits);
    j["rel_residual"] = to_decimal_string(c.rel_residual, digits);
    j["tol"] = to_decimal_string(c.tol, digits);
    j["pass"] = c.pass;
    j["routes"] = c.routes;
    j["note"] = c.note;
    return j;
}

template <class R>
ordered_json suite_to_json(const SuiteReport<R>& rep, const ordered_json& config) {
    ordered_json j;
    j["config"] = config;
    ordered_json rows = ordered_json::array();
    for (const auto& c : rep.results) rows.push_back(check_to_json(c, rep.precision_digits));
    j["results"] = std::move(rows);

    ordered_json s;
    int passed = 0, failed = 0;
    for (const auto& c : rep.results) (c.pass ? passed : failed)++;
    s["total"] = static_cast<int>(rep.results.size());
    s["passed"] = passed;
    s["failed"] = failed;
    s["all_pass"] = rep.all_pass();
    ordered_json ids = ordered_json::array();
    for (const auto& t : rep.summary) {
        ordered_json ti;
        ti["id"] = to_string(t.id);
        ti["passed"] = t.passed;
        ti["failed"] = t.failed;
        ids.push_back(std::move(ti));
    }
    s["identities"] = std::move(ids);
    ordered_json diag = ordered_json::array();
    for (const auto& c : rep.diagnostics) diag.push_back(check_to_json(c, rep.precision_digits));
    s["diagnostics"] = std::move(diag);
    j["summary"] = std::move(s);
    return j;
}

template <class R>
ordered_json outcome_to_json(const EvalOutcome<R>& out, int digits) {
    ordered_json j;
    j["value"] = to_decimal_string(out.value, digits);
    j["err_bound"] = to_decimal_string(out.err_bound, digits);
    j["terms_used"] = out.terms_used;
    j["converged"] = out.converged;
    return j;
}

template <class R>
ordered_json laurent_to_json(const LaurentExpansion<R>& L, int digits) {
    ordered_json j;
    j["variable"] = L.variable;
    j["center"] = to_decimal_string(L.center, digits);
    ordered_json c;
    for (const auto& [k, v] : L.coeffs) c[std::to_string(k)] = to_decimal_string(v, digits);
    j["coefficients"] = std::move(c);
    j["remainder_order"] = L.remainder_order;
    return j;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += "\"\"";
        else q += ch;
    }
    q += "\"";
    return q;
}

template <class R>
std::string params_inline(const std::map<std::string, R>& params, int digits) {
    std::string s;
    for (const auto& [k, v] : params) {
        if (!s.empty()) s += ";";
        s += k + "=" + to_decimal_string(v, digits);
    }
    return s;
}

inline std::string routes_inline(const std::vector<std::string>& routes) {
    std::string s;
    for (const auto& r : routes) {
        if (!s.empty()) s += "|";
        s += r;
    }
    return s;
}

} // namespace detail

template <class R>
std::string suite_to_csv(const SuiteReport<R>& rep) {
    const int d = rep.precision_digits;
    std::string out = "id,params,lhs,rhs,abs_residual,rel_residual,tol,verdict,routes,note\n";
    for (const auto& c : rep.results) {
        out += to_string(c.id);
        out += "," + detail::csv_field(detail::params_inline(c.params, d));
        out += "," + to_decimal_string(c.lhs, d);
        out += "," + to_decimal_string(c.rhs, d);
        out += "," + to_decimal_string(c.abs_residual, d);
        out += "," + to_decimal_string(c.rel_residual, d);
        out += "," + to_decimal_string(c.tol, d);
        out += c.pass ? ",pass" : ",FAIL";
        out += "," + detail::csv_field(detail::routes_inline(c.routes));
        out += "," + detail::csv_field(c.note);
        out += "\n";
    }
    return out;
}

template <class R>
std::string suite_to_table(const SuiteReport<R>& rep) {
    const int d = std::min(rep.precision_digits, 6);
    std::ostringstream os;
    os << std::left << std::setw(16) << "id" << std::setw(34) << "params" << std::setw(14)
       << "abs_resid" << std::setw(14) << "rel_resid" << std::setw(12) << "tol"
       << "verdict\n";
    os << std::string(96, '-') << "\n";
    for (const auto& c : rep.results) {
        std::string p = detail::params_inline(c.params, 4);
        if (p.size() > 32) p = p.substr(0, 29) + "...";
        os << std::left << std::setw(16) << to_string(c.id) << std::setw(34) << p
           << std::setw(14) << to_decimal_string(c.abs_residual, d) << std::setw(14)
           << to_decimal_string(c.rel_residual, d) << std::setw(12)
           << to_decimal_string(c.tol, d) << (c.pass ? "pass" : "FAIL");
        if (!c.note.empty()) os << "  [" << c.note << "]";
        os << "\n";
    }
    os << std::string(96, '-') << "\n";
    int passed = 0, failed = 0;
    for (const auto& c : rep.results) (c.pass ? passed : failed)++;
    os << "checks: " << rep.results.size() << "  passed: " << passed << "  failed: " << failed
       << "\n";
    for (const auto& t : rep.summary)
        os << "  " << std::left << std::setw(18) << to_string(t.id) << " " << t.passed << "/"
           << (t.passed + t.failed) << "\n";
    for (const auto& c : rep.diagnostics)
        os << "diagnostic: " << to_string(c.id) << " ["
           << detail::params_inline(c.params, 4) << "] abs_residual="
           << to_decimal_string(c.abs_residual, d) << " (" << c.note << ")\n";
    return os.str();
}

} // namespace hzmt

#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "szlab/arith.hpp"
#include "szlab/character.hpp"
#include "szlab/dirichlet_algebra.hpp"
#include "szlab/euler_local.hpp"
#include "szlab/lfunction.hpp"
#include "szlab/newform.hpp"
#include "szlab/twists.hpp"
#include "szlab/zeros.hpp"

namespace szlab::cli {

using json = nlohmann::ordered_json;

namespace {

struct RunConfig {
    std::string command;
    std::string newform_path;
    bool delta = false;
    std::string out;
    std::string format = "json";
    int threads = 1;
    double tol = 1e-10;
    int nmax = 0;  // 0 = command default
    std::string series = "a";
    double tmax = 0.0;
    int q = 0;
    bool rankin = false;
    int X = 10000;
    bool inherit = false;
    std::string suite;
    std::string alpha = "1/3";
    double T = 25.0;
    int M = 8;
    std::string s = "8";
};

const std::vector<std::string> kSuites = {"algebra", "lfunction", "zeros", "local", "identity", "all"};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

cplx parse_complex(const std::string& text) {
    std::stringstream ss(text);
    double re = 0, im = 0;
    char comma = 0;
    if (!(ss >> re)) throw UsageError("bad complex number '" + text + "' (use re or re,im)");
    if (ss >> comma) {
        if (comma != ',' || !(ss >> im)) throw UsageError("bad complex number '" + text + "' (use re or re,im)");
    }
    return {re, im};
}

/// Ordered list of named checks; each check catches numerical errors so the
/// report is always complete.
class Checks {
public:
    void add(const std::string& name, double value, double threshold, const std::string& relation, bool pass,
             json extra = json::object()) {
        json c;
        c["name"] = name;
        c["value"] = value;
        c["threshold"] = threshold;
        c["relation"] = relation;
        c["pass"] = pass;
        for (auto& [k, v] : extra.items()) c[k] = v;
        list_.push_back(std::move(c));
        all_ = all_ && pass;
    }
    void below(const std::string& name, double value, double threshold, json extra = json::object()) {
        add(name, value, threshold, "<", value < threshold, std::move(extra));
    }
    void at_least(const std::string& name, double value, double threshold, json extra = json::object()) {
        add(name, value, threshold, ">=", value >= threshold, std::move(extra));
    }
    void guarded(const std::string& name, const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception& e) {
            json c;
            c["name"] = name;
            c["pass"] = false;
            c["error"] = e.what();
            list_.push_back(std::move(c));
            all_ = false;
        }
    }
    const json& list() const { return list_; }
    bool all_pass() const { return all_; }

private:
    json list_ = json::array();
    bool all_ = true;
};

json base_report(const RunConfig& cfg, const Newform& f) {
    json r;
    r["schema"] = 1;
    r["command"] = cfg.command;
    json in;
    in["source"] = cfg.delta ? std::string("builtin-delta") : cfg.newform_path;
    in["label"] = f.label();
    in["weight"] = f.weight();
    in["level"] = f.level();
    in["n_max"] = f.n_max();
    r["inputs"] = in;
    r["defaults"] = defaults_table();
    return r;
}

void finish(json& report, const Checks& checks) {
    report["checks"] = checks.list();
    report["pass"] = checks.all_pass();
}

// ------------------------------------------------------------------ suites

void suite_algebra(const Newform& f, Checks& checks, json& out) {
    const json d = defaults_table();
    checks.guarded("exp_decomposition", [&] {
        double worst = 0;
        for (int q : primes_up_to(101)) worst = std::max(worst, exp_decomposition_check(q));
        checks.below("exp_decomposition", worst, d["exp_decomposition"], {{"primes_up_to", 101}});
    });
    checks.guarded("twist_coefficient_decomposition", [&] {
        int q = 2;
        while (f.level() % q == 0 || !is_prime(q)) ++q;
        const int n = std::min(1000, f.n_max());
        checks.below("twist_coefficient_decomposition", twist_coefficient_decomposition_check(f, q, n),
                     d["twist_coefficient_decomposition"], {{"q", q}, {"n_max", n}});
    });
    checks.guarded("chu_vandermonde", [&] {
        int failures = 0;
        for (int m = 0; m <= 10; ++m)
            for (int k = 1; k <= 20; ++k) failures += chu_vandermonde_check(m, k) ? 0 : 1;
        checks.below("chu_vandermonde_failures", failures, 0.5, {{"m_max", 10}, {"k_max", 20}});
    });
    checks.guarded("vandermonde_solve", [&] {
        int nonzero = 0;
        for (int M = 1; M <= 8; ++M) {
            const auto q = dirichlet_primes(1, f.level(), M);
            for (int m0 = 0; m0 < M; ++m0)
                for (const auto& r : vandermonde_residual(q, m0, vandermonde_solve(q, m0))) nonzero += r != 0;
        }
        checks.below("vandermonde_nonzero_residuals", nonzero, 0.5, {{"M_max", 8}});
    });
    checks.guarded("fbar_kernel", [&] {
        checks.below("fbar_kernel_mismatches", fbar_kernel_mismatches(f.weight(), 8), 0.5, {{"max_degree", 8}});
    });
    out["algebra"] = "exact identities";
}

void suite_lfunction(const Newform& f, Checks& checks, json& out) {
    const json d = defaults_table();
    checks.guarded("funceq_grid", [&] {
        double worst = 0;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 10; ++j) {
                const cplx s(2.0 + 2.0 * i, -30.0 + 60.0 * j / 9.0);
                worst = std::max(worst, funceq_residual(f, s));
            }
        checks.below("funceq_grid_relative", worst, d["funceq_relative"], {{"points", 50}});
    });
    checks.guarded("dfunceq", [&] {
        double worst = 0;
        for (cplx s : {cplx(7.0, 1.0), cplx(4.5, -3.0), cplx(8.0, 12.0)})
            worst = std::max(worst, dfunceq_residual(f, s));
        checks.below("dfunceq_residual", worst, d["dfunceq"]);
    });
    checks.guarded("d_series_overlap", [&] {
        const auto c = d_coefficients(f, f.n_max());
        json rows = json::array();
        double worst = 0;
        for (cplx s : {cplx(8.0, 0.0), cplx(8.0, 5.0)}) {
            const cplx closed = d_value(f, s), series = c.evaluate(s);
            worst = std::max(worst, std::abs(closed - series));
            rows.push_back({{"s", cjson(s)}, {"closed_form", cjson(closed)}, {"series", cjson(series)}});
        }
        out["d_series_overlap"] = rows;
        checks.below("d_series_overlap", worst, d["d_overlap"]);
    });
    checks.guarded("laurent", [&] {
        // (s - rho) D(s) -> -L'(rho) at a simple zero, from four sides
        const auto zs = scan_zeros(f, 0.0, 15.0, 0.05);
        if (zs.empty()) throw CertificationError("no zero below t = 15 for the Laurent check");
        // the next term is -L''(rho) h / 2, and the bisection bracket (1e-9)
        // would dominate at this distance without polishing
        const cplx rho = polish_zero(f, zs.front().rho);
        const cplx lprime = l_derivatives(f, rho).first;
        const double dist = 1e-6;
        double worst = 0;
        for (int j = 0; j < 4; ++j) {
            const cplx h = dist * std::polar(1.0, pi / 2 * j + pi / 4);
            worst = std::max(worst, std::abs(h * d_value(f, rho + h) + lprime) / std::abs(lprime));
        }
        out["laurent"] = {{"rho", cjson(rho)}, {"lprime", cjson(lprime)}, {"distance", dist}};
        checks.below("laurent_relative", worst, d["laurent"]);
    });
}

void suite_zeros(const Newform& f, double tmax, Checks& checks, json& out) {
    const json d = defaults_table();
    checks.guarded("zeros", [&] {
        const auto zs = scan_zeros(f, 0.0, tmax, 0.05);
        json recs = json::array();
        double worst = 0;
        bool simple = true;
        for (const auto& z : zs) {
            recs.push_back({{"t", z.t},
                            {"refinement_error", z.refinement_error},
                            {"winding", z.winding},
                            {"lprime", cjson(z.lprime)},
                            {"delta_residue", cjson(z.delta_residue)}});
            worst = std::max(worst, z.refinement_error);
            simple = simple && z.winding == 1;
        }
        const BoxCount bc = count_zeros(f, tmax);
        out["zeros"] = recs;
        out["count_zeros"] = {{"T", bc.T}, {"count", bc.count}};
        checks.add("all_winding_one", simple ? 1.0 : 0.0, 1.0, "==", simple);
        if (!zs.empty()) checks.below("refinement_error", worst, d["refinement"]);
        checks.add("count_matches_scan", bc.count, static_cast<double>(zs.size()), "==",
                   bc.count == static_cast<int>(zs.size()));
    });
}

json pole_json(const PoleStudy& st) {
    return {{"q", st.q},
            {"s0_local", cjson(st.s0_local)},
            {"s0_located", cjson(st.s0_located)},
            {"distances", st.distances},
            {"magnitudes", st.magnitudes},
            {"magnitude_times_distance", st.products},
            {"window_ratio", st.window_ratio}};
}

void pole_checks(const Newform& f, int q, Checks& checks, json& out) {
    const json d = defaults_table();
    checks.guarded("pole_inheritance_q" + std::to_string(q), [&] {
        const auto st = pole_inheritance(f, q, {1e-2, 1e-3, 1e-4});
        out["pole_inheritance"].push_back(pole_json(st));
        const std::string tag = "_q" + std::to_string(q);
        checks.below("pole_window_ratio" + tag, st.window_ratio, d["pole_window"]);
        checks.below("pole_location" + tag, std::abs(st.s0_located - st.s0_local), d["pole_location"]);
    });
}

void rankin_checks(const Newform& f, int X, Checks& checks, json& out) {
    const json d = defaults_table();
    checks.guarded("rankin", [&] {
        const double avg = rankin_average(f, X);
        const double frac = abundance_report(f, X);
        out["rankin"] = {{"X", X}, {"mean", avg}, {"strict_deligne_fraction", frac}};
        const double lo = d["rankin_interval"][0], hi = d["rankin_interval"][1];
        checks.add("rankin_mean", avg, hi, "in (0.85, 1.15)", avg > lo && avg < hi);
        checks.add("strict_deligne_fraction", frac, 1.0, "==", frac == 1.0);
    });
}

void suite_local(const Newform& f, Checks& checks, json& out) {
    out["pole_inheritance"] = json::array();
    for (int q : {2, 3, 5})
        if (f.level() % q != 0 && !local_factor(f, q).is_square) pole_checks(f, q, checks, out);
    rankin_checks(f, std::min(10000, f.n_max()), checks, out);
}

void suite_identity(const Newform& f, const RunConfig& cfg, Checks& checks, json& out) {
    const json d = defaults_table();
    const Rational alpha = parse_rational(cfg.alpha);
    const int k = f.weight();
    const int exponent_loss = (k + 3) / 2;
    const IdentityLab lab(f, {}, cfg.tol, cfg.threads);

    checks.guarded("main_identity", [&] {
        const cplx z(0.3, 0.2);
        json rows = json::array();
        std::vector<double> heights;
        for (double T : {15.0, 20.0, cfg.T})
            if (heights.empty() || T > heights.back()) heights.push_back(T);
        std::vector<double> res;
        for (double T : heights) {
            const auto m = lab.main_identity(z, T);
            res.push_back(m.residual);
            rows.push_back({{"T", T}, {"residual", m.residual}, {"zeros_used", m.zeros_used}});
        }
        out["main_identity"] = {{"z", cjson(z)}, {"rows", rows}};
        checks.add("main_identity_decreasing_in_T", res.back(), res.front(), "<", res.back() < res.front());

        // first omitted residue above T (with its conjugate partner)
        const auto beyond = lab.residues(cfg.T + 6.0);
        double t_first = 1e300;
        for (const auto& r : beyond)
            if (std::abs(r.rho.imag()) > cfg.T) t_first = std::min(t_first, std::abs(r.rho.imag()));
        double omitted = 0;
        const cplx L = std::log(cplx(0.0, -1.0) * z);
        for (const auto& r : beyond)
            if (std::abs(std::abs(r.rho.imag()) - t_first) < 1e-9) omitted += std::abs(r.residue * std::exp(-r.rho * L));
        const double ratio = res.back() / omitted;
        out["main_identity"]["first_omitted_ordinate"] = t_first;
        out["main_identity"]["first_omitted_term"] = omitted;
        checks.add("main_identity_tail_dominance", ratio, d["tail_dominance_factor"], "in [1/10, 10]",
                   ratio >= 1.0 / d["tail_dominance_factor"].get<double>() &&
                       ratio <= d["tail_dominance_factor"].get<double>());

        // between T and the next ordinate the residue set does not change
        double t_next = t_first;
        const double T2 = 0.5 * (cfg.T + t_next);
        const double r2 = lab.main_identity(z, T2).residual;
        checks.below("main_identity_constant_between_ordinates", std::abs(r2 - res.back()), d["gap_constancy"],
                     {{"T2", T2}});
    });

    checks.guarded("ibp_expansion", [&] {
        double worst = 0;
        for (int m = 0; m <= 4; ++m)
            for (int n = 1; n <= 10; ++n) worst = std::max(worst, ibp_expansion_check(k, alpha, 9.0, m, n).residual);
        checks.below("ibp_expansion_residual", worst, d["ibp"], {{"s", 9.0}, {"m_max", 4}, {"n_max", 10}});
    });
    checks.guarded("phi_mellin", [&] {
        // the integral representation of psi'(s) + psi'(s+1-k) needs Re s > k - 1
        const double s = k + 1.0;
        checks.below("phi_mellin_psi_prime", phi_mellin_check(k, s), d["psi_prime"], {{"s", s}});
    });
    checks.guarded("fbar_expansion", [&] {
        json rows = json::array();
        const double a = std::abs(static_cast<double>(alpha));
        const std::vector<double> ys{a / 8, a / 16, a / 32};
        for (int M : {8, 9, 10}) {
            std::vector<double> r;
            for (double y : ys) r.push_back(fbar_expansion_residual(lab, alpha, y, M));
            const double slope = loglog_slope(ys, r);
            rows.push_back({{"M", M}, {"ys", ys}, {"residuals", r}, {"slope", slope}});
            checks.at_least("fbar_slope_M" + std::to_string(M), slope, M - exponent_loss);
        }
        out["fbar_expansion"] = rows;
    });
    checks.guarded("a_mellin", [&] {
        const double s = k + 1.5;
        checks.below("a_mellin_expansion_residual", lab.a_mellin_expansion_check(alpha, s, 2), d["a_mellin"],
                     {{"s", s}, {"m", 2}});
    });
    checks.guarded("g_decay", [&] {
        const double a = std::abs(static_cast<double>(alpha));
        const std::vector<double> ys{a / 8, a / 16, a / 32};
        const auto P = lab.b_taylor_coeffs(alpha, cfg.M, cfg.T);
        std::vector<double> fit;
        for (double y : ys) {
            cplx taylor = 0.0;
            for (int j = cfg.M - 1; j >= 0; --j) taylor = taylor * y + P[j];
            fit.push_back(std::abs(lab.B(cplx(static_cast<double>(alpha), y), cfg.T) - taylor));
        }
        const double b_slope = loglog_slope(ys, fit);
        checks.at_least("b_taylor_fit_slope", b_slope, cfg.M - d["b_fit_slack"].get<double>());

        const auto g = lab.g_decay(alpha, cfg.M, cfg.T, ys);
        out["g_decay"] = {{"M", cfg.M},
                          {"T", cfg.T},
                          {"ys", g.ys},
                          {"g_raw", g.g_raw},
                          {"g_truncated", g.g_truncated},
                          {"slope_raw", g.slope_raw},
                          {"slope_truncated", g.slope_truncated},
                          {"g_at_4", g.g_large},
                          {"note", "g_raw contains the residue tail above T; g_truncated removes it"}};
        checks.at_least("g_truncated_slope", g.slope_truncated, cfg.M - exponent_loss);
        checks.below("g_at_4", g.g_large, d["g_large"]);
    });
}

// ------------------------------------------------------------------ commands

Newform load_form(const RunConfig& cfg, int delta_nmax) {
    if (cfg.delta) return delta_coefficients(cfg.nmax > 0 ? cfg.nmax : delta_nmax);
    if (cfg.newform_path.empty()) throw UsageError("one of --newform <path> or --delta is required");
    return load_newform(cfg.newform_path);
}

int emit(const RunConfig& cfg, const json& report, std::ostream& out, std::ostream& err) {
    std::ostringstream body;
    if (cfg.format == "csv") {
        if (report.contains("columns")) {
            const auto& cols = report["columns"];
            for (std::size_t i = 0; i < cols.size(); ++i) body << (i ? "," : "") << cols[i].get<std::string>();
            body << "\n";
            for (const auto& row : report["rows"]) {
                for (std::size_t i = 0; i < row.size(); ++i) body << (i ? "," : "") << row[i].dump();
                body << "\n";
            }
        } else {
            body << "check,value,threshold,relation,pass\n";
            for (const auto& c : report["checks"])
                body << c["name"].get<std::string>() << "," << (c.contains("value") ? c["value"].dump() : "")
                     << "," << (c.contains("threshold") ? c["threshold"].dump() : "") << ","
                     << (c.contains("relation") ? c["relation"].get<std::string>() : "error") << ","
                     << (c["pass"].get<bool>() ? "true" : "false") << "\n";
        }
    } else {
        body << report.dump(2) << "\n";
    }
    if (cfg.out.empty()) {
        out << body.str();
    } else {
        std::ofstream file(cfg.out, std::ios::binary);
        if (!file) {
            err << "error: cannot write " << cfg.out << "\n";
            return kInput;
        }
        file << body.str();
    }
    return report.value("pass", true) ? kOk : kCheckFailed;
}

int cmd_coeffs(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const int n = cfg.nmax > 0 ? cfg.nmax : 100;
    const Newform f = load_form(cfg, n);
    if (n > f.n_max()) throw UsageError("--nmax exceeds the coefficients in the newform file");
    DirichletSeriesCoeffs c;
    if (cfg.series == "a")
        c = coefficients_of(f, n);
    else if (cfg.series == "c")
        c = d_coefficients(f, n);
    else if (cfg.series == "l")
        c = log_l_coefficients(f, n);
    else
        throw UsageError("--series must be one of a, c, l");
    json r = base_report(cfg, f);
    r["inputs"]["series"] = cfg.series;
    r["columns"] = {"n", "re", "im"};
    json rows = json::array();
    for (int i = 1; i <= n; ++i) rows.push_back({i, c[i].real(), c[i].imag()});
    r["rows"] = rows;
    r["pass"] = true;
    return emit(cfg, r, out, err);
}

int cmd_zeros(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.tmax < 0) throw UsageError("--tmax must be non-negative");
    const Newform f = load_form(cfg, 5000);
    json r = base_report(cfg, f);
    r["inputs"]["tmax"] = cfg.tmax;
    Checks checks;
    json results;
    suite_zeros(f, cfg.tmax, checks, results);
    r["results"] = results;
    finish(r, checks);
    return emit(cfg, r, out, err);
}

int cmd_local(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Newform f = load_form(cfg, std::max(5000, cfg.X));
    json r = base_report(cfg, f);
    Checks checks;
    json results;
    if (cfg.rankin) {
        r["inputs"]["X"] = cfg.X;
        rankin_checks(f, cfg.X, checks, results);
    } else {
        if (cfg.q < 2) throw UsageError("local needs --q <prime> or --rankin");
        if (!is_prime(cfg.q)) throw UsageError("--q must be prime");
        r["inputs"]["q"] = cfg.q;
        const LocalFactor lf = local_factor(f, cfg.q);
        json zs = json::array();
        for (const auto& z : local_zeros(lf, 0.0, two_pi / std::log(double(cfg.q))))
            zs.push_back({{"s", cjson(z.s)}, {"simple", z.simple}});
        results["local_factor"] = {{"q", lf.q},         {"a_q", cjson(lf.a_q)},      {"alpha", cjson(lf.alpha)},
                                   {"beta", cjson(lf.beta)}, {"theta", lf.theta},    {"is_square", lf.is_square},
                                   {"near_square", lf.near_square}, {"zeros_one_period", zs}};
        if (cfg.inherit) {
            results["pole_inheritance"] = json::array();
            if (lf.is_square)
                checks.add("pole_inheritance", 0, 0, "skipped: square local factor", true);
            else
                pole_checks(f, cfg.q, checks, results);
        }
    }
    r["results"] = results;
    finish(r, checks);
    return emit(cfg, r, out, err);
}

int cmd_rankin(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    RunConfig c = cfg;
    c.rankin = true;
    return cmd_local(c, out, err);
}

int cmd_twist(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.q < 2 || !is_prime(cfg.q)) throw UsageError("twist needs --q <prime>");
    const Newform f = load_form(cfg, 20000);
    const cplx s = parse_complex(cfg.s);
    const json d = defaults_table();
    json r = base_report(cfg, f);
    r["inputs"]["q"] = cfg.q;
    r["inputs"]["s"] = cjson(s);
    Checks checks;
    json results;
    checks.guarded("additive_twist", [&] {
        const cplx via = d_additive_via_characters(f, cfg.q, s);
        results["d_additive_via_characters"] = cjson(via);
        if (s.real() > (f.weight() + 2) / 2.0) {
            const auto series = additive_twist(TwistKind::D, f, s, Rational(1, cfg.q), f.n_max());
            results["d_additive_series"] = {{"value", cjson(series.value)}, {"tail_estimate", series.tail_estimate}};
            checks.below("additive_twist_overlap", std::abs(via - series.value), d["twist_overlap"]);
        }
    });
    checks.guarded("multiplicative_twists", [&] {
        json rows = json::array();
        const auto table = character_table(cfg.q);
        for (std::size_t i = 1; i < table.size(); ++i) {
            const cplx closed = mult_twist_D(f, table[i], s);
            json row = {{"character", i}, {"closed_form", cjson(closed)}};
            if (s.real() > (f.weight() + 2) / 2.0) {
                const cplx series = mult_twist_D_series(f, table[i], s, f.n_max());
                row["series"] = cjson(series);
                checks.below("mult_twist_overlap_chi" + std::to_string(i), std::abs(closed - series),
                             d["mult_twist_overlap"]);
            }
            rows.push_back(row);
        }
        results["multiplicative_twists"] = rows;
    });
    r["results"] = results;
    finish(r, checks);
    return emit(cfg, r, out, err);
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (std::find(kSuites.begin(), kSuites.end(), cfg.suite) == kSuites.end()) {
        std::string list;
        for (const auto& s : kSuites) list += (list.empty() ? "" : ", ") + s;
        throw UsageError("unknown suite '" + cfg.suite + "'; available: " + list);
    }
    const bool all = cfg.suite == "all";
    const bool heavy = all || cfg.suite == "lfunction" || cfg.suite == "local";
    const Newform f = load_form(cfg, heavy ? 20000 : 5000);
    json r = base_report(cfg, f);
    r["inputs"]["suite"] = cfg.suite;
    if (all || cfg.suite == "identity") {
        r["inputs"]["alpha"] = cfg.alpha;
        r["inputs"]["T"] = cfg.T;
        r["inputs"]["M"] = cfg.M;
    }
    Checks checks;
    json results = json::object();
    if (all || cfg.suite == "algebra") suite_algebra(f, checks, results);
    if (all || cfg.suite == "lfunction") suite_lfunction(f, checks, results);
    if (all || cfg.suite == "zeros") suite_zeros(f, 20.0, checks, results);
    if (all || cfg.suite == "local") suite_local(f, checks, results);
    if (all || cfg.suite == "identity") suite_identity(f, cfg, checks, results);
    r["results"] = results;
    finish(r, checks);
    return emit(cfg, r, out, err);
}

}  // namespace

json defaults_table() {
    json d;
    d["version"] = 1;
    d["exp_decomposition"] = 1e-12;
    d["twist_coefficient_decomposition"] = 1e-9;
    d["funceq_relative"] = 1e-10;
    d["funceq_twist_relative"] = 1e-8;
    d["dfunceq"] = 1e-10;
    d["d_overlap"] = 1e-7;
    d["laurent"] = 1e-5;
    d["refinement"] = 1e-9;
    d["twist_overlap"] = 1e-6;
    d["mult_twist_overlap"] = 1e-7;
    d["pole_window"] = 2.0;
    d["pole_location"] = 1e-6;
    d["rankin_interval"] = {0.85, 1.15};
    d["tail_dominance_factor"] = 10.0;
    d["gap_constancy"] = 1e-10;
    d["ibp"] = 1e-8;
    d["psi_prime"] = 1e-8;
    d["a_mellin"] = 1e-5;
    d["b_fit_slack"] = 0.5;
    d["g_large"] = 1e-8;
    return d;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Numerical laboratory for simple zeros of degree-2 L-functions", "szlab"};
    app.require_subcommand(1);
    auto* src = app.add_option("--newform", cfg.newform_path, "newform coefficient file");
    auto* dflag = app.add_flag("--delta", cfg.delta, "use the built-in Ramanujan Delta");
    src->excludes(dflag);
    app.add_option("--out", cfg.out, "write the report to this path");
    app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--tol", cfg.tol, "quadrature/tail tolerance")->check(CLI::PositiveNumber);
    app.add_option("--nmax", cfg.nmax, "coefficients to generate or print")->check(CLI::PositiveNumber);

    auto* coeffs = app.add_subcommand("coeffs", "print a(n), c_f(n) or l(n)");
    coeffs->add_option("--series", cfg.series, "a, c or l");
    auto* zeros = app.add_subcommand("zeros", "critical-line zeros with certification");
    zeros->add_option("--tmax", cfg.tmax, "largest ordinate")->required();
    auto* local = app.add_subcommand("local", "local Euler factor data, pole inheritance, Rankin average");
    local->add_option("--q", cfg.q, "prime");
    local->add_flag("--rankin", cfg.rankin, "Rankin-Selberg average instead of a single prime");
    local->add_option("--X", cfg.X, "bound for --rankin")->check(CLI::PositiveNumber);
    local->add_flag("--inherit", cfg.inherit, "measure the pole of D_f(s, 1/q) at the first local zero");
    auto* twist = app.add_subcommand("twist", "additive and multiplicative twists of D_f");
    twist->add_option("--q", cfg.q, "prime");
    twist->add_option("--s", cfg.s, "evaluation point re or re,im");
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", cfg.suite, "algebra, lfunction, zeros, local, identity or all")->required();
    verify->add_option("--alpha", cfg.alpha, "rational alpha for the identity suite");
    verify->add_option("--T", cfg.T, "residue height for the identity suite")->check(CLI::PositiveNumber);
    verify->add_option("--M", cfg.M, "expansion order for the identity suite")->check(CLI::NonNegativeNumber);
    auto* rankin = app.add_subcommand("rankin", "Rankin-Selberg average over primes up to X");
    rankin->add_option("--X", cfg.X, "bound")->check(CLI::PositiveNumber);
    for (auto* sub : {coeffs, zeros, local, twist, verify, rankin}) sub->fallthrough();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        if (cfg.command == "coeffs") return cmd_coeffs(cfg, out, err);
        if (cfg.command == "zeros") return cmd_zeros(cfg, out, err);
        if (cfg.command == "local") return cmd_local(cfg, out, err);
        if (cfg.command == "twist") return cmd_twist(cfg, out, err);
        if (cfg.command == "verify") return cmd_verify(cfg, out, err);
        if (cfg.command == "rankin") return cmd_rankin(cfg, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const InvariantError& e) {
        err << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kNumerical;
    }
    return kUsage;
}

}  // namespace szlab::cli

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "oracles.hpp"
#include "szlab/arith.hpp"
#include "szlab/character.hpp"
#include "szlab/dirichlet_algebra.hpp"
#include "szlab/euler_local.hpp"
#include "szlab/lfunction.hpp"
#include "szlab/newform.hpp"
#include "szlab/twists.hpp"
#include "szlab/zeros.hpp"

using namespace szlab;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

int failures = 0;

// Runs one criterion. A positive limit makes the wall time part of the verdict.
void criterion(int id, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string timing = fmt("%.2f s", secs);
    if (limit_s > 0) {
        timing += fmt(", limit %.0f s", limit_s);
        if (secs >= limit_s) {
            o.pass = false;
            o.detail += "; over time limit";
        }
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %d: %s [%s]\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
}

const Newform& delta() {
    static const Newform D = delta_coefficients(20000);
    return D;
}

double worst_funceq(const Newform& f) {
    double worst = 0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 10; ++j) worst = std::max(worst, funceq_residual(f, cplx(2.0 + 2.0 * i, -30.0 + 60.0 * j / 9.0)));
    return worst;
}

std::string cli_output(const std::vector<std::string>& args, int& code) {
    std::ostringstream out, err;
    code = cli::run(args, out, err);
    return out.str();
}

}  // namespace

int main() {
    criterion(1, 5.0, [] {
        const auto tau = delta_exact(5000);
        std::map<int, Int128> primes;
        for (int p : primes_up_to(5000)) primes[p] = tau[p];
        const auto ext = hecke_extend_exact(primes, 12, 1, 5000);
        int mismatches = 0;
        for (int n = 1; n <= 5000; ++n) mismatches += ext[n] != tau[n];
        return Outcome{mismatches == 0, "Hecke extension vs eta product, n <= 5000: " + std::to_string(mismatches) +
                                            " mismatches (required 0)"};
    });

    criterion(2, 30.0, [] {
        const double d = worst_funceq(delta());
        const Newform t = twist_newform(delta(), character_table(5)[2]);
        const double tw = worst_funceq(t);
        const double eps_err = std::abs(t.root_number() - 1.0);
        return Outcome{d < 1e-10 && tw < 1e-8 && t.level() == 25,
                       fmt("Delta worst %.2e (< 1e-10)", d) + fmt(", Delta x chi_5 worst %.2e (< 1e-8)", tw) +
                           fmt(", |eps_twist - 1| = %.1e", eps_err) + ", level " + std::to_string(t.level())};
    });

    criterion(3, 60.0, [] {
        const auto zs = scan_zeros(delta(), 0.0, 20.0, 0.05);
        bool certified = !zs.empty();
        for (const auto& z : zs) certified = certified && z.refinement_error < 1e-9 && z.winding == 1;
        const int count = count_zeros(delta(), 20.0).count;

        const oracle::ThetaLambda L(oracle::to_double(oracle::eta_product(200)), 12);
        const auto ref = oracle::sign_change_roots([&](double t) { return L.central(t); }, 0.0, 20.0, 1e-3);
        double worst = ref.size() == zs.size() ? 0.0 : 1e300;
        for (std::size_t i = 0; i < std::min(ref.size(), zs.size()); ++i) worst = std::max(worst, std::abs(zs[i].t - ref[i]));

        std::string ords;
        for (const auto& z : zs) ords += (ords.empty() ? "" : ", ") + fmt("%.10f", z.t);
        const bool literal = count == 3 && zs.size() == 3;
        return Outcome{literal && certified && worst < 1e-8,
                       "ordinates [" + ords + "], all simple and refined < 1e-9: " + (certified ? "yes" : "no") +
                           ", count_zeros(20) = " + std::to_string(count) + " (required 3)" +
                           fmt(", oracle max deviation %.1e", worst) + " over " + std::to_string(ref.size()) +
                           " oracle zeros"};
    });

    criterion(4, 0, [] {
        const auto c = d_coefficients(delta(), delta().n_max());
        double overlap = 0;
        for (cplx s : {cplx(8.0, 0.0), cplx(8.0, 5.0)}) overlap = std::max(overlap, std::abs(d_value(delta(), s) - c.evaluate(s)));
        const auto zs = scan_zeros(delta(), 0.0, 12.0, 0.05);
        const cplx rho = polish_zero(delta(), zs.at(0).rho);
        const cplx lp = l_derivatives(delta(), rho).first;
        double laurent = 0;
        for (int j = 0; j < 4; ++j) {
            const cplx h = 1e-6 * std::polar(1.0, pi / 2 * j + pi / 4);
            laurent = std::max(laurent, std::abs(h * d_value(delta(), rho + h) + lp) / std::abs(lp));
        }
        return Outcome{overlap < 1e-7 && laurent < 1e-5,
                       fmt("D series overlap %.2e (< 1e-7)", overlap) +
                           fmt(", Laurent relative error %.2e (< 1e-5) over 4 directions at |h| = 1e-6", laurent)};
    });

    criterion(5, 0, [] {
        double exp_worst = 0;
        for (int q : primes_up_to(101)) exp_worst = std::max(exp_worst, exp_decomposition_check(q));
        int chu = 0;
        for (int m = 0; m <= 10; ++m)
            for (int k = 1; k <= 20; ++k) chu += chu_vandermonde_check(m, k) ? 0 : 1;
        int nonzero = 0;
        for (int M = 1; M <= 8; ++M) {
            const auto q = dirichlet_primes(1, 1, M);
            for (int m0 = 0; m0 < M; ++m0)
                for (const auto& r : vandermonde_residual(q, m0, vandermonde_solve(q, m0))) nonzero += r != 0;
        }
        return Outcome{exp_worst < 1e-12 && chu == 0 && nonzero == 0,
                       fmt("e(n/q) decomposition worst %.1e (< 1e-12)", exp_worst) + ", Chu-Vandermonde failures " +
                           std::to_string(chu) + ", nonzero Vandermonde residuals " + std::to_string(nonzero)};
    });

    criterion(6, 120.0, [] {
        bool ok = true;
        std::string detail;
        for (int q : {2, 3, 5}) {
            const auto st = pole_inheritance(delta(), q, {1e-2, 1e-3, 1e-4});
            const double loc = std::abs(st.s0_located - st.s0_local);
            ok = ok && st.window_ratio < 2.0 && loc < 1e-6;
            detail += (detail.empty() ? "" : "; ") + std::string("q=") + std::to_string(q) +
                      fmt(" s0 = 5.5 + %.6fi", st.s0_local.imag()) + fmt(", window %.4f (< 2)", st.window_ratio) +
                      fmt(", location %.1e (< 1e-6)", loc);
        }
        return Outcome{ok, detail};
    });

    const IdentityLab lab(delta_coefficients(5000));

    criterion(7, 0, [&] {
        const cplx z(0.3, 0.2);
        const double r15 = lab.main_identity(z, 15.0).residual;
        const double r25 = lab.main_identity(z, 25.0).residual;
        const cplx L = std::log(cplx(0.0, -1.0) * z);
        double t_first = 1e300;
        for (const auto& r : lab.residues(31.0))
            if (std::abs(r.rho.imag()) > 25.0) t_first = std::min(t_first, std::abs(r.rho.imag()));
        double omitted = 0;
        for (const auto& r : lab.residues(31.0))
            if (std::abs(std::abs(r.rho.imag()) - t_first) < 1e-9) omitted += std::abs(r.residue * std::exp(-r.rho * L));
        const double ratio = r25 / omitted;
        // 22.34 < 23 < 25 < 25.2 < 25.27: same residue set
        const double gap = std::max(std::abs(lab.main_identity(z, 23.0).residual - r25),
                                    std::abs(lab.main_identity(z, 25.2).residual - r25));
        return Outcome{r25 < r15 && ratio > 0.1 && ratio < 10.0 && gap < 1e-10,
                       fmt("residual(15) = %.3f", r15) + fmt(", residual(25) = %.3f", r25) +
                           fmt(", first omitted pair (t = %.4f)", t_first) + fmt(" %.3f", omitted) + fmt(", ratio %.3f (in [0.1, 10])", ratio) +
                           fmt(", change between ordinates %.1e (< 1e-10)", gap)};
    });

    criterion(8, 0, [] {
        double ibp = 0;
        for (int m = 0; m <= 4; ++m)
            for (int n = 1; n <= 10; ++n) ibp = std::max(ibp, ibp_expansion_check(12, Rational(1, 3), 9.0, m, n).residual);
        std::string psi;
        bool psi_ok = false;
        try {
            const double r = phi_mellin_check(12, 9.0);
            psi_ok = r < 1e-8;
            psi = fmt("psi' check at s = 9: %.1e (< 1e-8)", r);
        } catch (const DomainError& e) {
            psi = std::string("psi' check at s = 9: ") + e.what();
        }
        psi += fmt("; at s = 13: %.1e", phi_mellin_check(12, 13.0));
        return Outcome{ibp < 1e-8 && psi_ok, fmt("IBP worst %.1e (< 1e-8), ", ibp) + psi};
    });

    criterion(9, 0, [&] {
        const Rational third(1, 3);
        const double a = 1.0 / 3.0;
        const std::vector<double> ys{a / 8, a / 16, a / 32};
        bool ok = true;
        std::string detail;
        for (int M : {8, 9, 10}) {
            std::vector<double> r;
            for (double y : ys) r.push_back(fbar_expansion_residual(lab, third, y, M));
            const double slope = loglog_slope(ys, r);
            ok = ok && slope >= M - 7;
            detail += (detail.empty() ? "" : ", ") + std::string("M=") + std::to_string(M) +
                      fmt(" slope %.2f", slope) + " (>= " + std::to_string(M - 7) + ")";
        }
        return Outcome{ok, detail};
    });

    criterion(10, 10.0, [] {
        const double mean = rankin_average(delta(), 10000);
        const double frac = abundance_report(delta(), 10000);
        return Outcome{mean > 0.85 && mean < 1.15 && frac == 1.0,
                       fmt("mean %.5f (in (0.85, 1.15))", mean) + fmt(", strict Deligne fraction %.4f (= 1)", frac)};
    });

    criterion(11, 0, [] {
        const std::vector<std::string> base{"szlab", "verify", "--suite", "all", "--delta"};
        int c1 = 0, c2 = 0, c3 = 0;
        const std::string a = cli_output(base, c1);
        const std::string b = cli_output(base, c2);
        auto threaded = base;
        threaded.insert(threaded.end(), {"--threads", "4"});
        const std::string c = cli_output(threaded, c3);
        const bool same = a == b && b == c && !a.empty();
        return Outcome{same, std::string("verify --suite all twice and with 4 threads: ") +
                                 (same ? "byte-identical" : "reports differ") + ", " + std::to_string(a.size()) +
                                 " bytes, exit codes " + std::to_string(c1) + "/" + std::to_string(c2) + "/" +
                                 std::to_string(c3)};
    });

    std::printf("%d of 11 criteria passed\n", 11 - failures);
    return failures == 0 ? 0 : 1;
}

#pragma once

#include <array>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "szlab/dirichlet_algebra.hpp"
#include "szlab/lfunction.hpp"
#include "szlab/phi_series.hpp"
#include "szlab/rational.hpp"
#include "szlab/zeros.hpp"

namespace szlab {

/// Parses "p/q" or "p" into a rational; ParseError otherwise.
Rational parse_rational(const std::string& text);

/// e(alpha n) with the fractional part reduced exactly.
cplx additive_character(const Rational& alpha, long long n);

/// z = alpha + i y with rational alpha != 0 and y > 0.
struct UpperHalfPoint {
    Rational alpha;
    double y = 0.0;

    UpperHalfPoint(Rational a, double y_);
    double a() const { return static_cast<double>(alpha); }
    cplx z() const { return {a(), y}; }
    double u() const { return y / a(); }
    /// The expansion lemmas need y <= |alpha|/4; DomainError otherwise.
    void require_expansion_range() const;
};

struct TruncationSpec {
    double T = 25.0;     // residues with |Im rho| <= T
    int M = 8;           // expansion order
    int n_cut = 0;       // 0 = chosen from the tail bound
    double quad_tol = 1e-10;
};

enum class TwistKind { L, D };

struct TwistValue {
    cplx value;
    double tail_estimate = 0.0;
    int n_cut = 0;
};

/// sum_{n <= n_cut} coeff(n) e(alpha n) n^{-s}. The tail is estimated as
/// the root-mean-square size of the omitted terms, with d(n) replaced by its
/// average order. DomainError if Re s <= (k+2)/2; ConvergenceError if the
/// estimate exceeds tail_tol or n_cut exceeds the available coefficients.
TwistValue additive_twist(TwistKind kind, const Newform& f, cplx s, const Rational& alpha, int n_cut,
                          double tail_tol = 1e-6);
/// Same, on precomputed coefficients (a_f or c_f) of a weight-k form.
TwistValue additive_twist(const DirichletSeriesCoeffs& coeffs, TwistKind kind, int weight, cplx s,
                          const Rational& alpha, int n_cut, double tail_tol = 1e-6);

/// D-series of f twisted by chi: d_value of the twisted newform.
cplx mult_twist_D(const Newform& f, const DirichletCharacter& chi, cplx s, const EvalSettings& settings = {});
/// Direct series sum_{n <= n_cut} c_f(n) chi(n) n^{-s}.
cplx mult_twist_D_series(const Newform& f, const DirichletCharacter& chi, cplx s, int n_cut);

/// D_f(s, 1/q) = D_f(s) - q/(q-1) D^{(q)}(s) + 1/(q-1) sum_{chi != chi0} tau(conj chi) D_{f x chi}(s),
/// with the twisted forms built once.
class AdditiveTwistContinuation {
public:
    AdditiveTwistContinuation(const Newform& f, int q);
    cplx operator()(cplx s, const EvalSettings& settings = {}) const;
    int modulus() const { return q_; }

private:
    const Newform* f_;
    int q_;
    std::vector<Newform> twisted_;
    std::vector<cplx> weights_;  // tau(conj chi) / (q - 1)
};

cplx d_additive_via_characters(const Newform& f, int q, cplx s, const EvalSettings& settings = {});

struct PoleStudy {
    int q = 0;
    cplx s0_local;               // from the local Euler factor
    cplx s0_located;             // secant iteration on 1 / D_f(s, 1/q)
    std::vector<double> distances;
    std::vector<double> magnitudes;  // |D_f(s0 + d, 1/q)|
    std::vector<double> products;    // magnitude * distance
    double window_ratio = 0.0;       // max(products) / min(products)
    bool square_factor = false;
};

/// Approaches the first local zero 11/2 + i theta_q / log q (for Delta) of the
/// Euler factor at q along the real direction and measures the blow-up.
PoleStudy pole_inheritance(const Newform& f, int q, const std::vector<double>& distances,
                           const EvalSettings& settings = {});

struct MainIdentityTerms {
    cplx F, A, fbar_transform, B_residues, B_line;
    double residual = 0.0;
    int zeros_used = 0;
};

struct IbpCheck {
    cplx lhs, rhs;
    double residual = 0.0;
};

struct GDecayReport {
    std::vector<double> ys;
    std::vector<double> g_raw;        // |g(y)| as defined, residue tail included
    std::vector<double> g_truncated;  // |g(y)| minus the residue tail above T
    double slope_raw = 0.0;
    double slope_truncated = 0.0;
    double g_large = 0.0;  // |g(4)|
};

/// The identity apparatus for one form: F, its dual, A, B_T and the
/// expansions used along Re z = alpha. Coefficient tables are computed once;
/// zero/residue data are cached per height.
class IdentityLab {
public:
    explicit IdentityLab(const Newform& f, const EvalSettings& settings = {}, double quad_tol = 1e-10,
                         int threads = 1);

    const Newform& form() const { return f_; }
    const Newform& dual_form() const { return fbar_; }
    const DirichletSeriesCoeffs& c() const { return c_; }
    const DirichletSeriesCoeffs& cbar() const { return cbar_; }
    double quad_tol() const { return quad_tol_; }

    /// F(z) = sum c_f(n) e(nz), truncated by a rigorous tail bound.
    TwistValue F(cplx z) const;
    TwistValue Fbar(cplx z) const;
    /// eps (-i sqrt N z)^{-k} Fbar(-1/(N z))
    cplx fbar_transform(cplx z) const;
    /// A(z) = sum a(n) int_1^inf phi(x) e(n x z) dx.
    cplx A(cplx z) const;
    /// Residue part of B_T(z).
    cplx B_residues(cplx z, double T) const;
    /// (1/2 pi i) int_{Re s = k - 1/2} pi^2/sin^2(pi s) Lambda_f(s) (-iz)^{-s} ds.
    cplx B_line(cplx z) const;
    cplx B(cplx z, double T) const { return B_residues(z, T) + B_line(z); }
    MainIdentityTerms main_identity(cplx z, double T) const;

    /// Residues with |Im rho| <= T, T nudged off zero ordinates.
    std::vector<ResiduePoint> residues(double T) const;

    /// The m < M inner-sum terms of the expansion of fbar_transform at alpha + i y.
    cplx fbar_main_terms(const UpperHalfPoint& p, int M) const;
    /// The m >= M remainder, summed directly.
    cplx fbar_remainder(const UpperHalfPoint& p, int M) const;

    /// P_0 .. P_{M-1} with B_T(alpha + i y) = sum P_j y^j + O(y^M).
    std::vector<cplx> b_taylor_coeffs(const Rational& alpha, int M, double T) const;

    /// Mellin side of A along Re z = alpha against its IBP expansion.
    double a_mellin_expansion_check(const Rational& alpha, cplx s, int m) const;

    GDecayReport g_decay(const Rational& alpha, int M, double T, const std::vector<double>& ys) const;

private:
    Newform f_;
    Newform fbar_;
    EvalSettings settings_;
    double quad_tol_;
    int threads_;
    DirichletSeriesCoeffs a_, c_, cbar_;
    PhiEvaluator phi0_;
    mutable std::mutex cache_mutex_;
    mutable std::optional<std::pair<double, std::vector<ResiduePoint>>> residue_cache_;

    TwistValue f_series(const DirichletSeriesCoeffs& c, cplx z) const;
    cplx a_term(int n, cplx z) const;
    int a_cutoff(double y, double scale) const;
};

TwistValue F_value(const Newform& f, const UpperHalfPoint& z, double quad_tol = 1e-10);
cplx A_value(const Newform& f, const UpperHalfPoint& z, double quad_tol = 1e-10);
cplx B_value(const Newform& f, const UpperHalfPoint& z, double T, const EvalSettings& settings = {});
double main_identity_residual(const Newform& f, const UpperHalfPoint& z, double T,
                              const EvalSettings& settings = {});

/// int_1^inf phi_m(x, s) e(alpha n x) x^{-s-m} dx along x = 1 + i sgn(alpha) tau,
/// which continues the real-line integral to every s.
cplx phi_oscillatory_integral(const PhiEvaluator& phi, int m, const Rational& alpha, long long n, cplx s,
                              double quad_tol = 1e-12);

/// Integration-by-parts expansion of int_1^inf phi(x) e(alpha n x) x^{-s} dx to order m.
IbpCheck ibp_expansion_check(int k, const Rational& alpha, cplx s, int m, long long n, double quad_tol = 1e-12);

/// |int_1^inf phi(x) x^{-s} dx - (psi'(s) + psi'(s+1-k))|. The integral
/// converges only for Re s > k - 1 (DomainError otherwise).
double phi_mellin_check(int k, cplx s, double quad_tol = 1e-12);

/// |eps (-i sqrt N z)^{-k} Fbar(-1/(Nz)) - main terms| for z = alpha + i y.
double fbar_expansion_residual(const IdentityLab& lab, const Rational& alpha, double y, int M);

/// Exact comparison of the u^d c^j coefficients (d <= max_degree) of
/// (1+iu)^{-k} exp(i c u^2/(1+iu)) and sum_m (-iu)^m sum_j binom(m+k-1, m-j) (-cu)^j / j!.
/// Returns the number of mismatching coefficients.
int fbar_kernel_mismatches(int k, int max_degree);

/// Least-squares slope of log|v| against log y.
double loglog_slope(const std::vector<double>& ys, const std::vector<double>& values);

}  // namespace szlab

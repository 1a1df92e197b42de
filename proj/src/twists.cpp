#include "szlab/twists.hpp"

#include <algorithm>
#include <numeric>
#include <regex>

#include "szlab/arith.hpp"
#include "szlab/character.hpp"
#include "szlab/euler_local.hpp"
#include "szlab/parallel.hpp"
#include "szlab/quadrature.hpp"
#include "szlab/special_functions.hpp"

namespace szlab {

Rational parse_rational(const std::string& text) {
    static const std::regex re(R"(^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw ParseError("not a rational number: '" + text + "'", 0);
    const BigInt num(m[1].str());
    const BigInt den(m[2].matched ? m[2].str() : std::string("1"));
    if (den == 0) throw ParseError("zero denominator in '" + text + "'", 0);
    return Rational(num, den);
}

cplx additive_character(const Rational& alpha, long long n) {
    const BigInt den = boost::multiprecision::denominator(alpha);
    BigInt r = (boost::multiprecision::numerator(alpha) * n) % den;
    if (r < 0) r += den;
    return expi2pi(static_cast<double>(r) / static_cast<double>(den));
}

UpperHalfPoint::UpperHalfPoint(Rational a, double y_) : alpha(std::move(a)), y(y_) {
    if (alpha == 0) throw DomainError("UpperHalfPoint: alpha must be nonzero");
    if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("UpperHalfPoint: y must be positive");
}

void UpperHalfPoint::require_expansion_range() const {
    if (y > std::abs(a()) / 4 * (1 + 1e-12)) throw DomainError("expansion needs y <= |alpha|/4");
}

// ---------------------------------------------------------------- twists

namespace {

// Gamma(p+1, x) for integer p >= 0.
double upper_gamma_int(int p, double x) {
    double term = 1.0, sum = 1.0;
    for (int i = 1; i <= p; ++i) {
        term *= x / i;
        sum += term;
    }
    return std::exp(std::lgamma(p + 1.0) - x) * sum;
}

}  // namespace

TwistValue additive_twist(const DirichletSeriesCoeffs& coeffs, TwistKind kind, int weight, cplx s,
                          const Rational& alpha, int n_cut, double tail_tol) {
    const double sigma = s.real();
    if (sigma <= (weight + 2) / 2.0) throw DomainError("additive_twist: Re s inside the convergence margin");
    if (n_cut < 1) throw DomainError("additive_twist: n_cut must be positive");
    if (n_cut > coeffs.n_max()) throw ConvergenceError("additive_twist: n_cut exceeds the available coefficients");
    // mean square of c(n)/n^{(k-1)/2} is O(1) for L and O(log^4 n) for D
    const double mu = 2 * sigma - weight;
    const int p = kind == TwistKind::L ? 0 : 4;
    const double tail = std::sqrt(upper_gamma_int(p, mu * std::log(static_cast<double>(n_cut))) / std::pow(mu, p + 1));
    if (tail > tail_tol) throw ConvergenceError("additive_twist: tail estimate above tolerance, raise n_cut");
    cplx acc = 0.0;
    for (int n = 1; n <= n_cut; ++n)
        if (coeffs[n] != 0.0) acc += coeffs[n] * additive_character(alpha, n) * std::exp(-s * std::log(double(n)));
    return {acc, tail, n_cut};
}

TwistValue additive_twist(TwistKind kind, const Newform& f, cplx s, const Rational& alpha, int n_cut,
                          double tail_tol) {
    if (n_cut > f.n_max()) throw ConvergenceError("additive_twist: n_cut exceeds the form's n_max");
    const auto coeffs = kind == TwistKind::L ? coefficients_of(f, n_cut) : d_coefficients(f, n_cut);
    return additive_twist(coeffs, kind, f.weight(), s, alpha, n_cut, tail_tol);
}

cplx mult_twist_D(const Newform& f, const DirichletCharacter& chi, cplx s, const EvalSettings& settings) {
    if (chi.is_trivial()) throw DomainError("mult_twist_D: character must be nontrivial");
    return d_value(twist_newform(f, chi), s, settings);
}

cplx mult_twist_D_series(const Newform& f, const DirichletCharacter& chi, cplx s, int n_cut) {
    return d_coefficients(f, n_cut).twisted(chi).evaluate(s);
}

AdditiveTwistContinuation::AdditiveTwistContinuation(const Newform& f, int q) : f_(&f), q_(q) {
    if (!is_prime(q)) throw DomainError("AdditiveTwistContinuation: q must be prime");
    if (f.level() % q == 0) throw DomainError("AdditiveTwistContinuation: q divides the level");
    const auto table = character_table(q);
    for (std::size_t i = 1; i < table.size(); ++i) {
        twisted_.push_back(twist_newform(f, table[i]));
        weights_.push_back(gauss_sum(table[i].conj()) / double(q - 1));
    }
}

cplx AdditiveTwistContinuation::operator()(cplx s, const EvalSettings& settings) const {
    cplx v = d_value(*f_, s, settings) - double(q_) / (q_ - 1) * d_chi0(*f_, q_, s, settings);
    for (std::size_t i = 0; i < twisted_.size(); ++i) v += weights_[i] * d_value(twisted_[i], s, settings);
    return v;
}

cplx d_additive_via_characters(const Newform& f, int q, cplx s, const EvalSettings& settings) {
    return AdditiveTwistContinuation(f, q)(s, settings);
}

PoleStudy pole_inheritance(const Newform& f, int q, const std::vector<double>& distances,
                           const EvalSettings& settings) {
    PoleStudy st;
    st.q = q;
    const LocalFactor lf = local_factor(f, q);
    st.square_factor = lf.is_square;
    const auto zs = local_zeros(lf, 1e-9, two_pi / std::log(double(q)) + 1.0);
    if (zs.empty()) throw DomainError("pole_inheritance: no local zero found");
    st.s0_local = zs.front().s;

    const AdditiveTwistContinuation cont(f, q);
    // a PoleError means the iterate already sits on the pole to working precision
    auto inv = [&](cplx s) {
        try {
            return 1.0 / cont(s, settings);
        } catch (const PoleError&) {
            return cplx(0.0);
        }
    };
    cplx s0 = st.s0_local + cplx(1e-3, 0.0), s1 = st.s0_local + cplx(0.0, 1e-3);
    cplx g0 = inv(s0), g1 = inv(s1);
    for (int it = 0; it < 50 && std::abs(s1 - s0) > 1e-14; ++it) {
        if (g1 == 0.0 || g1 == g0) break;
        const cplx s2 = s1 - g1 * (s1 - s0) / (g1 - g0);
        s0 = s1;
        g0 = g1;
        s1 = s2;
        g1 = inv(s1);
    }
    st.s0_located = s1;

    for (double d : distances) {
        const double mag = std::abs(cont(st.s0_local + d, settings));
        st.distances.push_back(d);
        st.magnitudes.push_back(mag);
        st.products.push_back(mag * d);
    }
    if (!st.products.empty()) {
        const auto [lo, hi] = std::minmax_element(st.products.begin(), st.products.end());
        st.window_ratio = *hi / *lo;
    }
    return st;
}

// ---------------------------------------------------------------- identity lab

namespace {

// Peak-then-geometric truncation: smallest N with sum_{n > N} term(n) < tol.
template <class Term>
int truncation_point(Term term, double tol, int n_limit, const char* what) {
    std::vector<double> t{0.0};
    double prev = 0.0;
    for (int n = 1;; ++n) {
        const double v = term(n);
        t.push_back(v);
        const bool falling = n > 2 && v < prev;
        if (falling && v < 1e-6 * tol * (1 - v / prev)) break;
        if (n > 50 * std::max(n_limit, 1000)) throw ConvergenceError(std::string(what) + ": tail bound does not decay");
        prev = v;
    }
    double tail = 0.0;
    int N = static_cast<int>(t.size()) - 1;
    while (N > 0 && tail + t[N] < tol) tail += t[N--];
    if (N > n_limit)
        throw ConvergenceError(std::string(what) + ": needs " + std::to_string(N) + " coefficients, have " +
                               std::to_string(n_limit));
    return std::max(N, 1);
}

cplx log_minus_iz(cplx z) { return std::log(cplx(0.0, -1.0) * z); }

}  // namespace

IdentityLab::IdentityLab(const Newform& f, const EvalSettings& settings, double quad_tol, int threads)
    : f_(f),
      fbar_(dual(f)),
      settings_(settings),
      quad_tol_(quad_tol),
      threads_(threads),
      a_(coefficients_of(f, f.n_max())),
      c_(d_coefficients(f, f.n_max())),
      cbar_(f.is_self_dual() ? c_ : d_coefficients(fbar_, f.n_max())),
      phi0_(f.weight(), 0) {}

TwistValue IdentityLab::f_series(const DirichletSeriesCoeffs& c, cplx z) const {
    const double y = z.imag();
    if (!(y > 0)) throw DomainError("F: point must lie in the upper half-plane");
    const int k = f_.weight();
    // |c_f(n)| <= 2 d(n)^2 n^{(k-1)/2} log^2 n <= 8 n^{(k+1)/2} log^2 n
    auto bound = [&](int n) {
        const double ln = std::log(double(n));
        return 8.0 * std::pow(double(n), (k + 1) / 2.0) * ln * ln * std::exp(-two_pi * n * y);
    };
    const int N = truncation_point(bound, quad_tol_, c.n_max(), "F");
    cplx acc = 0.0;
    for (int n = 1; n <= N; ++n)
        if (c[n] != 0.0) acc += c[n] * expi2pi(n * z.real()) * std::exp(-two_pi * n * y);
    double tail = 0.0;
    for (int n = N + 1; n <= N + 10000; ++n) {
        const double b = bound(n);
        tail += b;
        if (b < 1e-6 * tail) break;
    }
    return {acc, tail, N};
}

TwistValue IdentityLab::F(cplx z) const { return f_series(c_, z); }
TwistValue IdentityLab::Fbar(cplx z) const { return f_series(cbar_, z); }

cplx IdentityLab::fbar_transform(cplx z) const {
    const double N = f_.level();
    const cplx w = -1.0 / (N * z);
    return f_.root_number() * std::pow(cplx(0.0, -std::sqrt(N)) * z, -f_.weight()) * Fbar(w).value;
}

cplx IdentityLab::a_term(int n, cplx z) const {
    // int_1^inf phi(x) e(n x z) dx along x = 1 + d r, d = i conj(z)/|z|,
    // where e(n x z) = e(n z) exp(-2 pi n |z| r); r = rho / lambda
    const double az = std::abs(z);
    const cplx d = cplx(0.0, 1.0) * std::conj(z) / az;
    const double lambda = two_pi * n * az;
    const cplx ez = expi2pi(n * z.real()) * std::exp(-two_pi * n * z.imag());
    const double weight = std::abs(a_[n]) * std::abs(ez);
    QuadOptions opt;
    opt.rel_tol = 1e-13;
    opt.abs_tol = quad_tol_ / std::max(1.0, 1e3 * weight / lambda);
    auto g = [&](double rho) { return phi0_(0, 1.0 + d * (rho / lambda), 0.0) * std::exp(-rho); };
    const QuadResult r = integrate_to_infinity(g, 0.0, 2.0, opt);
    return d * ez * r.value / lambda;
}

int IdentityLab::a_cutoff(double y, double az) const {
    const int k = f_.weight();
    // |a(n)| <= 2 sqrt(n) n^{(k-1)/2}; |phi(1 + w)| <= |1 + w|^{k-1} + 1 for Re w >= 0
    auto bound = [&](int n) {
        const double lambda = two_pi * n * az;
        double j = 1.0 / lambda, fact = 1.0;
        for (int i = 0; i <= k - 1; ++i) {
            if (i > 0) fact *= i;
            j += static_cast<double>(binomial(k - 1, i)) * fact / std::pow(lambda, i + 1);
        }
        return 2.0 * std::pow(double(n), k / 2.0) * std::exp(-two_pi * n * y) * j;
    };
    return truncation_point(bound, quad_tol_, a_.n_max(), "A");
}

cplx IdentityLab::A(cplx z) const {
    if (!(z.imag() > 0)) throw DomainError("A: point must lie in the upper half-plane");
    const int N = a_cutoff(z.imag(), std::abs(z));
    const auto terms = parallel_map<cplx>(static_cast<std::size_t>(N), threads_, [&](std::size_t i) {
        const int n = static_cast<int>(i) + 1;
        return a_[n] == 0.0 ? cplx(0.0) : a_[n] * a_term(n, z);
    });
    cplx acc = 0.0;
    for (const cplx& t : terms) acc += t;
    return acc;
}

std::vector<ResiduePoint> IdentityLab::residues(double T) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (!residue_cache_ || residue_cache_->first < T + 0.5)
        residue_cache_.emplace(T + 1.0, residue_set(f_, T + 1.0, settings_));
    const auto& all = residue_cache_->second;
    double h = T;
    for (int attempt = 0; attempt < 5; ++attempt) {
        bool close = false;
        for (const auto& r : all) close = close || std::abs(std::abs(r.rho.imag()) - h) < 1e-6;
        if (!close) break;
        h += 0.01;
    }
    std::vector<ResiduePoint> out;
    for (const auto& r : all)
        if (std::abs(r.rho.imag()) <= h) out.push_back(r);
    return out;
}

cplx IdentityLab::B_residues(cplx z, double T) const {
    const cplx L = log_minus_iz(z);
    cplx acc = 0.0;
    for (const auto& r : residues(T)) acc += r.residue * std::exp(-r.rho * L);
    return acc;
}

cplx IdentityLab::B_line(cplx z) const {
    const cplx L = log_minus_iz(z);
    const double sigma = f_.weight() - 0.5;
    auto g = [&](double t) {
        cplx acc = 0.0;
        for (double sgn : {1.0, -1.0}) {
            const cplx s(sigma, sgn * t);
            acc += reflection_kernel(s) * lambda_complete(f_, s, settings_) * std::exp(-s * L);
        }
        return acc / two_pi;
    };
    QuadOptions opt;
    opt.abs_tol = quad_tol_ * 1e-2;
    return integrate_to_infinity(g, 0.0, 1.0, opt).value;
}

MainIdentityTerms IdentityLab::main_identity(cplx z, double T) const {
    MainIdentityTerms m;
    m.F = F(z).value;
    m.A = A(z);
    m.fbar_transform = fbar_transform(z);
    m.B_residues = B_residues(z, T);
    m.B_line = B_line(z);
    m.zeros_used = static_cast<int>(residues(T).size());
    m.residual = std::abs(m.F + m.A - m.fbar_transform - m.B_residues - m.B_line);
    return m;
}

namespace {

struct FbarGeometry {
    double u, v;
    cplx prefactor;
    Rational beta;
};

FbarGeometry fbar_geometry(const Newform& f, const UpperHalfPoint& p) {
    const double N = f.level();
    const double a = p.a();
    FbarGeometry g;
    g.u = p.u();
    g.v = p.y / (N * a * a);
    g.prefactor = f.root_number() * std::pow(cplx(0.0, -std::sqrt(N) * a), -f.weight());
    g.beta = Rational(-1) / (Rational(f.level()) * p.alpha);
    return g;
}

// S_m(x) = sum_{j <= m} binom(m+k-1, m-j) (-x)^j / j!
double kernel_inner(int m, int k, double x) {
    double b = 1.0;  // binom(m+k-1, r) for r = 0..m
    std::vector<double> binoms{1.0};
    for (int r = 0; r < m; ++r) {
        b *= double(m + k - 1 - r) / (r + 1);
        binoms.push_back(b);
    }
    double pj = 1.0, acc = 0.0;
    for (int j = 0; j <= m; ++j) {
        if (j > 0) pj *= -x / j;
        acc += binoms[m - j] * pj;
    }
    return acc;
}

}  // namespace

cplx IdentityLab::fbar_main_terms(const UpperHalfPoint& p, int M) const {
    const auto g = fbar_geometry(f_, p);
    const int k = f_.weight();
    auto bound = [&](int n) {
        const double x = two_pi * n * g.v;
        return 8.0 * std::pow(double(n), (k + 1) / 2.0) * std::pow(std::log(n + 1.0), 2) * std::exp(-x) *
               std::pow(1.0 + x, M + k);
    };
    const int N = truncation_point(bound, quad_tol_, cbar_.n_max(), "Fbar expansion");
    const cplx miu(0.0, -g.u);
    cplx acc = 0.0;
    for (int n = 1; n <= N; ++n) {
        if (cbar_[n] == 0.0) continue;
        const double x = two_pi * n * g.v;
        cplx inner = 0.0, pw = 1.0;
        for (int m = 0; m < M; ++m) {
            inner += pw * kernel_inner(m, k, x);
            pw *= miu;
        }
        acc += cbar_[n] * additive_character(g.beta, n) * std::exp(-x) * inner;
    }
    return g.prefactor * acc;
}

cplx IdentityLab::fbar_remainder(const UpperHalfPoint& p, int M) const {
    p.require_expansion_range();
    const auto g = fbar_geometry(f_, p);
    const int k = f_.weight();
    auto bound = [&](int n) {
        const double x = two_pi * n * g.v;
        return 8.0 * std::pow(double(n), (k + 1) / 2.0) * std::pow(std::log(n + 1.0), 2) *
               std::exp(-x * (1.0 - 3.0 * std::abs(g.u)));
    };
    const int N = truncation_point(bound, quad_tol_ * 1e-6, cbar_.n_max(), "Fbar remainder");
    const cplx miu(0.0, -g.u);
    const auto terms = parallel_map<cplx>(static_cast<std::size_t>(N), threads_, [&](std::size_t i) {
        const int n = static_cast<int>(i) + 1;
        if (cbar_[n] == 0.0) return cplx(0.0);
        const double x = two_pi * n * g.v;
        cplx tail = 0.0, pw = std::pow(miu, M);
        double quiet = 0;
        for (int m = M; m < M + 4000; ++m) {
            const cplx term = pw * kernel_inner(m, k, x);
            tail += term;
            // stop once terms have stayed negligible for a while
            quiet = std::abs(term) <= 1e-18 * std::abs(tail) || term == 0.0 ? quiet + 1 : 0;
            if (quiet >= 8) break;
            pw *= miu;
        }
        return cbar_[n] * additive_character(g.beta, n) * std::exp(-x) * tail;
    });
    cplx acc = 0.0;
    for (const cplx& t : terms) acc += t;
    return g.prefactor * acc;
}

std::vector<cplx> IdentityLab::b_taylor_coeffs(const Rational& alpha, int M, double T) const {
    if (alpha == 0) throw DomainError("b_taylor_coeffs: alpha must be nonzero");
    const double a = static_cast<double>(alpha);
    const double sg = a > 0 ? 1.0 : -1.0;
    const cplx ia(0.0, 1.0 / a);  // (-i alpha)^{-1}
    // (-i alpha)^{-s} = e^{i pi sgn(alpha) s / 2} |alpha|^{-s}
    auto base = [&](cplx s) { return std::exp(s * cplx(-std::log(std::abs(a)), sg * pi / 2)); };
    const auto res = residues(T);
    const double sigma = f_.weight() - 0.5;
    std::vector<cplx> P(static_cast<std::size_t>(std::max(M, 0)));
    for (int j = 0; j < M; ++j) {
        const cplx w = std::pow(ia, j);
        cplx acc = 0.0;
        for (const auto& r : res) acc += r.residue * base(r.rho) * binomial(-r.rho, j);
        auto g = [&](double t) {
            cplx v = 0.0;
            for (double sgn : {1.0, -1.0}) {
                const cplx s(sigma, sgn * t);
                v += base(s) * binomial(-s, j) * lambda_complete(f_, s, settings_) * reflection_kernel(s);
            }
            return v / two_pi;
        };
        QuadOptions opt;
        opt.abs_tol = quad_tol_ * 1e-2;
        acc += integrate_to_infinity(g, 0.0, 1.0, opt).value;
        P[j] = w * acc;
    }
    return P;
}

cplx phi_oscillatory_integral(const PhiEvaluator& phi, int m, const Rational& alpha, long long n, cplx s,
                              double quad_tol) {
    const double a = static_cast<double>(alpha);
    if (a == 0.0 || n < 1) throw DomainError("phi_oscillatory_integral: need alpha != 0 and n >= 1");
    const double sg = a > 0 ? 1.0 : -1.0;
    const double lambda = two_pi * std::abs(a) * double(n);
    const cplx ex = s + double(m);
    auto g = [&](double rho) {
        const cplx x(1.0, sg * rho / lambda);
        return phi(m, x, s) * std::exp(-ex * std::log(x) - rho);
    };
    QuadOptions opt;
    opt.abs_tol = quad_tol;
    opt.rel_tol = 1e-13;
    const QuadResult r = integrate_to_infinity(g, 0.0, 2.0, opt);
    return cplx(0.0, sg) * additive_character(alpha, n) * r.value / lambda;
}

IbpCheck ibp_expansion_check(int k, const Rational& alpha, cplx s, int m, long long n, double quad_tol) {
    if (m < 0 || m > 6) throw DomainError("ibp_expansion_check: m must lie in [0, 6]");
    if (n < 1 || n > 50) throw DomainError("ibp_expansion_check: n must lie in [1, 50]");
    const PhiEvaluator phi(k, std::max(m, 1));
    IbpCheck c;
    c.lhs = phi_oscillatory_integral(phi, 0, alpha, n, s, quad_tol);
    const cplx w = cplx(0.0, -two_pi * static_cast<double>(alpha) * double(n));  // -2 pi i alpha n
    cplx main = 0.0;
    for (int j = 0; j < m; ++j) main += phi.at_one(j, s) / std::pow(w, j + 1);
    c.rhs = additive_character(alpha, n) * main;
    c.rhs += (m == 0 ? cplx(1.0) : std::pow(w, -m)) * phi_oscillatory_integral(phi, m, alpha, n, s, quad_tol);
    c.residual = std::abs(c.lhs - c.rhs);
    return c;
}

double phi_mellin_check(int k, cplx s, double quad_tol) {
    if (s.real() <= k - 1) throw DomainError("phi_mellin_check: the integral diverges for Re s <= k - 1");
    const PhiEvaluator phi(k, 0);
    // x = e^v
    auto g = [&](double v) { return phi(0, std::exp(v), 0.0) * std::exp((1.0 - s) * v); };
    QuadOptions opt;
    opt.abs_tol = quad_tol;
    opt.rel_tol = 1e-14;
    const cplx integral = integrate_to_infinity(g, 0.0, 1.0, opt).value;
    return std::abs(integral - (trigamma(s) + trigamma(s + 1.0 - double(k))));
}

double IdentityLab::a_mellin_expansion_check(const Rational& alpha, cplx s, int m) const {
    const int k = f_.weight();
    if (m < 0 || m > 6) throw DomainError("a_mellin_expansion_check: m must lie in [0, 6]");
    if (s.real() <= k - m + 0.5) throw DomainError("a_mellin_expansion_check: need Re s > k - m + 1/2");
    const double a = static_cast<double>(alpha);
    const cplx scale = std::exp(s * std::log(two_pi) - log_gamma(s));

    // (2 pi)^s / Gamma(s) int_0^inf A(alpha + i y) y^{s-1} dy, cut at y0 where the
    // neglected piece is below 1e-9 (A is bounded as y -> 0)
    auto g = [&](double y) { return A(cplx(a, y)) * std::exp((s - 1.0) * std::log(y)); };
    double y0 = 0.2;
    while (std::abs(scale) * std::abs(A(cplx(a, y0))) * 2 * std::pow(y0, s.real()) / s.real() > 1e-9 && y0 > 1e-3)
        y0 /= 2;
    QuadOptions opt;
    opt.abs_tol = 1e-11;
    opt.rel_tol = 1e-12;
    cplx lhs = integrate(g, y0, 1.0, opt).value + integrate_to_infinity(g, 1.0, 1.0, opt).value;
    lhs *= scale;

    const PhiEvaluator phi(k, std::max(m, 1));
    const cplx w(0.0, -two_pi * a);  // -2 pi i alpha
    cplx rhs = 0.0;
    for (int j = 0; j < m; ++j)
        rhs += phi.at_one(j, s) / std::pow(w, j + 1) *
               additive_twist(a_, TwistKind::L, k, s + double(j + 1), alpha, a_.n_max(), 1e-9).value;
    cplx rem = 0.0;
    for (int n = 1; n <= a_.n_max(); ++n) {
        const double size = 2.0 * std::pow(double(n), k / 2.0 - s.real() - m);
        if (n > 10 && size < 1e-16) break;
        if (a_[n] == 0.0) continue;
        rem += a_[n] * std::exp(-(s + double(m)) * std::log(double(n))) *
               phi_oscillatory_integral(phi, m, alpha, n, s, 1e-14);
    }
    rhs += (m == 0 ? cplx(1.0) : std::pow(w, -m)) * rem;
    return std::abs(lhs - rhs);
}

GDecayReport IdentityLab::g_decay(const Rational& alpha, int M, double T, const std::vector<double>& ys) const {
    GDecayReport rep;
    const double a = static_cast<double>(alpha);
    const auto P = b_taylor_coeffs(alpha, M, T);
    auto g_values = [&](double y, double& raw, double& truncated) {
        const UpperHalfPoint p(alpha, y);
        const cplx z = p.z();
        const bool inside = y <= std::abs(a) / 4 * (1 + 1e-12);
        cplx taylor = 0.0;
        if (inside)
            for (int j = M - 1; j >= 0; --j) taylor = taylor * y + P[j];
        const cplx main = fbar_main_terms(p, M);
        raw = std::abs(F(z).value + A(z) - taylor - main);
        // g minus the residue tail above T: (fbar_transform - main) + (B_T - taylor)
        const cplx fbar_err = inside ? fbar_remainder(p, M) : fbar_transform(z) - main;
        truncated = std::abs(fbar_err + B(z, T) - taylor);
    };
    std::vector<double> small_y;
    for (double y : ys) {
        double raw = 0, tr = 0;
        g_values(y, raw, tr);
        rep.ys.push_back(y);
        rep.g_raw.push_back(raw);
        rep.g_truncated.push_back(tr);
    }
    rep.slope_raw = loglog_slope(rep.ys, rep.g_raw);
    rep.slope_truncated = loglog_slope(rep.ys, rep.g_truncated);
    double raw4 = 0, tr4 = 0;
    g_values(4.0, raw4, tr4);
    rep.g_large = raw4;
    return rep;
}

// ---------------------------------------------------------------- wrappers

TwistValue F_value(const Newform& f, const UpperHalfPoint& z, double quad_tol) {
    return IdentityLab(f, {}, quad_tol).F(z.z());
}

cplx A_value(const Newform& f, const UpperHalfPoint& z, double quad_tol) {
    return IdentityLab(f, {}, quad_tol).A(z.z());
}

cplx B_value(const Newform& f, const UpperHalfPoint& z, double T, const EvalSettings& settings) {
    return IdentityLab(f, settings).B(z.z(), T);
}

double main_identity_residual(const Newform& f, const UpperHalfPoint& z, double T, const EvalSettings& settings) {
    return IdentityLab(f, settings).main_identity(z.z(), T).residual;
}

double fbar_expansion_residual(const IdentityLab& lab, const Rational& alpha, double y, int M) {
    return std::abs(lab.fbar_remainder(UpperHalfPoint(alpha, y), M));
}

// ---------------------------------------------------------------- exact kernel

namespace {

struct GaussRat {
    Rational re{0}, im{0};
    GaussRat() = default;
    GaussRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussRat& operator+=(const GaussRat& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
};

GaussRat ipow(int e, const Rational& scale) {
    // scale * i^e
    switch (((e % 4) + 4) % 4) {
        case 0: return {scale, 0};
        case 1: return {0, scale};
        case 2: return {-scale, 0};
        default: return {0, -scale};
    }
}

using Series = std::vector<GaussRat>;  // in u, truncated

Series series_mul(const Series& a, const Series& b, int D) {
    Series c(static_cast<std::size_t>(D) + 1);
    for (int i = 0; i <= D; ++i)
        for (int j = 0; i + j <= D; ++j) c[i + j] += a[i] * b[j];
    return c;
}

}  // namespace

int fbar_kernel_mismatches(int k, int D) {
    if (k < 1 || D < 0) throw DomainError("fbar_kernel_mismatches: need k >= 1 and degree >= 0");
    // (1 + iu)^{-k} = sum_r (-1)^r binom(k+r-1, r) i^r u^r
    Series pre(static_cast<std::size_t>(D) + 1);
    for (int r = 0; r <= D; ++r) pre[r] = ipow(r, Rational(binomial(k + r - 1, r)) * (r % 2 ? -1 : 1));
    // w = i u^2 / (1 + iu) = sum_r i (-i)^r u^{r+2}
    Series w(static_cast<std::size_t>(D) + 1);
    for (int r = 0; r + 2 <= D; ++r) w[r + 2] = ipow(1 - r, Rational(1));
    // lhs[d][j]: coefficient of u^d c^j
    std::vector<std::vector<GaussRat>> lhs(D + 1, std::vector<GaussRat>(D + 1));
    Series wj(static_cast<std::size_t>(D) + 1);
    wj[0] = {1, 0};
    BigInt fact = 1;
    for (int j = 0; 2 * j <= D; ++j) {
        if (j > 0) {
            wj = series_mul(wj, w, D);
            fact *= j;
        }
        const Series term = series_mul(pre, wj, D);
        for (int d = 0; d <= D; ++d) lhs[d][j] = {term[d].re / Rational(fact), term[d].im / Rational(fact)};
    }
    int mismatches = 0;
    for (int d = 0; d <= D; ++d)
        for (int j = 0; j <= d; ++j) {
            GaussRat rhs;
            const int m = d - j;
            if (j <= m) {
                // (-i)^m binom(m+k-1, m-j) (-1)^j / j!
                BigInt jf = 1;
                for (int i = 2; i <= j; ++i) jf *= i;
                const Rational mag = Rational(binomial(m + k - 1, m - j)) / Rational(jf) * (j % 2 ? -1 : 1);
                rhs = ipow(-m, mag);
            }
            if (!(lhs[d][j] == rhs)) ++mismatches;
        }
    return mismatches;
}

double loglog_slope(const std::vector<double>& ys, const std::vector<double>& values) {
    if (ys.size() != values.size() || ys.size() < 2) throw DomainError("loglog_slope: need two or more points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) {
        const double x = std::log(ys[i]);
        const double y = std::log(std::max(values[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace szlab

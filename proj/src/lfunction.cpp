#include "szlab/lfunction.hpp"

#include <vector>

#include "szlab/euler_local.hpp"
#include "szlab/special_functions.hpp"

namespace szlab {

namespace {

void require_deligne(const Newform& f) {
    if (!f.satisfies_deligne())
        throw DomainError("newform " + f.label() + " violates the Deligne bound; tail bounds unavailable");
}

double term_bound(const Newform& f, cplx s, int n, double split, double angle) {
    const double k = f.weight();
    const double sqrtN = std::sqrt(static_cast<double>(f.level()));
    const double w = two_pi * n;
    const double an = 2.0 * std::pow(static_cast<double>(n), k / 2.0);
    const double sigma = s.real();
    const double cs = std::cos(angle);
    const double first =
        std::pow(w, -sigma) * std::pow(cs, -sigma) * incomplete_gamma_bound(sigma, w * split * cs / sqrtN);
    const double second = std::pow(static_cast<double>(f.level()), k / 2.0 - sigma) * std::pow(w, sigma - k) *
                          std::pow(cs, sigma - k) * incomplete_gamma_bound(k - sigma, w * cs / (split * sqrtN));
    return an * std::exp(-angle * s.imag()) * (first + second);
}

double effective_angle(cplx s, const EvalSettings& settings) {
    return settings.rotate_split ? split_angle(s.imag()) : 0.0;
}

Newform dual_or_self(const Newform& f) { return f.is_self_dual() ? f : dual(f); }

}  // namespace

double split_angle(double t) {
    const double a = std::abs(t);
    if (a <= 8.0 / pi) return 0.0;
    return std::copysign(pi / 2.0 - 4.0 / a, t);
}

double lambda_tail_bound(const Newform& f, cplx s, int cutoff, double split, double angle) {
    // terms eventually decay geometrically; sum until they are negligible
    double total = 0.0;
    for (int n = cutoff + 1; n < cutoff + 100000; ++n) {
        const double t = term_bound(f, s, n, split, angle);
        total += t;
        if (t < 1e-6 * total && n > cutoff + 10) return total * 1.5;
    }
    return total;
}

int lambda_cutoff(const Newform& f, cplx s, const EvalSettings& settings) {
    const double angle = effective_angle(s, settings);
    const double tol = settings.target_abs_tol * std::exp(-std::abs(angle * s.imag()));
    if (settings.series_cutoff > 0) {
        if (settings.series_cutoff > f.n_max())
            throw ConvergenceError("series cutoff exceeds stored coefficients of " + f.label());
        const double tail = lambda_tail_bound(f, s, settings.series_cutoff, settings.split, angle);
        if (tail > tol)
            throw ConvergenceError("tail bound " + std::to_string(tail) + " exceeds tolerance at cutoff " +
                                   std::to_string(settings.series_cutoff));
        return settings.series_cutoff;
    }
    // start from the heuristic 2 pi n / sqrt N >= |Im s| + 40 and grow
    const double sqrtN = std::sqrt(static_cast<double>(f.level()));
    const double ext = std::max(settings.split, 1.0 / settings.split);
    int n = std::max(1, static_cast<int>(std::ceil((std::abs(s.imag()) + 10.0) * sqrtN * ext / two_pi)));
    while (true) {
        if (n > f.n_max())
            throw ConvergenceError("newform " + f.label() + ": " + std::to_string(f.n_max()) +
                                   " coefficients are not enough for Lambda at this s");
        if (lambda_tail_bound(f, s, n, settings.split, angle) <= tol) return n;
        n += std::max(1, n / 8);
    }
}

cplx lambda_complete(const Newform& f, cplx s, const EvalSettings& settings) {
    require_deligne(f);
    require_finite(s, "lambda_complete");
    const int cut = lambda_cutoff(f, s, settings);
    const double k = f.weight();
    const double N = f.level();
    const double sqrtN = std::sqrt(N);
    const cplx c = settings.split * std::exp(I * effective_angle(s, settings));
    cplx direct = 0.0, dual = 0.0;
    for (int n = cut; n >= 1; --n) {
        const cplx an = f.a(n);
        if (an == 0.0) continue;
        const double w = two_pi * n;
        const double lw = std::log(w);
        direct += an * std::exp(-s * lw) * upper_incomplete_gamma(s, w * c / sqrtN);
        dual += std::conj(an) * std::exp((s - k) * lw) * upper_incomplete_gamma(k - s, w / (c * sqrtN));
    }
    return direct + f.root_number() * std::exp((k / 2.0 - s) * std::log(N)) * dual;
}

double funceq_residual(const Newform& f, cplx s, const EvalSettings& settings) {
    const double k = f.weight();
    const double N = f.level();
    EvalSettings shifted = settings;
    shifted.split = settings.split * 1.1;
    const Newform g = dual_or_self(f);
    const cplx lhs = lambda_complete(f, s, settings);
    const cplx rhs = f.root_number() * std::exp((k / 2.0 - s) * std::log(N)) * lambda_complete(g, k - s, shifted);
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

cplx hardy_z(const Newform& f, double t, const EvalSettings& settings) {
    const double k = f.weight();
    const double N = f.level();
    const cplx rot = std::exp(-0.5 * I * std::arg(f.root_number()) + 0.5 * I * t * std::log(N));
    return rot * lambda_complete(f, cplx(k / 2.0, t), settings);
}

cplx l_value(const Newform& f, cplx s, const EvalSettings& settings) {
    return std::exp(s * std::log(two_pi)) * lambda_complete(f, s, settings) / gamma(s);
}

LDerivatives l_derivatives(const Newform& f, cplx s, const EvalSettings& settings) {
    const double r = settings.cauchy_radius;
    const int M = settings.cauchy_nodes;
    // L is entire but the quotient Lambda/Gamma is evaluated through Gamma.
    if (s.real() < r + 0.5) {
        const double nearest = std::min(0.0, std::round(s.real()));
        if (std::abs(s - cplx(nearest, 0.0)) < r + 1e-3)
            throw PoleError("l_derivatives: Cauchy circle too close to a Gamma pole");
    }
    LDerivatives out{l_value(f, s, settings), 0.0, 0.0, 0.0};
    cplx d1 = 0.0, d2 = 0.0;
    double scale = std::abs(out.value);
    for (int j = 0; j < M; ++j) {
        const cplx u = std::polar(1.0, two_pi * j / M);
        const cplx v = l_value(f, s + r * u, settings);
        scale = std::max(scale, std::abs(v));
        d1 += v / u;
        d2 += v / (u * u);
    }
    out.first = d1 / (static_cast<double>(M) * r);
    out.second = 2.0 * d2 / (static_cast<double>(M) * r * r);
    out.scale = scale;
    return out;
}

cplx d_value(const Newform& f, cplx s, const EvalSettings& settings) {
    const auto d = l_derivatives(f, s, settings);
    if (std::abs(d.value) < 1e-8 * d.scale) throw PoleError("d_value: L_f(s) vanishes to working precision");
    return (d.second * d.value - d.first * d.first) / d.value;
}

cplx d_chi0(const Newform& f, int q, cplx s, const EvalSettings& settings) {
    const LocalFactor lf = local_factor(f, q);
    if (lf.is_square) throw DomainError("d_chi0: local factor is a square; poles cancel and are not evaluated");
    const auto e = euler_polynomial(lf, s);
    const auto d = l_derivatives(f, s, settings);
    const cplx v = e[0] * d.value;
    const cplx v1 = e[1] * d.value + e[0] * d.first;
    const cplx v2 = e[2] * d.value + 2.0 * e[1] * d.first + e[0] * d.second;
    const double scale = std::max(std::abs(e[1] * d.value), std::abs(e[0]) * d.scale);
    if (std::abs(v) < 1e-8 * scale) throw PoleError("d_chi0: E_q(s) L_f(s) vanishes to working precision");
    return (v2 * v - v1 * v1) / v;
}

cplx delta_value(const Newform& f, cplx s, const EvalSettings& settings) {
    return std::exp(-s * std::log(two_pi)) * gamma(s) * d_value(f, s, settings);
}

double dfunceq_residual(const Newform& f, cplx s, const EvalSettings& settings) {
    const double k = f.weight();
    const double N = f.level();
    const Newform g = dual_or_self(f);
    const cplx lhs = delta_value(f, s, settings) + lambda_complete(f, s, settings) * (trigamma(s) - trigamma(k - s));
    const cplx rhs = f.root_number() * std::exp((k / 2.0 - s) * std::log(N)) * delta_value(g, k - s, settings);
    return std::abs(lhs - rhs);
}

}  // namespace szlab

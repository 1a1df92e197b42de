#include "szlab/special_functions.hpp"

#include <array>
#include <limits>

namespace szlab {

namespace {

// B_2, B_4, ..., B_30.
constexpr std::array<double, 15> kBernoulliEven = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

// Stirling's series is used once Re z >= kShift; ten correction terms then
// leave a truncation error far below binary64 resolution.
constexpr double kShift = 14.0;
constexpr int kStirlingTerms = 10;

bool is_nonpositive_integer(cplx s) {
    return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::round(s.real());
}

cplx stirling_log_gamma(cplx z) {
    const cplx inv = 1.0 / z;
    const cplx inv2 = inv * inv;
    cplx term = inv;
    cplx corr = 0.0;
    for (int j = 1; j <= kStirlingTerms; ++j) {
        corr += kBernoulliEven[j - 1] / (2.0 * j * (2.0 * j - 1.0)) * term;
        term *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(two_pi) + corr;
}

cplx asymptotic_trigamma(cplx z) {
    const cplx inv = 1.0 / z;
    const cplx inv2 = inv * inv;
    cplx result = inv + 0.5 * inv2;
    cplx term = inv2 * inv;
    for (int j = 1; j <= kStirlingTerms; ++j) {
        result += kBernoulliEven[j - 1] * term;
        term *= inv2;
    }
    return result;
}

}  // namespace

cplx log_gamma(cplx s) {
    require_finite(s, "log_gamma");
    if (is_nonpositive_integer(s)) throw PoleError("log_gamma: pole at non-positive integer");
    // Shift up with log Gamma(s) = log Gamma(s+n) - sum log(s+j). Summing
    // principal logs reproduces the principal branch of log Gamma.
    int n = 0;
    if (s.real() < kShift) n = static_cast<int>(std::ceil(kShift - s.real()));
    cplx shift_sum = 0.0;
    for (int j = 0; j < n; ++j) shift_sum += std::log(s + static_cast<double>(j));
    return stirling_log_gamma(s + static_cast<double>(n)) - shift_sum;
}

cplx gamma(cplx s) {
    require_finite(s, "gamma");
    if (is_nonpositive_integer(s)) throw PoleError("gamma: pole at non-positive integer");
    if (s.real() < 0.5) return pi / (std::sin(pi * s) * std::exp(log_gamma(1.0 - s)));
    return std::exp(log_gamma(s));
}

cplx trigamma(cplx s) {
    require_finite(s, "trigamma");
    if (is_nonpositive_integer(s)) throw PoleError("trigamma: pole at non-positive integer");
    cplx acc = 0.0;
    cplx z = s;
    while (z.real() < kShift) {
        acc += 1.0 / (z * z);
        z += 1.0;
    }
    return acc + asymptotic_trigamma(z);
}

cplx reflection_kernel(cplx s) {
    require_finite(s, "reflection_kernel");
    if (s.imag() == 0.0 && s.real() == std::round(s.real())) throw PoleError("reflection_kernel: pole at integer");
    const cplx sn = std::sin(pi * s);
    return (pi * pi) / (sn * sn);
}

cplx binomial(cplx s, int j) {
    if (j < 0) return 0.0;
    cplx r = 1.0;
    for (int i = 0; i < j; ++i) r *= (s - static_cast<double>(i)) / static_cast<double>(i + 1);
    return r;
}

namespace {

constexpr int kMaxIterations = 20000;

// Lower incomplete gamma by its power series, gamma(s,x) = x^s e^{-x} sum.
cplx lower_series(cplx s, cplx x) {
    cplx term = 1.0 / s;
    cplx sum = term;
    for (int n = 1; n < kMaxIterations; ++n) {
        term *= x / (s + static_cast<double>(n));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) {
            return std::exp(s * std::log(x) - x) * sum;
        }
    }
    throw ConvergenceError("upper_incomplete_gamma: series did not converge");
}

// Modified Lentz evaluation of the Legendre continued fraction.
cplx upper_continued_fraction(cplx s, cplx x) {
    constexpr double tiny = 1e-300;
    cplx b = x + 1.0 - s;
    cplx c = 1.0 / tiny;
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 1; i < kMaxIterations; ++i) {
        const cplx an = -static_cast<double>(i) * (static_cast<double>(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const cplx delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) return std::exp(s * std::log(x) - x) * h;
    }
    throw ConvergenceError("upper_incomplete_gamma: continued fraction did not converge");
}

}  // namespace

cplx upper_incomplete_gamma(cplx s, cplx z) {
    require_finite(s, "upper_incomplete_gamma");
    if (!(z.real() >= 0.0)) throw DomainError("upper_incomplete_gamma: Re z must be >= 0");
    if (z == 0.0) return gamma(s);
    const bool near_pole = s.real() < 0.5 && std::abs(s - std::round(s.real())) < 0.25;
    if (std::abs(z) < std::abs(s) + 1.0 && !near_pole) return gamma(s) - lower_series(s, z);
    return upper_continued_fraction(s, z);
}

cplx upper_incomplete_gamma(cplx s, double x) {
    if (!(x >= 0.0)) throw DomainError("upper_incomplete_gamma: x must be >= 0");
    return upper_incomplete_gamma(s, cplx(x, 0.0));
}

double incomplete_gamma_bound(double sigma, double x) {
    // |Gamma(s,x)| <= Gamma(sigma,x) <= x^{sigma-1} e^{-x} / (1 - (sigma-1)/x)
    // when x > sigma - 1; otherwise fall back to the full Gamma(sigma,x).
    if (sigma <= 1.0) return std::pow(x, sigma - 1.0) * std::exp(-x);
    if (x > 2.0 * (sigma - 1.0)) return 2.0 * std::pow(x, sigma - 1.0) * std::exp(-x);
    return std::abs(upper_incomplete_gamma(cplx(sigma, 0.0), x));
}

}  // namespace szlab

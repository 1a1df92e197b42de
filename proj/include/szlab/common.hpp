#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace szlab {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

// Base of all library errors. `kind()` is a short machine-readable tag used
// in reports.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

struct PoleError : Error {
    explicit PoleError(const std::string& w) : Error("pole", w) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error("domain", w) {}
};
struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& w) : Error("convergence", w) {}
};
struct ParseError : Error {
    ParseError(const std::string& w, int line)
        : Error("parse", "line " + std::to_string(line) + ": " + w), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};
struct InvariantError : Error {
    explicit InvariantError(const std::string& w) : Error("invariant", w) {}
};
struct CertificationError : Error {
    explicit CertificationError(const std::string& w) : Error("certification", w) {}
};

/// e(x) = exp(2 pi i x).
inline cplx expi2pi(double x) {
    // reduce first so large arguments keep full precision
    double r = x - std::round(x);
    return {std::cos(two_pi * r), std::sin(two_pi * r)};
}

/// e(z) for complex z.
inline cplx expi2pi(cplx z) {
    double r = z.real() - std::round(z.real());
    return std::exp(-two_pi * z.imag()) * cplx{std::cos(two_pi * r), std::sin(two_pi * r)};
}

inline void require_finite(cplx z, const char* what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError(std::string(what) + ": non-finite value");
}

}  // namespace szlab

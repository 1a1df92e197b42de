#include "szlab/euler_local.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>

#include "szlab/arith.hpp"

namespace szlab {

LocalFactor make_local_factor(int q, int weight, cplx a_q, cplx xi_q) {
    LocalFactor lf;
    lf.q = q;
    lf.weight = weight;
    lf.a_q = a_q;
    lf.xi_q = xi_q;
    const cplx prod = xi_q * std::pow(static_cast<double>(q), weight - 1.0);
    const cplx disc = a_q * a_q - 4.0 * prod;
    const cplx r = std::sqrt(disc);
    // larger-modulus root from the sum, the other from the product
    cplx big = 0.5 * (a_q + (std::real(std::conj(a_q) * r) >= 0 ? r : -r));
    cplx other = big == 0.0 ? cplx(0.0) : prod / big;
    if (std::abs(disc) == 0.0) other = big;
    lf.alpha = big;
    lf.beta = other;
    if (std::arg(lf.alpha) < 0.0 && std::arg(lf.beta) >= 0.0) std::swap(lf.alpha, lf.beta);
    lf.theta = std::arg(lf.alpha);
    lf.theta_beta = std::arg(lf.beta);
    const double rel = std::abs(disc) / (4.0 * std::abs(prod));
    lf.is_square = rel <= 1e-9;
    lf.near_square = !lf.is_square && rel <= 1e-6;
    if (lf.is_square) lf.beta = lf.alpha = 0.5 * a_q;
    return lf;
}

LocalFactor local_factor(const Newform& f, int q) {
    if (!is_prime(q)) throw DomainError("local_factor: q must be prime");
    if (f.level() % q == 0) throw DomainError("local_factor: ramified prime " + std::to_string(q));
    if (q > f.n_max()) throw DomainError("local_factor: q exceeds n_max");
    LocalFactor lf = make_local_factor(q, f.weight(), f.a(q), f.nebentypus()(q));
    const cplx xi = f.nebentypus()(q);
    if (f.has_exact() && std::abs(xi.imag()) < 1e-12) {
        using boost::multiprecision::cpp_int;
        const cpp_int a(to_string(f.exact(q)));
        const cpp_int rhs = 4 * static_cast<long long>(std::llround(xi.real())) *
                            boost::multiprecision::pow(cpp_int(q), f.weight() - 1);
        lf.is_square = a * a == rhs;
        if (!lf.is_square) lf.near_square = false;
    }
    return lf;
}

std::array<cplx, 3> euler_polynomial(const LocalFactor& lf, cplx s) {
    const double lq = std::log(static_cast<double>(lf.q));
    const cplx u = std::exp(-s * lq);  // q^{-s}
    const cplx c2 = lf.xi_q * std::pow(static_cast<double>(lf.q), lf.weight - 1.0);
    const cplx e0 = 1.0 - lf.a_q * u + c2 * u * u;
    const cplx e1 = lq * lf.a_q * u - 2.0 * lq * c2 * u * u;
    const cplx e2 = -lq * lq * lf.a_q * u + 4.0 * lq * lq * c2 * u * u;
    return {e0, e1, e2};
}

std::vector<LocalZero> local_zeros(const LocalFactor& lf, double t_min, double t_max) {
    std::vector<LocalZero> out;
    if (t_min > t_max) return out;
    const double lq = std::log(static_cast<double>(lf.q));
    const double period = two_pi / lq;
    auto add_family = [&](cplx root, bool simple) {
        if (std::abs(root) == 0.0) return;
        const double sigma = std::log(std::abs(root)) / lq;
        const double t0 = std::arg(root) / lq;
        const long long m_lo = static_cast<long long>(std::ceil((t_min - t0) / period - 1e-12));
        const long long m_hi = static_cast<long long>(std::floor((t_max - t0) / period + 1e-12));
        for (long long m = m_lo; m <= m_hi; ++m) {
            const double t = t0 + m * period;
            if (t < t_min || t > t_max) continue;
            out.push_back({cplx(sigma, t), simple});
        }
    };
    if (lf.is_square) {
        add_family(lf.alpha, false);
    } else {
        add_family(lf.alpha, true);
        add_family(lf.beta, true);
    }
    std::sort(out.begin(), out.end(), [](const LocalZero& a, const LocalZero& b) { return a.s.imag() < b.s.imag(); });
    return out;
}

double rankin_average(const Newform& f, int X) {
    if (X > f.n_max()) throw DomainError("rankin_average: X exceeds n_max");
    double sum = 0.0;
    int count = 0;
    for (int p : primes_up_to(X)) {
        if (f.level() % p == 0) continue;
        sum += std::norm(f.a(p)) / std::pow(static_cast<double>(p), f.weight() - 1.0);
        ++count;
    }
    if (count == 0) throw DomainError("rankin_average: no unramified primes up to X (no data)");
    return sum / count;
}

double abundance_report(const Newform& f, int X) {
    if (X > f.n_max()) throw DomainError("abundance_report: X exceeds n_max");
    int count = 0, strict = 0;
    for (const auto& e : check_deligne(f)) {
        if (e.p > X) break;
        ++count;
        if (e.strict) ++strict;
    }
    if (count == 0) throw DomainError("abundance_report: no unramified primes up to X (no data)");
    return static_cast<double>(strict) / count;
}

}  // namespace szlab

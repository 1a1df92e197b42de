#include "szlab/character.hpp"

#include <numeric>

#include "szlab/arith.hpp"

namespace szlab {

DirichletCharacter::DirichletCharacter(int modulus, std::vector<cplx> values)
    : modulus_(modulus), values_(std::move(values)), trivial_(true) {
    if (modulus_ < 1) throw InvariantError("character: modulus must be positive");
    if (static_cast<int>(values_.size()) != modulus_)
        throw InvariantError("character: expected " + std::to_string(modulus_) + " values, got " +
                             std::to_string(values_.size()));
    constexpr double tol = 1e-9;
    for (int n = 0; n < modulus_; ++n) {
        const bool unit = std::gcd(n, modulus_) == 1;
        const cplx v = values_[n];
        if (!unit && std::abs(v) > tol)
            throw InvariantError("character: chi(" + std::to_string(n) + ") must vanish");
        if (unit && std::abs(std::abs(v) - 1.0) > tol)
            throw InvariantError("character: chi(" + std::to_string(n) + ") is not a root of unity");
        if (unit && std::abs(v - 1.0) > tol) trivial_ = false;
    }
    // full pair check for small moduli, a fixed prefix of m otherwise
    const int m_limit = modulus_ <= 300 ? modulus_ : 31;
    for (int m = 1; m < m_limit; ++m)
        for (int n = m; n < modulus_; ++n) {
            const cplx lhs = values_[(static_cast<long long>(m) * n) % modulus_];
            if (std::abs(lhs - values_[m] * values_[n]) > tol)
                throw InvariantError("character: not multiplicative at (" + std::to_string(m) + "," +
                                     std::to_string(n) + ")");
        }
    if (modulus_ == 1) values_[0] = 1.0;
}

DirichletCharacter DirichletCharacter::principal(int modulus) {
    std::vector<cplx> v(static_cast<std::size_t>(modulus));
    for (int n = 0; n < modulus; ++n) v[n] = std::gcd(n, modulus) == 1 ? 1.0 : 0.0;
    return DirichletCharacter(modulus, std::move(v));
}

DirichletCharacter DirichletCharacter::conj() const {
    std::vector<cplx> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::conj(values_[i]);
    return DirichletCharacter(modulus_, std::move(v));
}

bool DirichletCharacter::is_real(double tol) const {
    for (const cplx& v : values_)
        if (std::abs(v.imag()) > tol) return false;
    return true;
}

bool DirichletCharacter::approx_equal(const DirichletCharacter& other, double tol) const {
    if (modulus_ != other.modulus_) return false;
    for (int n = 0; n < modulus_; ++n)
        if (std::abs(values_[n] - other.values_[n]) > tol) return false;
    return true;
}

DirichletCharacter product(const DirichletCharacter& a, const DirichletCharacter& b) {
    const int m = a.modulus() * b.modulus();
    std::vector<cplx> v(static_cast<std::size_t>(m));
    for (int n = 0; n < m; ++n) v[n] = a(n) * b(n);
    return DirichletCharacter(m, std::move(v));
}

std::vector<DirichletCharacter> character_table(int q) {
    if (!is_prime(q)) throw DomainError("character_table: modulus " + std::to_string(q) + " is not prime");
    const int g = primitive_root(q);
    // discrete log table
    std::vector<int> dlog(static_cast<std::size_t>(q), -1);
    long long x = 1;
    for (int e = 0; e < q - 1; ++e) {
        dlog[x] = e;
        x = x * g % q;
    }
    std::vector<DirichletCharacter> out;
    out.reserve(static_cast<std::size_t>(q - 1));
    for (int j = 0; j < q - 1; ++j) {
        std::vector<cplx> v(static_cast<std::size_t>(q), 0.0);
        for (int n = 1; n < q; ++n) {
            // exact rational phase j*dlog/(q-1) reduced before the exponential
            const long long num = static_cast<long long>(j) * dlog[n] % (q - 1);
            v[n] = expi2pi(static_cast<double>(num) / (q - 1));
        }
        out.emplace_back(q, std::move(v));
    }
    return out;
}

cplx gauss_sum(const DirichletCharacter& chi) {
    const int q = chi.modulus();
    cplx s = 0.0;
    for (int a = 0; a < q; ++a) s += chi(a) * expi2pi(static_cast<double>(a) / q);
    return s;
}

}  // namespace szlab

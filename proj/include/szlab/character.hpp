#pragma once

#include <vector>

#include "szlab/common.hpp"

namespace szlab {

/// A Dirichlet character stored as its value table on residues 0..q-1.
class DirichletCharacter {
public:
    /// Validates the table: chi(n) = 0 iff gcd(n, q) > 1, multiplicativity,
    /// and unit values of modulus one. Throws InvariantError.
    DirichletCharacter(int modulus, std::vector<cplx> values);

    /// The principal character mod q.
    static DirichletCharacter principal(int modulus);

    int modulus() const noexcept { return modulus_; }
    bool is_trivial() const noexcept { return trivial_; }
    const std::vector<cplx>& values() const noexcept { return values_; }

    cplx operator()(long long n) const {
        long long r = n % modulus_;
        if (r < 0) r += modulus_;
        return values_[static_cast<std::size_t>(r)];
    }

    DirichletCharacter conj() const;

    /// True when every nonzero value is +-1.
    bool is_real(double tol = 1e-12) const;

    bool approx_equal(const DirichletCharacter& other, double tol = 1e-9) const;

private:
    int modulus_;
    std::vector<cplx> values_;
    bool trivial_;
};

/// Product character modulo lcm-free modulus m1*m2 (the factors need not be
/// coprime; the table is built on residues mod m1*m2).
DirichletCharacter product(const DirichletCharacter& a, const DirichletCharacter& b);

/// All q-1 characters mod the prime q, principal character first, the rest
/// ordered by the exponent j in chi(g) = e(j/(q-1)) for the least primitive
/// root g.
std::vector<DirichletCharacter> character_table(int q);

/// tau(chi) = sum_{a mod q} chi(a) e(a/q).
cplx gauss_sum(const DirichletCharacter& chi);

}  // namespace szlab

#pragma once

#include <string>
#include <vector>

#include "szlab/character.hpp"
#include "szlab/newform.hpp"
#include "szlab/rational.hpp"

namespace szlab {

/// Truncated Dirichlet series sum_{n <= n_max} c(n) n^{-s}; index 0 unused.
struct DirichletSeriesCoeffs {
    std::vector<cplx> c;
    std::string description;

    DirichletSeriesCoeffs() = default;
    DirichletSeriesCoeffs(std::vector<cplx> coeffs, std::string desc)
        : c(std::move(coeffs)), description(std::move(desc)) {}

    int n_max() const { return static_cast<int>(c.size()) - 1; }
    cplx operator[](int n) const { return c[static_cast<std::size_t>(n)]; }

    /// sum_{n <= n_max} c(n) n^{-s}
    cplx evaluate(cplx s) const;
    /// Pointwise c(n) chi(n).
    DirichletSeriesCoeffs twisted(const DirichletCharacter& chi) const;
};

/// Dirichlet convolution (A*B)(n) = sum_{d | n} A(d) B(n/d).
DirichletSeriesCoeffs convolve(const DirichletSeriesCoeffs& a, const DirichletSeriesCoeffs& b);

DirichletSeriesCoeffs coefficients_of(const Newform& f, int n_max);

/// Coefficients l(n) of log L_f: supported on prime powers, with
/// l(p^m) = (alpha^m + beta^m)/m at p not dividing N and a(p)^m/m at p | N.
DirichletSeriesCoeffs log_l_coefficients(const Newform& f, int n_max);

/// c_f = a_f * (l log^2), the coefficients of D_f = L_f (log L_f)''.
DirichletSeriesCoeffs d_coefficients(const Newform& f, int n_max);

/// max_n |e(n/q) - [1 - q/(q-1) chi0(n) + 1/(q-1) sum_{chi != chi0} tau(conj chi) chi(n)]|.
double exp_decomposition_check(int q);

/// The same decomposition applied to c_f(n) e(n/q) for n <= n_max; returns
/// the largest error relative to max(1, |c(n)|).
double twist_coefficient_decomposition_check(const Newform& f, int q, int n_max);

/// First M primes congruent to q mod N.
std::vector<int> dirichlet_primes(int q, int N, int M, long long search_cap = 100000000);

using RationalVector = std::vector<Rational>;

/// Exact c_1..c_M with sum_j c_j q_j^{-m} = [m == m0] for 0 <= m < M.
RationalVector vandermonde_solve(const std::vector<int>& q, int m0);

/// Exact residual vector of the system solved by vandermonde_solve.
RationalVector vandermonde_residual(const std::vector<int>& q, int m0, const RationalVector& c);

/// Verifies sum_{j<=m} binom(m+k-1, m-j) binom(-s-m, j) = (-1)^m binom(s+m-k, m)
/// as polynomials in s over Q.
bool chu_vandermonde_check(int m, int k);

}  // namespace szlab

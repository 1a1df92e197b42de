#pragma once

#include <array>
#include <vector>

#include "szlab/newform.hpp"

namespace szlab {

/// Local Euler polynomial 1 - a_q q^{-s} + xi(q) q^{k-1-2s} at an unramified
/// prime, with Satake roots alpha, beta of X^2 - a_q X + xi(q) q^{k-1}.
struct LocalFactor {
    int q = 0;
    int weight = 0;
    cplx a_q;
    cplx xi_q;
    cplx alpha;
    cplx beta;
    double theta = 0.0;       // arg(alpha), in [0, pi] for self-dual forms
    double theta_beta = 0.0;  // arg(beta)
    bool is_square = false;
    bool near_square = false;  // relative discriminant in [1e-9, 1e-6]
};

LocalFactor local_factor(const Newform& f, int q);

/// Builds a factor directly from (q, k, a_q, xi(q)); used for synthetic data.
LocalFactor make_local_factor(int q, int weight, cplx a_q, cplx xi_q);

/// E_q(s) and its first two derivatives in s.
std::array<cplx, 3> euler_polynomial(const LocalFactor& lf, cplx s);

struct LocalZero {
    cplx s;
    bool simple;
};

/// Zeros of E_q with Im s in [t_min, t_max], sorted by ordinate:
/// s = log(root)/log q + 2 pi i m / log q.
std::vector<LocalZero> local_zeros(const LocalFactor& lf, double t_min, double t_max);

/// Mean of |a(q)|^2 / q^{k-1} over primes q <= X not dividing N. Throws
/// DomainError when there is no such prime.
double rankin_average(const Newform& f, int X);

/// Fraction of primes q <= X, q not dividing N, with |a(q)| < 2 q^{(k-1)/2}.
double abundance_report(const Newform& f, int X);

}  // namespace szlab

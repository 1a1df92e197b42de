#pragma once

#include "szlab/common.hpp"

namespace szlab {

/// Principal branch of log Gamma (continuous continuation from the positive
/// real axis, cut along the negative real axis). Throws PoleError at
/// non-positive integers.
cplx log_gamma(cplx s);

/// Gamma(s). Uses the reflection formula left of Re s = 1/2.
cplx gamma(cplx s);

/// psi'(s), the trigamma function.
cplx trigamma(cplx s);

/// Upper incomplete gamma Gamma(s, x) for real x >= 0. Series for
/// x < |s| + 1, Legendre continued fraction otherwise.
cplx upper_incomplete_gamma(cplx s, double x);
/// Same for complex z with Re z >= 0 (principal branch of z^s).
cplx upper_incomplete_gamma(cplx s, cplx z);

/// pi^2 / sin^2(pi s), the kernel of the trigamma reflection formula.
cplx reflection_kernel(cplx s);

/// Generalized binomial coefficient binom(s, j) = s(s-1)...(s-j+1)/j!.
cplx binomial(cplx s, int j);

/// Upper bound for |Gamma(s, x)| via Gamma(Re s, x); valid for x > 0.
double incomplete_gamma_bound(double sigma, double x);

}  // namespace szlab

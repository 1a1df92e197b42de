#pragma once

#include <vector>

#include "szlab/common.hpp"
#include "szlab/rational.hpp"

namespace szlab {

/// phi_j(x, s) as a truncated series in t = x - 1 whose coefficients are
/// exact polynomials in s.
struct PhiSeries {
    int j = 0;
    std::vector<RationalPoly> coeffs;  // coeffs[r] multiplies t^r

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    /// phi_j(1, s)
    const RationalPoly& at_one() const { return coeffs.front(); }
};

/// phi_0 = (x^{k-1} + 1) log x / (x - 1) and
/// phi_{j+1} = x d/dx phi_j - (s + j) phi_j, for j <= j_max, with phi_0
/// expanded to t^J. Each step loses one order, so phi_j is exact to t^{J-j}.
/// DomainError unless j_max <= 12 and J >= j_max + 4.
std::vector<PhiSeries> phi_recursion(int k, int j_max, int J);

/// Numerical phi_m(x, s) for complex x off the negative real axis: series
/// for |x - 1| <= 0.5, Taylor-jet differentiation in u = log x otherwise.
class PhiEvaluator {
public:
    PhiEvaluator(int k, int m_max, int J = 80);

    int weight() const { return k_; }
    int m_max() const { return m_max_; }
    cplx operator()(int m, cplx x, cplx s) const;
    /// phi_m(1, s)
    cplx at_one(int m, cplx s) const;

    cplx via_series(int m, cplx t, cplx s) const;  // t = x - 1
    cplx via_jet(int m, cplx x, cplx s) const;

private:
    int k_;
    int m_max_;
    // series_[m][r][d]: coefficient of s^d t^r in phi_m
    std::vector<std::vector<std::vector<double>>> series_;
};

}  // namespace szlab

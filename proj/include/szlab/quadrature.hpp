#pragma once

#include <functional>

#include "szlab/common.hpp"

namespace szlab {

using RealToComplex = std::function<cplx(double)>;

struct QuadResult {
    cplx value;
    double error_estimate = 0.0;
    int evaluations = 0;
};

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_subdivisions = 4000;
};

/// Globally adaptive Gauss-Kronrod (7/15) on [a, b]. Throws
/// ConvergenceError if the subdivision cap is hit before the tolerance.
QuadResult integrate(const RealToComplex& f, double a, double b, const QuadOptions& opt = {});

/// Integral over [a, inf) as a sum of panels of width `panel` until
/// `quiet_panels` consecutive panels are below abs_tol. Panel boundaries at
/// multiples of an oscillation period keep each panel smooth.
QuadResult integrate_to_infinity(const RealToComplex& f, double a, double panel,
                                 const QuadOptions& opt = {}, int quiet_panels = 3,
                                 int max_panels = 100000);

}  // namespace szlab

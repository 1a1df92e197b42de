#pragma once

#include <array>

#include "szlab/newform.hpp"

namespace szlab {

struct EvalSettings {
    /// Terms in each incomplete-gamma sum; 0 picks the smallest cutoff whose
    /// tail bound is below target_abs_tol.
    int series_cutoff = 0;
    double cauchy_radius = 0.25;
    int cauchy_nodes = 64;
    double target_abs_tol = 1e-20;
    /// The defining integral is split at y = split / sqrt(N).
    double split = 1.0;
    /// Rotate the split point to split * e^{i split_angle(Im s)}. Without it
    /// the two sums cancel to about e^{-pi |Im s|/2} and lose that many digits.
    bool rotate_split = true;
};

/// Angle theta(t) = sgn(t) max(0, pi/2 - 4/|t|) of the rotated split point.
/// Terms then carry e^{-theta |t|}, leaving e^4 of cancellation.
double split_angle(double t);

/// Upper bound on the truncation error of lambda_complete at the given
/// cutoff and split angle, using |a(n)| <= d(n) n^{(k-1)/2} <= 2 n^{k/2} and
/// |Gamma(s, x e^{i theta})| <= e^{-theta Im s} cos(theta)^{-Re s} Gamma(Re s, x cos theta).
double lambda_tail_bound(const Newform& f, cplx s, int cutoff, double split = 1.0, double angle = 0.0);

/// Cutoff selected for (f, s, settings): the tail bound must be below
/// target_abs_tol e^{-theta |Im s|}, i.e. absolute after removing the decay
/// that the rotation exposes. Throws ConvergenceError when the stored
/// coefficients cannot meet the tolerance.
int lambda_cutoff(const Newform& f, cplx s, const EvalSettings& settings);

/// Lambda_f(s) = (2 pi)^{-s} Gamma(s) L_f(s), entire, evaluated as
///   sum a(n) (2 pi n)^{-s} Gamma(s, 2 pi n c/sqrt N)
///   + eps N^{k/2-s} sum conj a(n) (2 pi n)^{s-k} Gamma(k-s, 2 pi n/(c sqrt N)).
/// Refuses (DomainError) when f violates the Deligne bound.
cplx lambda_complete(const Newform& f, cplx s, const EvalSettings& settings = {});

/// |Lambda_f(s) - eps N^{k/2-s} Lambda_fbar(k-s)| / max(1, |Lambda_f(s)|),
/// with the right side evaluated at a different split point so that a wrong
/// root number shows up.
double funceq_residual(const Newform& f, cplx s, const EvalSettings& settings = {});

/// Rotation of Lambda on the central line that is real for self-dual f:
/// eps^{-1/2} N^{it/2} Lambda(k/2 + it).
cplx hardy_z(const Newform& f, double t, const EvalSettings& settings = {});

/// L_f(s) = (2 pi)^s Lambda_f(s) / Gamma(s).
cplx l_value(const Newform& f, cplx s, const EvalSettings& settings = {});

struct LDerivatives {
    cplx value, first, second;
    double scale;  // max |L| on the Cauchy circle
};

/// (L, L', L'') with derivatives from Cauchy's formula on a circle.
LDerivatives l_derivatives(const Newform& f, cplx s, const EvalSettings& settings = {});

/// D_f(s) = (L'' L - L'^2) / L. PoleError when |L| < 1e-8 * scale.
cplx d_value(const Newform& f, cplx s, const EvalSettings& settings = {});

/// D-series of L^{(q)} = E_q L_f, i.e. sum c(n) chi0(n) n^{-s}.
cplx d_chi0(const Newform& f, int q, cplx s, const EvalSettings& settings = {});

/// Delta_f(s) = (2 pi)^{-s} Gamma(s) D_f(s).
cplx delta_value(const Newform& f, cplx s, const EvalSettings& settings = {});

/// |Delta_f(s) + Lambda_f(s)(psi'(s) - psi'(k-s)) - eps N^{k/2-s} Delta_fbar(k-s)|.
double dfunceq_residual(const Newform& f, cplx s, const EvalSettings& settings = {});

}  // namespace szlab

#pragma once

#include <vector>

#include "szlab/lfunction.hpp"

namespace szlab {

struct ZeroRecord {
    double t = 0.0;                 // zero at k/2 + i t
    cplx rho;                       // full location (off-line zeros from the fallback)
    double refinement_error = 0.0;  // half-width of the final bracket
    int winding = 0;                // 1 = numerically certified simple
    cplx lprime;                    // L_f'(rho)
    cplx delta_residue;             // (2 pi)^{-rho} Gamma(rho) (-L_f'(rho))
};

struct BoxCount {
    double T = 0.0;  // height actually used (after perturbation)
    int count = 0;
};

struct ScanOptions {
    double certify_radius = 0.25;
    int certify_nodes = 256;
    double refine_tol = 1e-9;
};

/// Zeros of Lambda_f on the central line with t in [t_min, t_max]. For
/// self-dual f sign changes of the real rotation hardy_z are bracketed and
/// bisected; otherwise local minima of |Lambda| are polished by a complex
/// secant iteration. Each zero is certified with certify_simple.
std::vector<ZeroRecord> scan_zeros(const Newform& f, double t_min, double t_max, double step,
                                   const EvalSettings& settings = {}, const ScanOptions& opt = {});

/// Winding number of Lambda_f around the circle |s - rho| = radius.
/// CertificationError if Lambda nearly vanishes on the circle or the phase
/// cannot be resolved with up to 4096 nodes.
int certify_simple(const Newform& f, cplx rho, double radius, const EvalSettings& settings = {},
                   int nodes = 256);

/// Newton steps on L_f from rho until the step is below 1e-14 |rho| (at most
/// 6). ConvergenceError if the steps do not shrink.
cplx polish_zero(const Newform& f, cplx rho, const EvalSettings& settings = {});

/// Argument-principle count of zeros of Lambda_f in [k/2-2, k/2+2] x [0, T].
BoxCount count_zeros(const Newform& f, double T, const EvalSettings& settings = {});

/// Zeros with 0 <= t <= T and their Delta_f residues; every zero must be
/// certified simple (CertificationError otherwise).
std::vector<ZeroRecord> residues_up_to(const Newform& f, double T, const EvalSettings& settings = {});

struct ResiduePoint {
    cplx rho;
    cplx residue;  // residue of Delta_f at rho
};

/// Residues of Delta_f at all certified simple zeros with |Im rho| <= T.
/// For self-dual f the lower half comes from Schwarz reflection.
std::vector<ResiduePoint> residue_set(const Newform& f, double T, const EvalSettings& settings = {});

}  // namespace szlab

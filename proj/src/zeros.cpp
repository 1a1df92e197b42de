#include "szlab/zeros.hpp"

#include <algorithm>
#include <functional>

#include "szlab/special_functions.hpp"

namespace szlab {

namespace {

ZeroRecord finish_record(const Newform& f, cplx rho, double err, const EvalSettings& settings,
                         const ScanOptions& opt, double radius) {
    ZeroRecord z;
    z.rho = rho;
    z.t = rho.imag();
    z.refinement_error = err;
    z.winding = certify_simple(f, rho, radius, settings, opt.certify_nodes);
    z.lprime = l_derivatives(f, rho, settings).first;
    z.delta_residue = std::exp(-rho * std::log(two_pi)) * gamma(rho) * (-z.lprime);
    return z;
}

std::vector<std::pair<double, double>> sign_brackets(const Newform& f, double t_min, double t_max, double step,
                                                     const EvalSettings& settings) {
    std::vector<std::pair<double, double>> br;
    const int n = std::max(1, static_cast<int>(std::ceil((t_max - t_min) / step)));
    double t_prev = t_min;
    double z_prev = hardy_z(f, t_min, settings).real();
    for (int i = 1; i <= n; ++i) {
        const double t = std::min(t_max, t_min + i * step);
        const double z = hardy_z(f, t, settings).real();
        if (z_prev == 0.0) {
            br.emplace_back(t_prev, t_prev);
        } else if ((z_prev < 0) != (z < 0) && z != 0.0) {
            br.emplace_back(t_prev, t);
        }
        t_prev = t;
        z_prev = z;
    }
    if (z_prev == 0.0) br.emplace_back(t_prev, t_prev);
    return br;
}

}  // namespace

int certify_simple(const Newform& f, cplx rho, double radius, const EvalSettings& settings, int nodes) {
    nodes = std::max(nodes, 256);
    for (; nodes <= 4096; nodes *= 2) {
        std::vector<cplx> v(static_cast<std::size_t>(nodes));
        double vmin = 1e300, vmax = 0.0;
        for (int j = 0; j < nodes; ++j) {
            v[j] = lambda_complete(f, rho + radius * std::polar(1.0, two_pi * j / nodes), settings);
            vmin = std::min(vmin, std::abs(v[j]));
            vmax = std::max(vmax, std::abs(v[j]));
        }
        if (vmin <= 1e-8 * vmax || vmin == 0.0)
            throw CertificationError("certify_simple: Lambda nearly vanishes on the contour");
        double total = 0.0;
        bool resolved = true;
        for (int j = 0; j < nodes; ++j) {
            const double d = std::arg(v[(j + 1) % nodes] / v[j]);
            if (std::abs(d) > pi / 2) resolved = false;
            total += d;
        }
        if (!resolved) continue;
        const double w = total / two_pi;
        const double rounded = std::round(w);
        if (std::abs(w - rounded) >= 0.1) throw CertificationError("certify_simple: non-integer winding");
        return static_cast<int>(rounded);
    }
    throw CertificationError("certify_simple: phase not resolved with 4096 nodes");
}

std::vector<ZeroRecord> scan_zeros(const Newform& f, double t_min, double t_max, double step,
                                   const EvalSettings& settings, const ScanOptions& opt) {
    std::vector<ZeroRecord> out;
    if (t_min > t_max) return out;
    if (!(step > 0.0)) throw DomainError("scan_zeros: step must be positive");
    const double center = f.weight() / 2.0;
    std::vector<std::pair<cplx, double>> found;  // location, refinement error

    if (f.is_self_dual()) {
        auto br = sign_brackets(f, t_min, t_max, step, settings);
        for (std::size_t i = 1; i < br.size(); ++i)
            if (br[i].first - br[i - 1].second < 2 * step) {
                // close pair: rescan at a finer step
                br = sign_brackets(f, t_min, t_max, step / 4, settings);
                break;
            }
        for (auto [lo, hi] : br) {
            double zlo = hardy_z(f, lo, settings).real();
            while (hi - lo > 2 * opt.refine_tol) {
                const double mid = 0.5 * (lo + hi);
                const double zm = hardy_z(f, mid, settings).real();
                if (zm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((zm < 0) == (zlo < 0)) {
                    lo = mid;
                    zlo = zm;
                } else {
                    hi = mid;
                }
            }
            found.emplace_back(cplx(center, 0.5 * (lo + hi)), 0.5 * (hi - lo));
        }
    } else {
        const int n = std::max(2, static_cast<int>(std::ceil((t_max - t_min) / step)));
        std::vector<double> mag(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i)
            mag[i] = std::abs(lambda_complete(f, cplx(center, t_min + (t_max - t_min) * i / n), settings));
        for (int i = 1; i < n; ++i) {
            if (!(mag[i] < mag[i - 1] && mag[i] <= mag[i + 1])) continue;
            // secant iteration on Lambda(s) in the complex plane
            cplx s0(center, t_min + (t_max - t_min) * i / n);
            cplx s1 = s0 + cplx(0.0, 1e-3);
            cplx v0 = lambda_complete(f, s0, settings), v1 = lambda_complete(f, s1, settings);
            double err = 1.0;
            for (int it = 0; it < 60 && err > opt.refine_tol * 1e-3; ++it) {
                if (v1 == v0) break;
                const cplx s2 = s1 - v1 * (s1 - s0) / (v1 - v0);
                err = std::abs(s2 - s1);
                s0 = s1;
                v0 = v1;
                s1 = s2;
                v1 = lambda_complete(f, s1, settings);
            }
            const double scale = std::max({mag[i - 1], mag[i + 1], 1e-300});
            if (err < opt.refine_tol && std::abs(v1) < 1e-6 * scale && s1.imag() >= t_min && s1.imag() <= t_max)
                found.emplace_back(s1, err);
        }
    }

    std::sort(found.begin(), found.end(), [](auto& a, auto& b) { return a.first.imag() < b.first.imag(); });
    for (std::size_t i = 0; i < found.size(); ++i) {
        double gap = 1e9;
        if (i > 0) gap = std::min(gap, std::abs(found[i].first - found[i - 1].first));
        if (i + 1 < found.size()) gap = std::min(gap, std::abs(found[i + 1].first - found[i].first));
        const double radius = std::min(opt.certify_radius, 0.4 * gap);
        out.push_back(finish_record(f, found[i].first, found[i].second, settings, opt, radius));
    }
    return out;
}

namespace {

// Phase change of Lambda along the segment a -> b, subdividing until each
// step turns by less than pi/4. A step that is still unresolved after 40
// halvings straddles a zero on the segment.
double phase_along(const Newform& f, cplx a, cplx b, cplx va, cplx vb, const EvalSettings& settings, int depth,
                   bool& on_contour) {
    if (va == 0.0 || vb == 0.0) {
        on_contour = true;
        return 0.0;
    }
    const double d = std::arg(vb / va);
    if (std::abs(d) < pi / 4) return d;
    if (depth > 40) {
        on_contour = true;
        return d;
    }
    const cplx m = 0.5 * (a + b);
    const cplx vm = lambda_complete(f, m, settings);
    return phase_along(f, a, m, va, vm, settings, depth + 1, on_contour) +
           phase_along(f, m, b, vm, vb, settings, depth + 1, on_contour);
}

}  // namespace

cplx polish_zero(const Newform& f, cplx rho, const EvalSettings& settings) {
    double last = 1e300;
    for (int i = 0; i < 6; ++i) {
        const LDerivatives d = l_derivatives(f, rho, settings);
        const cplx step = d.value / d.first;
        rho -= step;
        if (std::abs(step) <= 1e-14 * std::abs(rho)) return rho;
        if (std::abs(step) >= last) throw ConvergenceError("polish_zero: Newton steps do not shrink");
        last = std::abs(step);
    }
    return rho;
}

BoxCount count_zeros(const Newform& f, double T, const EvalSettings& settings) {
    if (T < 0) throw DomainError("count_zeros: T must be non-negative");
    if (T == 0) return {0.0, 0};
    const double c = f.weight() / 2.0;
    for (int attempt = 0; attempt <= 5; ++attempt) {
        const double h = T + 0.01 * attempt;
        const std::vector<cplx> corners = {cplx(c - 2, 0), cplx(c + 2, 0), cplx(c + 2, h), cplx(c - 2, h)};
        double total = 0.0;
        bool on_contour = false;
        for (int e = 0; e < 4; ++e) {
            const cplx a = corners[e], b = corners[(e + 1) % 4];
            const int pieces = std::max(4, static_cast<int>(std::ceil(std::abs(b - a) / 0.1)));
            cplx prev = a;
            cplx vprev = lambda_complete(f, a, settings);
            for (int i = 1; i <= pieces; ++i) {
                const cplx pt = a + (b - a) * (static_cast<double>(i) / pieces);
                const cplx v = lambda_complete(f, pt, settings);
                total += phase_along(f, prev, pt, vprev, v, settings, 0, on_contour);
                prev = pt;
                vprev = v;
            }
        }
        if (on_contour) continue;
        const double w = total / two_pi;
        if (std::abs(w - std::round(w)) >= 0.1) continue;
        return {h, static_cast<int>(std::round(w))};
    }
    throw CertificationError("count_zeros: zero on or near the contour after 5 perturbations");
}

std::vector<ZeroRecord> residues_up_to(const Newform& f, double T, const EvalSettings& settings) {
    auto zs = scan_zeros(f, 0.0, T, 0.05, settings);
    for (const auto& z : zs)
        if (z.winding != 1)
            throw CertificationError("residues_up_to: zero at t=" + std::to_string(z.t) + " has winding " +
                                     std::to_string(z.winding));
    return zs;
}

std::vector<ResiduePoint> residue_set(const Newform& f, double T, const EvalSettings& settings) {
    std::vector<ResiduePoint> out;
    for (const auto& z : residues_up_to(f, T, settings)) {
        out.push_back({z.rho, z.delta_residue});
        if (f.is_self_dual() && z.t > 0) out.push_back({std::conj(z.rho), std::conj(z.delta_residue)});
    }
    if (!f.is_self_dual()) {
        auto lower = scan_zeros(f, -T, 0.0, 0.05, settings);
        for (const auto& z : lower) {
            if (z.winding != 1) throw CertificationError("residue_set: non-simple zero below the axis");
            if (z.t < 0) out.push_back({z.rho, z.delta_residue});
        }
    }
    return out;
}

}  // namespace szlab

#include "szlab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <queue>
#include <vector>

namespace szlab {

namespace {

// Kronrod 15-point abscissae (positive half) and weights; the Gauss 7-point
// rule uses the odd-indexed abscissae.
constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    cplx value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const RealToComplex& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const cplx fc = f(c);
    cplx kron = kWk[7] * fc;
    cplx gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXk[i];
        const cplx pair = f(c - dx) + f(c + dx);
        kron += kWk[i] * pair;
        if (i % 2 == 1) gauss += kWg[i / 2] * pair;
    }
    kron *= h;
    gauss *= h;
    return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace

QuadResult integrate(const RealToComplex& f, double a, double b, const QuadOptions& opt) {
    if (a == b) return {0.0, 0.0, 0};
    std::priority_queue<Segment> heap;
    Segment first = gk15(f, a, b);
    cplx total = first.value;
    double err = first.error;
    int evals = 15;
    heap.push(first);
    int subdivisions = 0;
    while (err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
        if (++subdivisions > opt.max_subdivisions)
            throw ConvergenceError("integrate: subdivision limit reached (error estimate " +
                                   std::to_string(err) + ")");
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Segment left = gk15(f, worst.a, mid);
        Segment right = gk15(f, mid, worst.b);
        evals += 30;
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum in a fixed order so the result does not depend on accumulated
    // rounding from the incremental updates.
    std::vector<Segment> segs;
    segs.reserve(heap.size());
    while (!heap.empty()) {
        segs.push_back(heap.top());
        heap.pop();
    }
    std::sort(segs.begin(), segs.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
    cplx sum = 0.0;
    double esum = 0.0;
    for (const auto& s : segs) {
        sum += s.value;
        esum += s.error;
    }
    return {sum, esum, evals};
}

QuadResult integrate_to_infinity(const RealToComplex& f, double a, double panel,
                                 const QuadOptions& opt, int quiet_panels, int max_panels) {
    QuadResult out{0.0, 0.0, 0};
    int quiet = 0;
    QuadOptions local = opt;
    for (int p = 0; p < max_panels; ++p) {
        const double lo = a + p * panel;
        QuadResult r = integrate(f, lo, lo + panel, local);
        out.value += r.value;
        out.error_estimate += r.error_estimate;
        out.evaluations += r.evaluations;
        if (std::abs(r.value) < opt.abs_tol) {
            if (++quiet >= quiet_panels) return out;
        } else {
            quiet = 0;
        }
    }
    throw ConvergenceError("integrate_to_infinity: integrand did not decay");
}

}  // namespace szlab

#pragma once

// Reference computations for the tests. Nothing here calls into the library:
// each routine takes a different route to the same quantity.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

/// tau(1..n) from q prod_{m>=1} (1 - q^m)^24, one factor (1 - q^m) at a time.
inline std::vector<__int128> eta_product(int n) {
    std::vector<__int128> p(static_cast<std::size_t>(n), 0);  // coefficient of q^i, i < n
    p[0] = 1;
    for (int m = 1; m < n; ++m)
        for (int rep = 0; rep < 24; ++rep)
            for (int i = n - 1; i >= m; --i) p[i] -= p[i - m];
    std::vector<__int128> tau(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) tau[i] = p[i - 1];
    return tau;
}

inline std::vector<double> to_double(const std::vector<__int128>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (auto x : v) out.push_back(static_cast<double>(x));
    return out;
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton on P_n.
struct GaussLegendre {
    std::vector<double> x, w;
    explicit GaussLegendre(int n) {
        for (int i = 0; i < n; ++i) {
            double z = std::cos(pi * (i + 0.75) / (n + 0.5));
            double dp = 0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1, p1 = z;
                for (int j = 2; j <= n; ++j) {
                    const double p2 = ((2.0 * j - 1) * z * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (z * p1 - p0) / (z * z - 1);
                const double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16) break;
            }
            x.push_back(z);
            w.push_back(2.0 / ((1 - z * z) * dp * dp));
        }
    }
};

/// Composite Gauss-Legendre (20 points per panel).
inline cplx integrate(const std::function<cplx(double)>& f, double a, double b, int panels) {
    static const GaussLegendre gl(20);
    cplx sum = 0;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        for (std::size_t i = 0; i < gl.x.size(); ++i) sum += gl.w[i] * f(lo + 0.5 * h * (gl.x[i] + 1.0));
    }
    return 0.5 * h * sum;
}

/// Lambda of a level-1 weight-k self-dual form with eps = 1 as the theta
/// integral int_1^inf f(iy) (y^{s-1} + y^{k-1-s}) dy. Samples of f(iy) are
/// tabulated once; evaluation is then a weighted sum.
class ThetaLambda {
public:
    ThetaLambda(const std::vector<double>& a, int k, double y_max = 12.0, int panels = 200) : k_(k) {
        const GaussLegendre gl(20);
        const double h = (y_max - 1.0) / panels;
        for (int p = 0; p < panels; ++p)
            for (std::size_t i = 0; i < gl.x.size(); ++i) {
                const double y = 1.0 + p * h + 0.5 * h * (gl.x[i] + 1.0);
                double fy = 0;
                for (std::size_t n = 1; n < a.size(); ++n) {
                    const double e = std::exp(-2 * pi * static_cast<double>(n) * y);
                    if (e < 1e-40) break;
                    fy += a[n] * e;
                }
                y_.push_back(y);
                ly_.push_back(std::log(y));
                wf_.push_back(0.5 * h * gl.w[i] * fy);
                wc_.push_back(2.0 * wf_.back() * std::pow(y, k / 2.0 - 1.0));
            }
    }

    /// Lambda(k/2 + it), which is real: 2 int f(iy) y^{k/2-1} cos(t log y) dy.
    double central(double t) const {
        double sum = 0;
        for (std::size_t i = 0; i < wc_.size(); ++i) sum += wc_[i] * std::cos(t * ly_[i]);
        return sum;
    }

    cplx operator()(cplx s) const {
        cplx sum = 0;
        for (std::size_t i = 0; i < y_.size(); ++i) {
            const double ly = ly_[i];
            sum += wf_[i] * (std::exp((s - 1.0) * ly) + std::exp((static_cast<double>(k_) - 1.0 - s) * ly));
        }
        return sum;
    }

private:
    int k_;
    std::vector<double> y_, ly_, wf_, wc_;
};

/// The same integral on the rays y = r e^{+-i theta}, r >= 1:
///   e^{i theta s} int f(i r e^{i theta}) r^{s-1} dr
///   + e^{-i theta (k-s)} int f(i r e^{-i theta}) r^{k-1-s} dr.
/// Rotating towards sgn(Im s) pi/2 trades the cancellation on the real ray
/// for a slower decay in r.
inline cplx rotated_theta_lambda(const std::vector<double>& a, int k, cplx s, double theta, double r_max,
                                 int panels) {
    const cplx up = std::polar(1.0, theta), down = std::conj(up);
    const auto f = [&](cplx w) {
        cplx acc = 0;
        for (std::size_t n = 1; n < a.size(); ++n) {
            const cplx e = std::exp(-2 * pi * static_cast<double>(n) * w);
            if (std::abs(e) < 1e-40) break;
            acc += a[n] * e;
        }
        return acc;
    };
    const cplx it(0.0, theta);
    const cplx dual_s = static_cast<double>(k) - s;
    const auto integrand = [&](double r) {
        const double lr = std::log(r);
        return f(r * up) * std::exp((s - 1.0) * lr + it * s) + f(r * down) * std::exp((dual_s - 1.0) * lr - it * dual_s);
    };
    return integrate(integrand, 1.0, r_max, panels);
}

/// Ordinates of sign changes of g on [t0, t1] at grid `step`, bisected to tol.
inline std::vector<double> sign_change_roots(const std::function<double(double)>& g, double t0, double t1,
                                             double step, double tol = 1e-11) {
    std::vector<double> roots;
    double a = t0, ga = g(a);
    const int n = static_cast<int>(std::ceil((t1 - t0) / step));
    for (int i = 1; i <= n; ++i) {
        const double b = std::min(t1, t0 + i * step);
        const double gb = g(b);
        if ((ga < 0) != (gb < 0)) {
            double lo = a, hi = b, glo = ga;
            while (hi - lo > tol) {
                const double m = 0.5 * (lo + hi);
                const double gm = g(m);
                if ((gm < 0) == (glo < 0)) {
                    lo = m;
                    glo = gm;
                } else {
                    hi = m;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        a = b;
        ga = gb;
    }
    return roots;
}

/// Winding number of g around |s - c| = r from the unwrapped phase.
inline double winding(const std::function<cplx(cplx)>& g, cplx c, double r, int nodes = 4096) {
    double total = 0;
    cplx prev = g(c + r);
    for (int j = 1; j <= nodes; ++j) {
        const cplx v = g(c + std::polar(r, 2 * pi * j / nodes));
        total += std::arg(v / prev);
        prev = v;
    }
    return total / (2 * pi);
}

/// Central difference.
inline cplx derivative(const std::function<cplx(cplx)>& g, cplx s, double h) {
    return (g(s + h) - g(s - h)) / (2 * h);
}

/// sum_{n <= n_max} c(n) n^{-s} summed from the small terms up.
inline cplx dirichlet_sum(const std::vector<double>& c, cplx s, std::size_t n_max) {
    cplx sum = 0;
    for (std::size_t n = std::min(n_max, c.size() - 1); n >= 1; --n)
        sum += c[n] * std::exp(-s * std::log(static_cast<double>(n)));
    return sum;
}

/// Coefficients of log L for a level-1 weight-k form from Newton's identity
/// on the Satake power sums p_m = a(p) p_{m-1} - p^{k-1} p_{m-2}.
inline std::vector<double> log_coefficients(const std::vector<double>& a, int k) {
    const std::size_t n = a.size() - 1;
    std::vector<double> l(n + 1, 0.0);
    std::vector<bool> composite(n + 1, false);
    for (std::size_t p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        for (std::size_t q = 2 * p; q <= n; q += p) composite[q] = true;
        const double pk = std::pow(static_cast<double>(p), k - 1);
        double pm2 = 2.0, pm1 = a[p];
        std::size_t pp = p;
        for (int m = 1; pp <= n; ++m) {
            l[pp] = pm1 / m;
            const double next = a[p] * pm1 - pk * pm2;
            pm2 = pm1;
            pm1 = next;
            if (pp > n / p) break;
            pp *= p;
        }
    }
    return l;
}

/// The a(n) whose logarithm is l: a(1) = 1 and
/// a(n) log n = sum_{d | n, d > 1} l(d) log d a(n/d).
inline std::vector<double> formal_exp(const std::vector<double>& l) {
    const std::size_t n = l.size() - 1;
    std::vector<double> a(n + 1, 0.0);
    a[1] = 1;
    for (std::size_t m = 2; m <= n; ++m) {
        double acc = 0;
        for (std::size_t d = 2; d <= m; ++d)
            if (m % d == 0 && l[d] != 0) acc += l[d] * std::log(static_cast<double>(d)) * a[m / d];
        a[m] = acc / std::log(static_cast<double>(m));
    }
    return a;
}

/// Dirichlet convolution of two coefficient tables of equal length.
inline std::vector<double> convolve(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size() - 1;
    std::vector<double> out(n + 1, 0.0);
    for (std::size_t d = 1; d <= n; ++d)
        if (x[d] != 0)
            for (std::size_t e = 1; d * e <= n; ++e) out[d * e] += x[d] * y[e];
    return out;
}

/// c(n) of D = L'' - L'^2 / L built as a (l log^2) from a and l.
inline std::vector<double> d_coefficients(const std::vector<double>& a, const std::vector<double>& l) {
    std::vector<double> w(l.size(), 0.0);
    for (std::size_t n = 2; n < l.size(); ++n) {
        const double lg = std::log(static_cast<double>(n));
        w[n] = l[n] * lg * lg;
    }
    return convolve(a, w);
}

}  // namespace oracle

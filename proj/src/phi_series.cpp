#include "szlab/phi_series.hpp"

namespace szlab {

std::vector<PhiSeries> phi_recursion(int k, int j_max, int J) {
    if (k < 1) throw DomainError("phi_recursion: weight must be positive");
    if (j_max < 0 || j_max > 12) throw DomainError("phi_recursion: j_max must lie in [0, 12]");
    if (J < j_max + 4) throw DomainError("phi_recursion: truncation J too small for the requested j_max");

    // log(1+t)/t = sum (-1)^r t^r / (r+1);  x^{k-1} + 1 = 1 + (1+t)^{k-1}
    std::vector<Rational> logq(J + 1), poly(J + 1, Rational(0));
    for (int r = 0; r <= J; ++r) logq[r] = Rational(r % 2 ? -1 : 1, r + 1);
    for (int i = 0; i <= std::min(J, k - 1); ++i) poly[i] = Rational(binomial(k - 1, i));
    poly[0] += 1;

    PhiSeries phi0;
    phi0.coeffs.resize(J + 1);
    for (int r = 0; r <= J; ++r) {
        Rational acc = 0;
        for (int i = 0; i <= r; ++i) acc += poly[i] * logq[r - i];
        phi0.coeffs[r] = RationalPoly::constant(acc);
    }

    std::vector<PhiSeries> out{phi0};
    for (int j = 0; j < j_max; ++j) {
        const auto& p = out.back().coeffs;
        const int n = static_cast<int>(p.size()) - 1;  // valid through t^n; result through t^{n-1}
        PhiSeries next;
        next.j = j + 1;
        next.coeffs.resize(n);
        const RationalPoly shift = RationalPoly::linear(Rational(j), Rational(1));  // s + j
        for (int r = 0; r < n; ++r) {
            // (1+t) d/dt: t^r coefficient gets (r+1) p_{r+1} + r p_r
            RationalPoly c = p[r + 1] * Rational(r + 1);
            if (r > 0) c += p[r] * Rational(r);
            c -= shift * p[r];
            next.coeffs[r] = c;
        }
        out.push_back(std::move(next));
    }
    return out;
}

PhiEvaluator::PhiEvaluator(int k, int m_max, int J) : k_(k), m_max_(m_max) {
    const auto phis = phi_recursion(k, m_max, std::max(J, m_max + 4));
    series_.resize(phis.size());
    for (std::size_t m = 0; m < phis.size(); ++m)
        for (const auto& c : phis[m].coeffs) {
            std::vector<double> d;
            for (const auto& q : c.coeffs()) d.push_back(static_cast<double>(q));
            series_[m].push_back(std::move(d));
        }
}

cplx PhiEvaluator::via_series(int m, cplx t, cplx s) const {
    const auto& ser = series_[static_cast<std::size_t>(m)];
    cplx acc = 0.0;
    for (auto it = ser.rbegin(); it != ser.rend(); ++it) {
        cplx c = 0.0;
        for (auto d = it->rbegin(); d != it->rend(); ++d) c = c * s + *d;
        acc = acc * t + c;
    }
    return acc;
}

namespace {

using Jet = std::vector<cplx>;  // Taylor coefficients in h about a point

Jet jet_mul(const Jet& a, const Jet& b) {
    Jet c(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

Jet jet_div(const Jet& a, const Jet& b) {
    Jet c(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        cplx acc = a[i];
        for (std::size_t j = 1; j <= i; ++j) acc -= b[j] * c[i - j];
        c[i] = acc / b[0];
    }
    return c;
}

// e^{c (u0 + h)}
Jet jet_exp_linear(cplx c, cplx u0, std::size_t n) {
    Jet e(n);
    e[0] = std::exp(c * u0);
    for (std::size_t i = 1; i < n; ++i) e[i] = e[i - 1] * c / static_cast<double>(i);
    return e;
}

}  // namespace

cplx PhiEvaluator::via_jet(int m, cplx x, cplx s) const {
    // phi_0 as g(u) = (e^{(k-1)u} + 1) u / (e^u - 1) with x = e^u, and x d/dx = d/du
    const std::size_t n = static_cast<std::size_t>(m) + 1;
    const cplx u0 = std::log(x);
    Jet num = jet_exp_linear(static_cast<double>(k_ - 1), u0, n);
    num[0] += 1.0;
    Jet u(n, 0.0);
    u[0] = u0;
    if (n > 1) u[1] = 1.0;
    num = jet_mul(num, u);
    Jet den = jet_exp_linear(1.0, u0, n);
    den[0] -= 1.0;
    Jet g = jet_div(num, den);
    for (int j = 0; j < m; ++j) {
        // (d/du - (s + j)) lowers the usable order by one
        Jet next(g.size() - 1);
        for (std::size_t r = 0; r + 1 < g.size(); ++r)
            next[r] = static_cast<double>(r + 1) * g[r + 1] - (s + static_cast<double>(j)) * g[r];
        g = std::move(next);
    }
    return g[0];
}

cplx PhiEvaluator::operator()(int m, cplx x, cplx s) const {
    if (m < 0 || m > m_max_) throw DomainError("PhiEvaluator: order outside the precomputed range");
    const cplx t = x - 1.0;
    if (std::abs(t) <= 0.5) return via_series(m, t, s);
    if (x.imag() == 0.0 && x.real() <= 0.0) throw DomainError("PhiEvaluator: x on the branch cut");
    return via_jet(m, x, s);
}

cplx PhiEvaluator::at_one(int m, cplx s) const { return via_series(m, 0.0, s); }

}  // namespace szlab

#include "szlab/dirichlet_algebra.hpp"

#include <numeric>

#include "szlab/arith.hpp"

namespace szlab {

cplx DirichletSeriesCoeffs::evaluate(cplx s) const {
    cplx sum = 0.0;
    for (int n = n_max(); n >= 1; --n) sum += c[n] * std::exp(-s * std::log(static_cast<double>(n)));
    return sum;
}

DirichletSeriesCoeffs DirichletSeriesCoeffs::twisted(const DirichletCharacter& chi) const {
    DirichletSeriesCoeffs out = *this;
    for (int n = 1; n <= n_max(); ++n) out.c[n] *= chi(n);
    out.description += " twisted mod " + std::to_string(chi.modulus());
    return out;
}

DirichletSeriesCoeffs convolve(const DirichletSeriesCoeffs& a, const DirichletSeriesCoeffs& b) {
    if (a.n_max() != b.n_max()) throw DomainError("convolve: n_max mismatch");
    const int n = a.n_max();
    std::vector<cplx> r(static_cast<std::size_t>(n) + 1, 0.0);
    for (int d = 1; d <= n; ++d) {
        if (a.c[d] == 0.0) continue;
        for (int e = 1; d * e <= n; ++e) r[d * e] += a.c[d] * b.c[e];
    }
    return {std::move(r), "(" + a.description + ")*(" + b.description + ")"};
}

DirichletSeriesCoeffs coefficients_of(const Newform& f, int n_max) {
    if (n_max > f.n_max()) throw DomainError("coefficients_of: n_max exceeds stored coefficients");
    std::vector<cplx> c(f.coefficients().begin(), f.coefficients().begin() + n_max + 1);
    return {std::move(c), "a_f"};
}

DirichletSeriesCoeffs log_l_coefficients(const Newform& f, int n_max) {
    if (n_max > f.n_max()) throw DomainError("log_l_coefficients: n_max exceeds stored coefficients");
    std::vector<cplx> l(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int p : primes_up_to(n_max)) {
        const cplx ap = f.a(p);
        const bool ramified = f.level() % p == 0;
        const cplx c2 = ramified ? cplx(0.0) : f.nebentypus()(p) * std::pow(static_cast<double>(p), f.weight() - 1.0);
        // power sums alpha^m + beta^m by Newton's recursion
        cplx s_prev = ramified ? cplx(1.0) : cplx(2.0);
        cplx s_cur = ap;
        long long pm = p;
        int m = 1;
        while (pm <= n_max) {
            l[pm] = s_cur / static_cast<double>(m);
            const cplx s_next = ap * s_cur - c2 * s_prev;
            s_prev = s_cur;
            s_cur = s_next;
            pm *= p;
            ++m;
        }
    }
    return {std::move(l), "log L_f"};
}

DirichletSeriesCoeffs d_coefficients(const Newform& f, int n_max) {
    auto l = log_l_coefficients(f, n_max);
    for (int n = 2; n <= n_max; ++n) {
        const double lg = std::log(static_cast<double>(n));
        l.c[n] *= lg * lg;
    }
    l.description = "l log^2";
    auto c = convolve(coefficients_of(f, n_max), l);
    c.description = "c_f";
    return c;
}

namespace {

// Coefficient of chi(n) in the character expansion of e(n/q), indexed
// like character_table(q); entry 0 is the combined principal coefficient.
std::vector<cplx> expansion_weights(const std::vector<DirichletCharacter>& chars, int q) {
    std::vector<cplx> w(chars.size());
    w[0] = -static_cast<double>(q) / (q - 1);
    for (std::size_t i = 1; i < chars.size(); ++i) w[i] = gauss_sum(chars[i].conj()) / static_cast<double>(q - 1);
    return w;
}

cplx expansion_at(const std::vector<DirichletCharacter>& chars, const std::vector<cplx>& w, long long n) {
    cplx v = 1.0;
    for (std::size_t i = 0; i < chars.size(); ++i) v += w[i] * chars[i](n);
    return v;
}

}  // namespace

double exp_decomposition_check(int q) {
    const auto chars = character_table(q);
    const auto w = expansion_weights(chars, q);
    double worst = 0.0;
    for (int n = 0; n < q; ++n)
        worst = std::max(worst, std::abs(expi2pi(static_cast<double>(n) / q) - expansion_at(chars, w, n)));
    return worst;
}

double twist_coefficient_decomposition_check(const Newform& f, int q, int n_max) {
    if (f.level() % q == 0) throw DomainError("twist decomposition: q divides the level");
    const auto chars = character_table(q);
    const auto w = expansion_weights(chars, q);
    const auto c = d_coefficients(f, n_max);
    double worst = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        const cplx lhs = c[n] * expi2pi(static_cast<double>(n % q) / q);
        const cplx rhs = c[n] * expansion_at(chars, w, n);
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(c[n])));
    }
    return worst;
}

std::vector<int> dirichlet_primes(int q, int N, int M, long long search_cap) {
    if (N < 1) throw DomainError("dirichlet_primes: modulus must be positive");
    if (std::gcd(q, N) != 1) throw DomainError("dirichlet_primes: gcd(q, N) must be 1");
    std::vector<int> out;
    long long r = ((q % N) + N) % N;
    for (long long p = r == 0 ? N : r; static_cast<int>(out.size()) < M; p += N) {
        if (p > search_cap) throw DomainError("dirichlet_primes: search cap reached");
        if (is_prime(p)) out.push_back(static_cast<int>(p));
    }
    return out;
}

RationalVector vandermonde_solve(const std::vector<int>& q, int m0) {
    const int M = static_cast<int>(q.size());
    if (M == 0) throw DomainError("vandermonde_solve: empty input");
    if (m0 < 0 || m0 >= M) throw DomainError("vandermonde_solve: m0 out of range");
    for (int i = 0; i < M; ++i)
        for (int j = i + 1; j < M; ++j)
            if (q[i] == q[j]) throw DomainError("vandermonde_solve: singular system (repeated q)");
    // augmented matrix rows m: q_j^{-m} | delta
    std::vector<std::vector<Rational>> A(M, std::vector<Rational>(M + 1));
    for (int m = 0; m < M; ++m) {
        for (int j = 0; j < M; ++j) A[m][j] = Rational(1, boost::multiprecision::pow(BigInt(q[j]), m));
        A[m][M] = m == m0 ? 1 : 0;
    }
    for (int col = 0; col < M; ++col) {
        int piv = col;
        while (piv < M && A[piv][col] == 0) ++piv;
        if (piv == M) throw DomainError("vandermonde_solve: singular system");
        std::swap(A[piv], A[col]);
        for (int r = 0; r < M; ++r) {
            if (r == col || A[r][col] == 0) continue;
            const Rational factor = A[r][col] / A[col][col];
            for (int c = col; c <= M; ++c) A[r][c] -= factor * A[col][c];
        }
    }
    RationalVector x(M);
    for (int j = 0; j < M; ++j) x[j] = A[j][M] / A[j][j];
    for (const auto& r : vandermonde_residual(q, m0, x))
        if (r != 0) throw InvariantError("vandermonde_solve: back-substitution residual is nonzero");
    return x;
}

RationalVector vandermonde_residual(const std::vector<int>& q, int m0, const RationalVector& c) {
    const int M = static_cast<int>(q.size());
    RationalVector res(M);
    for (int m = 0; m < M; ++m) {
        Rational acc = 0;
        for (int j = 0; j < M; ++j) acc += c[j] / Rational(boost::multiprecision::pow(BigInt(q[j]), m));
        res[m] = acc - (m == m0 ? 1 : 0);
    }
    return res;
}

bool chu_vandermonde_check(int m, int k) {
    if (m < 0 || k < 1) throw DomainError("chu_vandermonde_check: need m >= 0, k >= 1");
    RationalPoly lhs;
    for (int j = 0; j <= m; ++j)
        lhs += binomial_poly(Rational(-m), Rational(-1), j) * Rational(binomial(m + k - 1, m - j));
    RationalPoly rhs = binomial_poly(Rational(m - k), Rational(1), m) * Rational(m % 2 ? -1 : 1);
    return lhs == rhs;
}

}  // namespace szlab

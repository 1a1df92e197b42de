#include "szlab/newform.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "szlab/arith.hpp"

namespace szlab {

namespace {

using boost::multiprecision::cpp_int;

constexpr double kRelTol = 1e-9;

bool close(cplx x, cplx y, double scale) {
    return std::abs(x - y) <= kRelTol * std::max({1.0, scale, std::abs(x), std::abs(y)});
}

cpp_int to_big(Int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    cpp_int r = static_cast<std::uint64_t>(u >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(u);
    return neg ? cpp_int(-r) : r;
}

std::string fmt_double(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

}  // namespace

Newform::Newform(int weight, int level, DirichletCharacter nebentypus, cplx root_number,
                 std::vector<cplx> coeffs, std::string label, std::optional<std::vector<Int128>> exact)
    : weight_(weight),
      level_(level),
      nebentypus_(std::move(nebentypus)),
      root_number_(root_number),
      coeffs_(std::move(coeffs)),
      label_(std::move(label)),
      exact_(std::move(exact)) {
    validate();
}

cplx Newform::a(int n) const {
    if (n < 1 || n > n_max())
        throw DomainError("newform " + label_ + ": coefficient a(" + std::to_string(n) +
                          ") outside stored range 1.." + std::to_string(n_max()));
    return coeffs_[n];
}

Int128 Newform::exact(int n) const {
    if (!exact_) throw DomainError("newform " + label_ + " has no exact coefficients");
    if (n < 1 || n > n_max()) throw DomainError("exact coefficient index out of range");
    return (*exact_)[n];
}

bool Newform::is_self_dual(double tol) const {
    if (std::abs(root_number_.imag()) > tol) return false;
    if (!nebentypus_.is_real(tol)) return false;
    for (const cplx& c : coeffs_)
        if (std::abs(c.imag()) > tol * std::max(1.0, std::abs(c))) return false;
    return true;
}

bool Newform::operator==(const Newform& o) const {
    if (weight_ != o.weight_ || level_ != o.level_ || n_max() != o.n_max()) return false;
    if (root_number_ != o.root_number_ || label_ != o.label_) return false;
    if (!nebentypus_.approx_equal(o.nebentypus_, 0.0)) return false;
    if (has_exact() != o.has_exact()) return false;
    if (has_exact()) return *exact_ == *o.exact_;
    return coeffs_ == o.coeffs_;
}

void Newform::validate() {
    if (weight_ < 1) throw InvariantError("weight must be positive");
    if (level_ < 1) throw InvariantError("level must be positive");
    if (nebentypus_.modulus() != level_)
        throw InvariantError("nebentypus modulus " + std::to_string(nebentypus_.modulus()) +
                             " differs from level " + std::to_string(level_));
    if (std::abs(std::abs(root_number_) - 1.0) > kRelTol) throw InvariantError("root number must have modulus 1");
    if (coeffs_.size() < 2) throw InvariantError("need at least a(1)");
    coeffs_[0] = 0.0;
    for (std::size_t n = 1; n < coeffs_.size(); ++n) require_finite(coeffs_[n], "newform coefficient");
    if (exact_) {
        if (exact_->size() != coeffs_.size()) throw InvariantError("exact coefficient table has wrong length");
        (*exact_)[0] = 0;
        for (std::size_t n = 1; n < coeffs_.size(); ++n)
            if (coeffs_[n] != cplx(static_cast<double>((*exact_)[n]), 0.0))
                throw InvariantError("exact and floating coefficients differ at n=" + std::to_string(n));
    }
    if (!close(coeffs_[1], 1.0, 1.0)) throw InvariantError("a(1) must equal 1");

    const int nmax = n_max();
    const auto spf = smallest_prime_factors(nmax);
    const double k1 = weight_ - 1.0;

    // Multiplicativity: a(n) = a(p^e) a(n / p^e) with p the least prime factor.
    for (int n = 2; n <= nmax; ++n) {
        const int p = spf[n];
        int pe = 1;
        while (n % (pe * p) == 0) pe *= p;
        const int m = n / pe;
        if (m == 1) continue;
        bool ok;
        if (exact_) {
            ok = to_big((*exact_)[n]) == to_big((*exact_)[pe]) * to_big((*exact_)[m]);
        } else {
            ok = close(coeffs_[n], coeffs_[pe] * coeffs_[m], std::abs(coeffs_[pe]) * std::abs(coeffs_[m]));
        }
        if (!ok)
            throw InvariantError("multiplicativity fails at n=" + std::to_string(n) + " = " +
                                 std::to_string(pe) + "*" + std::to_string(m));
    }

    // Hecke recursion along prime powers.
    for (int p : primes_up_to(nmax)) {
        const bool ramified = level_ % p == 0;
        const cplx xi_p = nebentypus_(p);
        const double pk1 = std::pow(static_cast<double>(p), k1);
        long long prev = 1, cur = p;
        while (cur * p <= nmax) {
            const long long next = cur * p;
            bool ok;
            if (exact_) {
                cpp_int expect = to_big((*exact_)[p]) * to_big((*exact_)[cur]);
                if (!ramified) {
                    cpp_int pk = boost::multiprecision::pow(cpp_int(p), weight_ - 1);
                    const cpp_int xi = static_cast<long long>(std::llround(xi_p.real()));
                    expect -= xi * pk * to_big((*exact_)[prev]);
                }
                ok = to_big((*exact_)[next]) == expect;
            } else {
                cplx expect = coeffs_[p] * coeffs_[cur];
                double scale = std::abs(expect);
                if (!ramified) {
                    const cplx second = xi_p * pk1 * coeffs_[prev];
                    expect -= second;
                    scale = std::max(scale, std::abs(second));
                }
                ok = close(coeffs_[next], expect, scale);
            }
            if (!ok)
                throw InvariantError("Hecke recursion fails at p=" + std::to_string(p) + ", n=" +
                                     std::to_string(next));
            prev = cur;
            cur = next;
        }
    }

    for (const auto& e : check_deligne(*this)) {
        if (e.abs_ap > e.bound * (1.0 + kRelTol)) {
            deligne_ok_ = false;
            warnings_.push_back("Deligne bound violated at p=" + std::to_string(e.p) + ": |a(p)|=" +
                                fmt_double(e.abs_ap) + " > " + fmt_double(e.bound));
        }
    }
}

std::vector<Int128> delta_exact(int n_max) {
    if (n_max < 1) throw DomainError("delta_coefficients: n_max must be >= 1");
    // pentagonal numbers g = m(3m-1)/2 for m = 1,-1,2,-2,... with sign (-1)^m
    std::vector<std::pair<int, int>> pent;
    for (int m = 1;; ++m) {
        const long long g1 = static_cast<long long>(m) * (3 * m - 1) / 2;
        const long long g2 = static_cast<long long>(m) * (3 * m + 1) / 2;
        if (g1 > n_max) break;
        const int sign = (m % 2) ? -1 : 1;
        pent.emplace_back(static_cast<int>(g1), sign);
        if (g2 <= n_max) pent.emplace_back(static_cast<int>(g2), sign);
    }
    // b holds prod (1-q^n)^j truncated below q^n_max; multiply 24 times.
    std::vector<Int128> b(static_cast<std::size_t>(n_max), 0);
    b[0] = 1;
    for (int rep = 0; rep < 24; ++rep) {
        for (int n = n_max - 1; n >= 1; --n) {
            Int128 acc = b[n];
            for (const auto& [g, sign] : pent) {
                if (g > n) break;
                acc = sign > 0 ? checked_add(acc, b[n - g]) : checked_sub(acc, b[n - g]);
            }
            b[n] = acc;
        }
    }
    std::vector<Int128> tau(static_cast<std::size_t>(n_max) + 1, 0);
    for (int n = 1; n <= n_max; ++n) tau[n] = b[n - 1];
    return tau;
}

Newform delta_coefficients(int n_max) {
    auto tau = delta_exact(n_max);
    std::vector<cplx> c(tau.size());
    for (std::size_t n = 0; n < tau.size(); ++n) c[n] = static_cast<double>(tau[n]);
    return Newform(12, 1, DirichletCharacter::principal(1), 1.0, std::move(c), "Delta", std::move(tau));
}

std::vector<cplx> hecke_extend(const std::map<int, cplx>& prime_coeffs, int weight, int level,
                               const DirichletCharacter& nebentypus, int n_max) {
    std::vector<cplx> a(static_cast<std::size_t>(n_max) + 1, 0.0);
    a[1] = 1.0;
    const auto spf = smallest_prime_factors(n_max);
    for (int p : primes_up_to(n_max)) {
        auto it = prime_coeffs.find(p);
        if (it == prime_coeffs.end()) throw DomainError("hecke_extend: missing a(p) for p=" + std::to_string(p));
        a[p] = it->second;
        const bool ramified = level % p == 0;
        const cplx second = ramified ? cplx(0.0) : nebentypus(p) * std::pow(static_cast<double>(p), weight - 1.0);
        long long prev = 1, cur = p;
        while (cur * p <= n_max) {
            a[cur * p] = a[p] * a[cur] - second * a[prev];
            prev = cur;
            cur *= p;
        }
    }
    for (int n = 2; n <= n_max; ++n) {
        const int p = spf[n];
        int pe = 1;
        while (n % (pe * p) == 0) pe *= p;
        if (pe != n) a[n] = a[pe] * a[n / pe];
    }
    return a;
}

std::vector<Int128> hecke_extend_exact(const std::map<int, Int128>& prime_coeffs, int weight, int level,
                                       int n_max) {
    std::vector<Int128> a(static_cast<std::size_t>(n_max) + 1, 0);
    a[1] = 1;
    const auto spf = smallest_prime_factors(n_max);
    for (int p : primes_up_to(n_max)) {
        auto it = prime_coeffs.find(p);
        if (it == prime_coeffs.end()) throw DomainError("hecke_extend: missing a(p) for p=" + std::to_string(p));
        a[p] = it->second;
        if (static_cast<long long>(p) * p > n_max) continue;
        const bool ramified = level % p == 0;
        Int128 pk = 1;
        if (!ramified)
            for (int i = 0; i < weight - 1; ++i) pk = checked_mul(pk, p);
        long long prev = 1, cur = p;
        while (cur * p <= n_max) {
            Int128 v = checked_mul(a[p], a[cur]);
            if (!ramified) v = checked_sub(v, checked_mul(pk, a[prev]));
            a[cur * p] = v;
            prev = cur;
            cur *= p;
        }
    }
    for (int n = 2; n <= n_max; ++n) {
        const int p = spf[n];
        int pe = 1;
        while (n % (pe * p) == 0) pe *= p;
        if (pe != n) a[n] = checked_mul(a[pe], a[n / pe]);
    }
    return a;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

double parse_double(const std::string& tok, int line) {
    try {
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw ParseError("bad number '" + tok + "'", line);
        return v;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad number '" + tok + "'", line);
    } catch (const std::out_of_range&) {
        throw ParseError("number out of range '" + tok + "'", line);
    }
}

int parse_int(const std::string& tok, int line) {
    Int128 v;
    if (!parse_int128(tok, v) || v < 0 || v > 100000000) throw ParseError("bad integer '" + tok + "'", line);
    return static_cast<int>(v);
}

}  // namespace

Newform parse_newform(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int stage = 0;
    int k = 0, N = 0, nmax = 0;
    cplx eps;
    std::string label;
    std::vector<cplx> chi;
    std::vector<cplx> coeffs;
    std::vector<Int128> exact;
    bool all_exact = true;
    int expect_n = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        auto tok = tokenize(line);
        if (stage == 0) {
            if (tok.size() < 6) throw ParseError("header needs 'k N eps_re eps_im n_max label'", lineno);
            k = parse_int(tok[0], lineno);
            N = parse_int(tok[1], lineno);
            eps = {parse_double(tok[2], lineno), parse_double(tok[3], lineno)};
            nmax = parse_int(tok[4], lineno);
            if (k < 1 || N < 1 || nmax < 1) throw ParseError("k, N and n_max must be positive", lineno);
            label = tok[5];
            for (std::size_t i = 6; i < tok.size(); ++i) label += " " + tok[i];
            coeffs.assign(static_cast<std::size_t>(nmax) + 1, 0.0);
            exact.assign(static_cast<std::size_t>(nmax) + 1, 0);
            stage = 1;
        } else if (stage == 1) {
            if (tok.empty() || tok[0] != "chi") throw ParseError("expected 'chi' line", lineno);
            if (static_cast<int>(tok.size()) != N + 1)
                throw ParseError("chi line needs " + std::to_string(N) + " values", lineno);
            for (int i = 1; i <= N; ++i) {
                const auto comma = tok[i].find(',');
                if (comma == std::string::npos) throw ParseError("chi value must be 're,im'", lineno);
                chi.emplace_back(parse_double(tok[i].substr(0, comma), lineno),
                                 parse_double(tok[i].substr(comma + 1), lineno));
            }
            stage = 2;
        } else {
            if (tok.size() != 3) throw ParseError("coefficient line needs 'n re im'", lineno);
            const int n = parse_int(tok[0], lineno);
            if (n != expect_n)
                throw ParseError("expected n=" + std::to_string(expect_n) + ", got " + tok[0], lineno);
            if (n > nmax) throw ParseError("n exceeds n_max", lineno);
            Int128 ex;
            const double im = parse_double(tok[2], lineno);
            if (parse_int128(tok[1], ex) && im == 0.0) {
                exact[n] = ex;
                coeffs[n] = static_cast<double>(ex);
            } else {
                all_exact = false;
                coeffs[n] = {parse_double(tok[1], lineno), im};
            }
            ++expect_n;
        }
    }
    if (stage < 2) throw ParseError("truncated file", lineno);
    if (expect_n != nmax + 1)
        throw ParseError("expected " + std::to_string(nmax) + " coefficients, got " + std::to_string(expect_n - 1),
                         lineno);
    std::optional<std::vector<Int128>> ex;
    if (all_exact) ex = std::move(exact);
    DirichletCharacter xi(N, std::move(chi));
    return Newform(k, N, std::move(xi), eps, std::move(coeffs), label, std::move(ex));
}

Newform load_newform(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string(), 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_newform(ss.str());
}

std::string format_newform(const Newform& f) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << f.weight() << ' ' << f.level() << ' ' << f.root_number().real() << ' ' << f.root_number().imag() << ' '
       << f.n_max() << ' ' << f.label() << '\n';
    os << "chi";
    for (const cplx& v : f.nebentypus().values()) os << ' ' << v.real() << ',' << v.imag();
    os << '\n';
    for (int n = 1; n <= f.n_max(); ++n) {
        if (f.has_exact())
            os << n << ' ' << to_string(f.exact(n)) << " 0\n";
        else
            os << n << ' ' << f.a(n).real() << ' ' << f.a(n).imag() << '\n';
    }
    return os.str();
}

void save_newform(const Newform& f, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("io", "cannot write " + path.string());
    out << format_newform(f);
}

Newform dual(const Newform& f) {
    std::vector<cplx> c(f.coefficients().begin(), f.coefficients().end());
    for (auto& v : c) v = std::conj(v);
    std::optional<std::vector<Int128>> ex;
    if (f.has_exact()) {
        ex.emplace(static_cast<std::size_t>(f.n_max()) + 1, 0);
        for (int n = 1; n <= f.n_max(); ++n) (*ex)[n] = f.exact(n);
    }
    std::string label = f.label();
    const std::string suffix = "-dual";
    if (label.size() > suffix.size() && label.ends_with(suffix))
        label.resize(label.size() - suffix.size());
    else if (!f.is_self_dual())
        label += suffix;
    return Newform(f.weight(), f.level(), f.nebentypus().conj(), std::conj(f.root_number()), std::move(c), label,
                   std::move(ex));
}

Newform twist_newform(const Newform& f, const DirichletCharacter& chi) {
    const int q = chi.modulus();
    if (!is_prime(q)) throw DomainError("twist_newform: character modulus must be prime");
    if (f.level() % q == 0) throw DomainError("twist_newform: q divides the level");
    if (chi.is_trivial()) throw DomainError("twist_newform: character must be nontrivial");
    const int N = f.level();
    const int level = N * q * q;
    std::vector<cplx> c(static_cast<std::size_t>(f.n_max()) + 1, 0.0);
    for (int n = 1; n <= f.n_max(); ++n) c[n] = f.a(n) * chi(n);
    std::optional<std::vector<Int128>> ex;
    if (f.has_exact() && chi.is_real()) {
        ex.emplace(c.size(), 0);
        for (int n = 1; n <= f.n_max(); ++n) {
            const long long s = std::llround(chi(n).real());
            (*ex)[n] = f.exact(n) * s;
            c[n] = static_cast<double>((*ex)[n]);
        }
    }
    // nebentypus xi * chi^2 on residues mod N q^2
    std::vector<cplx> neb(static_cast<std::size_t>(level));
    for (int n = 0; n < level; ++n) neb[n] = f.nebentypus()(n) * chi(n) * chi(n);
    const cplx tau = gauss_sum(chi);
    cplx eps = f.root_number() * f.nebentypus()(q) * chi(N) * tau * tau / static_cast<double>(q);
    eps /= std::abs(eps);
    return Newform(f.weight(), level, DirichletCharacter(level, std::move(neb)), eps, std::move(c),
                   f.label() + "(x)chi" + std::to_string(q), std::move(ex));
}

std::vector<DeligneEntry> check_deligne(const Newform& f) {
    std::vector<DeligneEntry> out;
    const double half = (f.weight() - 1) / 2.0;
    for (int p : primes_up_to(f.n_max())) {
        if (f.level() % p == 0) continue;
        DeligneEntry e{p, std::abs(f.a(p)), 2.0 * std::pow(static_cast<double>(p), half), false};
        if (f.has_exact()) {
            const cpp_int ap = to_big(f.exact(p));
            e.strict = ap * ap < 4 * boost::multiprecision::pow(cpp_int(p), f.weight() - 1);
        } else {
            e.strict = e.abs_ap < e.bound * (1.0 - 1e-12);
        }
        out.push_back(e);
    }
    return out;
}

}  // namespace szlab

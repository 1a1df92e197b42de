#include <doctest.h>

#include <filesystem>
#include <random>
#include <regex>

#include "oracles.hpp"
#include "szlab/arith.hpp"
#include "szlab/lfunction.hpp"
#include "szlab/newform.hpp"

using namespace szlab;

namespace {

std::map<int, Int128> delta_primes(const std::vector<Int128>& tau) {
    std::map<int, Int128> out;
    for (int p : primes_up_to(static_cast<int>(tau.size()) - 1)) out[p] = tau[p];
    return out;
}

// Replaces the coefficient line for n in a formatted newform.
std::string with_coefficient(std::string text, int n, const std::string& value) {
    const std::regex line("\n" + std::to_string(n) + " [^\n]*\n");
    return std::regex_replace(text, line, "\n" + std::to_string(n) + " " + value + " 0\n",
                              std::regex_constants::format_first_only);
}

}  // namespace

TEST_CASE("Delta coefficients against the naive eta product") {
    const auto ref = oracle::eta_product(1000);
    const auto tau = delta_exact(1000);
    REQUIRE(tau.size() == ref.size());
    int mismatches = 0;
    for (std::size_t n = 1; n < tau.size(); ++n) mismatches += tau[n] != ref[n];
    CHECK(mismatches == 0);

    const Newform D = delta_coefficients(1000);
    CHECK(D.a(1) == cplx(1.0));
    CHECK(D.a(2) == cplx(-24.0));
    CHECK(D.a(3) == cplx(252.0));
    CHECK(D.a(5) == cplx(4830.0));
    CHECK(D.a(6) == D.a(2) * D.a(3));
    CHECK(D.exact(6) == -6048);
    CHECK(D.weight() == 12);
    CHECK(D.level() == 1);
    CHECK(D.root_number() == cplx(1.0));
    CHECK(D.is_self_dual());
    CHECK(D.satisfies_deligne());
    CHECK_THROWS_AS(D.a(1001), DomainError);
    CHECK_THROWS_AS(D.a(0), DomainError);
    CHECK_THROWS_AS(delta_coefficients(0), DomainError);
}

TEST_CASE("Hecke extension from primes reproduces the eta product") {
    const auto tau = delta_exact(5000);
    const auto ext = hecke_extend_exact(delta_primes(tau), 12, 1, 5000);
    int mismatches = 0;
    for (int n = 1; n <= 5000; ++n) mismatches += ext[n] != tau[n];
    CHECK(mismatches == 0);
    CHECK(ext[4] == -1472);
    CHECK(ext[9] == -113643);
    CHECK(ext[12] == ext[4] * ext[3]);

    std::map<int, cplx> fp;
    for (const auto& [p, v] : delta_primes(delta_exact(200))) fp[p] = static_cast<double>(v);
    const auto a = hecke_extend(fp, 12, 1, DirichletCharacter::principal(1), 200);
    for (int n = 1; n <= 200; ++n) CHECK(std::abs(a[n] - static_cast<double>(tau[n])) <= 1e-15 * std::abs(a[n]));
}

TEST_CASE("Hecke extension reports the first missing prime") {
    std::map<int, Int128> partial{{2, -24}, {3, 252}, {7, -16744}};
    try {
        (void)hecke_extend_exact(partial, 12, 1, 10);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("p=5") != std::string::npos);
    }
}

TEST_CASE("ramified primes use a(p^r) = a(p)^r") {
    const auto chi = DirichletCharacter::principal(2);
    std::map<int, cplx> fp{{2, 3.0}, {3, 1.0}, {5, -2.0}, {7, 0.5}};
    const auto a = hecke_extend(fp, 2, 2, chi, 10);
    CHECK(a[4] == cplx(9.0));
    CHECK(a[8] == cplx(27.0));
    CHECK(a[9] == cplx(1.0 - 3.0));  // unramified: a(3)^2 - chi(3) 3
}

TEST_CASE("multiplicativity on random coprime pairs") {
    const Newform D = delta_coefficients(3000);
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> pick(2, 1500);
    int tested = 0;
    while (tested < 400) {
        const int m = pick(rng), n = pick(rng);
        if (static_cast<long long>(m) * n > 3000 || gcd(m, n) != 1) continue;
        CHECK(D.exact(m * n) == D.exact(m) * D.exact(n));
        ++tested;
    }
}

TEST_CASE("text format round trip and file IO") {
    const Newform D = delta_coefficients(60);
    const Newform back = parse_newform(format_newform(D));
    CHECK(back == D);
    CHECK(back.has_exact());

    const auto path = std::filesystem::temp_directory_path() / "szlab_roundtrip_delta.txt";
    save_newform(D, path);
    CHECK(load_newform(path) == D);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_newform("/nonexistent/definitely/missing.txt"), ParseError);
}

TEST_CASE("parse errors carry the line number") {
    const std::string good = format_newform(delta_coefficients(10));
    auto line_of = [](const std::string& text) {
        try {
            (void)parse_newform(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("12 1 1 0\n") == 1);
    CHECK(line_of("12 1 1 0 10 Delta\nphi 1,0\n") == 2);
    CHECK(line_of(with_coefficient(good, 4, "abc")) == 6);
    CHECK(line_of("# comment\n\n" + good.substr(0, good.find("\n5 "))) > 0);
    std::string skipped = good;
    skipped.erase(skipped.find("\n3 "), skipped.find("\n4 ") - skipped.find("\n3 "));
    CHECK(line_of(skipped) == 5);
}

TEST_CASE("invariant violations") {
    const std::string good = format_newform(delta_coefficients(10));
    CHECK_THROWS_AS(parse_newform(with_coefficient(good, 6, "1")), InvariantError);
    CHECK_THROWS_AS(parse_newform(with_coefficient(good, 1, "2")), InvariantError);
    CHECK_THROWS_AS(parse_newform(with_coefficient(good, 4, "0")), InvariantError);
    std::vector<cplx> c{0.0, 1.0, 2.0};
    CHECK_THROWS_AS(Newform(12, 1, DirichletCharacter::principal(1), cplx(0.5, 0.0), c, "bad-eps"),
                    InvariantError);
    CHECK_THROWS_AS(Newform(12, 3, DirichletCharacter::principal(2), 1.0, c, "bad-neb"), InvariantError);
}

TEST_CASE("Deligne violation is a warning, not an error") {
    std::map<int, Int128> fp{{2, 100}, {3, 0}, {5, 0}, {7, 0}};
    const auto ex = hecke_extend_exact(fp, 12, 1, 10);
    std::vector<cplx> c(ex.size());
    for (std::size_t n = 0; n < ex.size(); ++n) c[n] = static_cast<double>(ex[n]);
    const Newform f(12, 1, DirichletCharacter::principal(1), 1.0, c, "loud", ex);
    CHECK_FALSE(f.satisfies_deligne());
    REQUIRE(f.warnings().size() == 1);
    CHECK(f.warnings().front().find("p=2") != std::string::npos);
    CHECK_THROWS_AS(lambda_complete(f, 6.0), DomainError);
}

TEST_CASE("check_deligne") {
    const Newform D = delta_coefficients(1000);
    const auto rows = check_deligne(D);
    REQUIRE(!rows.empty());
    CHECK(rows[0].p == 2);
    CHECK(rows[0].abs_ap == 24.0);
    CHECK(rows[0].bound == doctest::Approx(90.50966799187809).epsilon(1e-14));
    CHECK(rows[0].strict);
    CHECK(rows.size() == primes_up_to(1000).size());
    for (const auto& r : rows) CHECK(r.strict);

    // equality |a(2)| = 2 * 2^{(k-1)/2} at k = 3: a(2) = 4
    std::map<int, Int128> fp{{2, 4}, {3, 0}, {5, 0}, {7, 0}};
    const auto ex = hecke_extend_exact(fp, 3, 1, 10);
    std::vector<cplx> c(ex.size());
    for (std::size_t n = 0; n < ex.size(); ++n) c[n] = static_cast<double>(ex[n]);
    const Newform eq(3, 1, DirichletCharacter::principal(1), 1.0, c, "edge", ex);
    const auto er = check_deligne(eq);
    CHECK_FALSE(er[0].strict);
    CHECK(er[1].strict);
    CHECK(eq.satisfies_deligne());
}

TEST_CASE("dual and twists") {
    const Newform D = delta_coefficients(400);
    CHECK(dual(D) == D);

    const auto chars = character_table(5);
    const DirichletCharacter& chi = chars[1];  // order 4, complex
    REQUIRE_FALSE(chi.is_real());
    const Newform t = twist_newform(D, chi);
    CHECK(t.level() == 25);
    CHECK_FALSE(t.is_self_dual());
    for (int n : {5, 10, 25, 100}) CHECK(t.a(n) == cplx(0.0));
    CHECK(std::abs(t.a(2) - D.a(2) * chi(2)) < 1e-12);

    const Newform td = dual(t);
    CHECK(std::abs(td.a(2) - std::conj(t.a(2))) < 1e-15);
    CHECK(std::abs(t.root_number() * td.root_number() - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(t.root_number()) - 1.0) < 1e-12);
    CHECK(dual(td) == t);

    // chi then conj chi restores a(n) on units
    const auto back_chi = chi.conj();
    for (int n = 1; n <= 400; ++n)
        if (n % 5 != 0) CHECK(std::abs(t.a(n) * back_chi(n) - D.a(n)) <= 1e-12 * std::max(1.0, std::abs(D.a(n))));

    CHECK_THROWS_AS(twist_newform(D, DirichletCharacter::principal(5)), DomainError);
    CHECK_THROWS_AS(twist_newform(t, chi), DomainError);
}

TEST_CASE("quadratic twist mod 5 passes the functional equation") {
    const Newform D = delta_coefficients(2000);
    const auto chars = character_table(5);
    const DirichletCharacter& chi = chars[2];  // quadratic
    REQUIRE(chi.is_real());
    const Newform t = twist_newform(D, chi);
    CHECK(t.level() == 25);
    CHECK(t.has_exact());
    // eps chi(1) tau(chi)^2 / 5 with tau = sqrt 5
    CHECK(std::abs(t.root_number() - 1.0) < 1e-12);
    for (cplx s : {cplx(6.0, 3.0), cplx(3.0, -7.0), cplx(9.0, 12.0)}) CHECK(funceq_residual(t, s) < 1e-8);
    // a wrong root number is caught by the same residual
    std::vector<cplx> c(t.coefficients().begin(), t.coefficients().end());
    const Newform wrong(12, 25, t.nebentypus(), -1.0, c, "wrong-eps");
    const cplx s0(6.0, 3.0);
    CHECK(funceq_residual(wrong, s0) > 1e6 * funceq_residual(t, s0));
    CHECK(funceq_residual(wrong, s0) > 1e-5);
}

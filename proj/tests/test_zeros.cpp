#include <doctest.h>

#include "oracles.hpp"
#include "szlab/character.hpp"
#include "szlab/lfunction.hpp"
#include "szlab/newform.hpp"
#include "szlab/special_functions.hpp"
#include "szlab/zeros.hpp"

using namespace szlab;

namespace {

const Newform& delta() {
    static const Newform D = delta_coefficients(5000);
    return D;
}

// Sign changes of the theta-integral Lambda(6 + it) on a 1e-3 grid.
const std::vector<double>& oracle_ordinates() {
    static const std::vector<double> roots = [] {
        const oracle::ThetaLambda L(oracle::to_double(oracle::eta_product(200)), 12);
        return oracle::sign_change_roots([&](double t) { return L.central(t); }, 0.0, 20.0, 1e-3);
    }();
    return roots;
}

const std::vector<double> kLowOrdinates = {9.2223794006, 13.9075498618, 17.4427769788, 19.6565131418};

// Ordinates above 20 from a 40-digit mpmath evaluation of the incomplete-gamma
// series (80 terms); the double-precision theta oracle cannot resolve them.
const std::vector<double> kHighOrdinates = {22.336103637209867, 25.274636548112365, 26.804391158350403,
                                            28.831682624186875, 31.178209498360259, 32.774875382231207};

}  // namespace

TEST_CASE("fine-grid oracle sees four zeros in [0, 20]") {
    const auto& r = oracle_ordinates();
    REQUIRE(r.size() == 4);
    CHECK(r[0] == doctest::Approx(9.22238).epsilon(1e-6));
    CHECK(r[1] == doctest::Approx(13.90755).epsilon(1e-6));
    CHECK(r[2] == doctest::Approx(17.44278).epsilon(1e-6));
    CHECK(r[3] == doctest::Approx(19.65651).epsilon(1e-6));
}

TEST_CASE("scan_zeros matches the oracle on [0, 20]") {
    const auto zs = scan_zeros(delta(), 0.0, 20.0, 0.05);
    const auto& r = oracle_ordinates();
    REQUIRE(zs.size() == r.size());
    for (std::size_t i = 0; i < zs.size(); ++i) {
        // the oracle's cosine sum loses digits to cancellation as t grows
        CHECK(std::abs(zs[i].t - r[i]) < (r[i] < 19.0 ? 2e-9 : 1e-8));
        CHECK(std::abs(zs[i].t - kLowOrdinates[i]) < 1e-9);
        CHECK(zs[i].refinement_error < 1e-9);
        CHECK(zs[i].winding == 1);
        CHECK(zs[i].rho == cplx(6.0, zs[i].t));
        // residue of Delta_f = (2 pi)^{-rho} Gamma(rho) (-L'(rho))
        const cplx expected = std::exp(-zs[i].rho * std::log(two_pi)) * szlab::gamma(zs[i].rho) * (-zs[i].lprime);
        CHECK(std::abs(zs[i].delta_residue - expected) < 1e-14 * std::abs(expected));
    }
}

TEST_CASE("scan_zeros above 20 against high-precision ordinates") {
    const auto zs = scan_zeros(delta(), 20.0, 33.0, 0.05);
    REQUIRE(zs.size() == kHighOrdinates.size());
    for (std::size_t i = 0; i < zs.size(); ++i) {
        CHECK(std::abs(zs[i].t - kHighOrdinates[i]) < 2e-9);
        CHECK(zs[i].winding == 1);
    }
}

TEST_CASE("scan_zeros edge cases") {
    CHECK(scan_zeros(delta(), 0.0, 5.0, 0.05).empty());
    CHECK(scan_zeros(delta(), 10.0, 5.0, 0.05).empty());
    CHECK_THROWS_AS(scan_zeros(delta(), 0.0, 5.0, 0.0), DomainError);
    // a coarse step that straddles two zeros still finds both after rescanning
    const auto coarse = scan_zeros(delta(), 0.0, 20.0, 0.5);
    CHECK(coarse.size() == 4);
}

TEST_CASE("certify_simple against the winding oracle") {
    const auto L = [](cplx s) { return lambda_complete(delta(), s); };
    const cplx rho1(6.0, oracle_ordinates()[0]);
    CHECK(certify_simple(delta(), rho1, 0.5) == 1);
    CHECK(std::round(oracle::winding(L, rho1, 0.5)) == 1.0);
    CHECK(certify_simple(delta(), cplx(6.0, 5.0), 0.5) == 0);
    CHECK(std::round(oracle::winding(L, cplx(6.0, 5.0), 0.5)) == 0.0);
    CHECK(certify_simple(delta(), rho1, 0.3) == certify_simple(delta(), rho1, 0.5));
    // a circle through the zero cannot be certified
    CHECK_THROWS_AS(certify_simple(delta(), rho1 + 0.3, 0.3), CertificationError);
}

TEST_CASE("count_zeros") {
    CHECK(count_zeros(delta(), 0.0).count == 0);
    CHECK(count_zeros(delta(), 5.0).count == 0);
    CHECK(count_zeros(delta(), 20.0).count == 4);
    CHECK(count_zeros(delta(), 30.0).count == 8);
    CHECK_THROWS_AS(count_zeros(delta(), -1.0), DomainError);
    // the box edge resolves a zero 1e-6 away on either side
    const double t1 = oracle_ordinates()[0];
    CHECK(count_zeros(delta(), t1 - 1e-6).count == 0);
    CHECK(count_zeros(delta(), t1 + 1e-6).count == 1);
}

TEST_CASE("polish_zero") {
    const auto zs = scan_zeros(delta(), 0.0, 10.0, 0.05);
    REQUIRE(zs.size() == 1);
    const cplx p = polish_zero(delta(), zs[0].rho + cplx(1e-4, -2e-4));
    CHECK(std::abs(p - zs[0].rho) < 1e-9);
    CHECK(std::abs(p.real() - 6.0) < 1e-12);
}

TEST_CASE("residues") {
    CHECK(residues_up_to(delta(), 5.0).empty());
    CHECK(residue_set(delta(), 5.0).empty());
    const auto rs = residue_set(delta(), 15.0);
    REQUIRE(rs.size() == 4);
    for (std::size_t i = 0; i < rs.size(); i += 2) {
        CHECK(rs[i + 1].rho == std::conj(rs[i].rho));
        CHECK(rs[i + 1].residue == std::conj(rs[i].residue));
    }

    // contour integral of Delta_f(s) (-iz)^{-s} / (2 pi i) around rho_1
    const cplx z(0.3, 0.2);
    const cplx logw = std::log(cplx(0.0, -1.0) * z);
    const ZeroRecord r1 = residues_up_to(delta(), 10.0).front();
    const double radius = 0.5;
    // periodic trapezoid rule, spectrally accurate on the circle
    const int nodes = 256;
    cplx contour = 0;
    for (int j = 0; j < nodes; ++j) {
        const cplx u = std::polar(1.0, two_pi * j / nodes);
        const cplx s = r1.rho + radius * u;
        contour += delta_value(delta(), s) * std::exp(-s * logw) * radius * u / static_cast<double>(nodes);
    }
    const cplx expected = r1.delta_residue * std::exp(-r1.rho * logw);
    CHECK(std::abs(contour - expected) < 1e-6 * std::abs(expected));
}

TEST_CASE("non-self-dual forms fall back to minima of |Lambda|") {
    const Newform t = twist_newform(delta_coefficients(4000), character_table(5)[1]);
    REQUIRE_FALSE(t.is_self_dual());
    const auto zs = scan_zeros(t, 0.0, 6.0, 0.05);
    for (const auto& z : zs) {
        CHECK(z.winding == 1);
        CHECK(std::abs(lambda_complete(t, z.rho)) < 1e-9 * std::abs(lambda_complete(t, z.rho + 0.1)));
    }
    const auto box = count_zeros(t, 6.0);
    CHECK(box.count == static_cast<int>(zs.size()));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "supersplit/collective.hpp"
#include "supersplit/oracle.hpp"

using namespace supersplit;

namespace {

double rel_err(Complex got, Complex want) {
    const double scale = std::max(std::abs(want), 1.0);
    return std::abs(got - want) / scale;
}

// Deterministic draws with a fixed mantissa width.
double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

CollectiveParams random_params(std::mt19937_64& rng) {
    const double big_gamma = std::pow(10.0, uniform(rng, 0.0, 4.0));
    const double lamb = uniform(rng, -1e3, 1e3);
    const double phi = uniform(rng, 0.0, 1e3);
    return CollectiveParams::make(1.0, big_gamma, lamb, phi);
}

} // namespace

TEST_CASE("construction validates and normalizes") {
    CHECK_THROWS_AS(CollectiveParams::make(0.0, 2.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(CollectiveParams::make(1.0, 0.5, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(CollectiveParams::make(1.0, 2.0, 1.0 / 0.0, 1.0),
                    std::invalid_argument);
    const auto p = CollectiveParams::make(1.0, 2.0, -3.0, -7.0);
    CHECK(p.phi == 7.0); // negative splitting folds to |phi|
    CHECK(p.lamb_shift == -3.0);
}

TEST_CASE("all collective effects off: degenerate single-atom pair") {
    const auto eig =
        collective_eigenvalues(CollectiveParams::make(1.0, 1.0, 0.0, 0.0));
    CHECK(eig.degenerate);
    CHECK(rel_err(eig.lambda_plus, Complex(1.0, 0.0)) < 1e-14);
    CHECK(rel_err(eig.lambda_minus, Complex(1.0, 0.0)) < 1e-14);
    CHECK(std::isnan(eig.a_plus.real()));
}

TEST_CASE("phi = 0 reduces to the unsplit pair {gamma, Gamma + iL}") {
    const auto eig =
        collective_eigenvalues(CollectiveParams::make(1.0, 19.0, 5.0, 0.0));
    CHECK_FALSE(eig.degenerate);
    const Complex a(1.0, 0.0), b(19.0, 5.0);
    const double direct = rel_err(eig.lambda_plus, a) + rel_err(eig.lambda_minus, b);
    const double swapped = rel_err(eig.lambda_plus, b) + rel_err(eig.lambda_minus, a);
    CHECK(std::min(direct, swapped) < 1e-13);
    CHECK_FALSE(eig.x_defined);
}

TEST_CASE("EIT-range poles are purely imaginary with widths 10(1 +/- sqrt(99)/20)") {
    const auto eig =
        collective_eigenvalues(CollectiveParams::make(1.0, 19.0, 0.0, 15.0));
    CHECK(eig.delta_plus.real() == 0.0);
    CHECK(eig.delta_minus.real() == 0.0);
    const double lo = 10.0 * (1.0 - std::sqrt(99.0) / 20.0);
    const double hi = 10.0 * (1.0 + std::sqrt(99.0) / 20.0);
    const double im_lo = std::min(eig.delta_plus.imag(), eig.delta_minus.imag());
    const double im_hi = std::max(eig.delta_plus.imag(), eig.delta_minus.imag());
    CHECK(im_lo == doctest::Approx(lo).epsilon(1e-12));
    CHECK(im_hi == doctest::Approx(hi).epsilon(1e-12));
    CHECK(eig.x_param == doctest::Approx(1.2).epsilon(1e-14));
    CHECK(eig.y_param == doctest::Approx(std::sqrt(301.0) / 20.0).epsilon(1e-14));
}

TEST_CASE("Gamma = gamma: splitting sqrt(phi^2 + L^2), widths gamma") {
    const auto eig =
        collective_eigenvalues(CollectiveParams::make(1.0, 1.0, 6.6, 10.0));
    const double want = std::sqrt(10.0 * 10.0 + 6.6 * 6.6);
    CHECK(eig.pole_splitting() == doctest::Approx(want).epsilon(1e-12));
    CHECK(eig.delta_plus.imag() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eig.delta_minus.imag() == doctest::Approx(1.0).epsilon(1e-12));
    // midpoint of the two pole positions is -L/2
    CHECK(0.5 * (eig.delta_plus.real() + eig.delta_minus.real()) ==
          doctest::Approx(-3.3).epsilon(1e-12));
}

TEST_CASE("eigenvalues match the N-atom matrix projection (independent route)") {
    // The dense matrix realization knows nothing about the closed form; its
    // group-uniform projection must approach the same pair with an O(1/N)
    // defect.
    for (const auto& p :
         {CollectiveParams::make(1.0, 19.0, 0.0, 15.0),
          CollectiveParams::make(1.0, 19.0, 5.0, 0.0),
          CollectiveParams::make(1.0, 1.0, 6.6, 10.0),
          CollectiveParams::make(1.0, 3.0, 20.0, 30.0)}) {
        const auto eig = collective_eigenvalues(p);
        const int n = 1000;
        const auto mat = oracle::build_matrix(p, n / 2, n / 2);
        const auto [sa, sb] = oracle::symmetric_subspace_eigenvalues(mat);
        const double direct =
            std::abs(sa - eig.lambda_plus) + std::abs(sb - eig.lambda_minus);
        const double swapped =
            std::abs(sa - eig.lambda_minus) + std::abs(sb - eig.lambda_plus);
        const double scale =
            std::abs(Complex(p.big_gamma - 1.0, p.lamb_shift)) + 1.0;
        CHECK(std::min(direct, swapped) / scale < 2.0 / n);
    }
}

TEST_CASE("regime parameters") {
    const auto r1 = regime_parameters(CollectiveParams::make(1.0, 19.0, 0.0, 15.0));
    REQUIRE(r1.x.has_value());
    CHECK(*r1.x == doctest::Approx(1.2).epsilon(1e-14));
    CHECK(r1.y == doctest::Approx(std::sqrt(301.0) / 20.0).epsilon(1e-14));

    const auto r2 = regime_parameters(CollectiveParams::make(1.0, 1.0, 0.0, 7.0));
    REQUIRE(r2.x.has_value());
    CHECK(*r2.x == 0.0);

    const auto r3 = regime_parameters(CollectiveParams::make(1.0, 19.0, 0.0, 62.0));
    REQUIRE(r3.x.has_value());
    CHECK(*r3.x == doctest::Approx(18.0 / 62.0).epsilon(1e-14));

    const auto r4 = regime_parameters(CollectiveParams::make(1.0, 19.0, 0.0, 0.0));
    CHECK_FALSE(r4.x.has_value());
}

TEST_CASE("trace, determinant, residue-sum and positivity over random params") {
    std::mt19937_64 rng(0xC0FFEE);
    double worst_trace = 0.0, worst_det = 0.0, worst_asum = 0.0;
    for (int k = 0; k < 100000; ++k) {
        const auto p = random_params(rng);
        const auto eig = collective_eigenvalues(p);

        const Complex trace_want(p.big_gamma + 1.0, p.lamb_shift);
        worst_trace = std::max(
            worst_trace, std::abs(eig.lambda_plus + eig.lambda_minus - trace_want) /
                             std::abs(trace_want));

        const Complex det_want(p.big_gamma + 0.25 * p.phi * p.phi, p.lamb_shift);
        worst_det = std::max(
            worst_det, std::abs(eig.lambda_plus * eig.lambda_minus - det_want) /
                           std::abs(det_want));

        CHECK(eig.lambda_plus.real() > 0.0);
        CHECK(eig.lambda_minus.real() > 0.0);
        // pole positions are i*lambda componentwise
        CHECK(eig.delta_plus == Complex(0, 1) * eig.lambda_plus);
        CHECK(eig.delta_minus == Complex(0, 1) * eig.lambda_minus);

        if (!eig.degenerate)
            worst_asum = std::max(worst_asum,
                                  std::abs(eig.a_plus + eig.a_minus - 1.0));
    }
    CHECK(worst_trace < 1e-10);
    CHECK(worst_det < 1e-10);
    CHECK(worst_asum < 1e-10);
}

TEST_CASE("phi = 0 reduction over random params") {
    std::mt19937_64 rng(0xBADA55);
    double worst = 1.0e-300;
    for (int k = 0; k < 10000; ++k) {
        const double big_gamma = std::pow(10.0, uniform(rng, 0.0, 4.0));
        const double lamb = uniform(rng, -1e3, 1e3);
        const auto eig = collective_eigenvalues(
            CollectiveParams::make(1.0, big_gamma, lamb, 0.0));
        const Complex a(1.0, 0.0), b(big_gamma, lamb);
        const double direct =
            rel_err(eig.lambda_plus, a) + rel_err(eig.lambda_minus, b);
        const double swapped =
            rel_err(eig.lambda_plus, b) + rel_err(eig.lambda_minus, a);
        worst = std::max(worst, std::min(direct, swapped));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("Gamma = gamma closed form over random (phi, L)") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 2000; ++k) {
        const double phi = uniform(rng, 0.1, 200.0);
        const double lamb = uniform(rng, -200.0, 200.0);
        const auto eig =
            collective_eigenvalues(CollectiveParams::make(1.0, 1.0, lamb, phi));
        const double s = std::sqrt(phi * phi + lamb * lamb);
        const double re_hi = 0.5 * (-lamb + s);
        const double re_lo = 0.5 * (-lamb - s);
        const double got_hi =
            std::max(eig.delta_plus.real(), eig.delta_minus.real());
        const double got_lo =
            std::min(eig.delta_plus.real(), eig.delta_minus.real());
        CHECK(std::abs(got_hi - re_hi) / s < 1e-12);
        CHECK(std::abs(got_lo - re_lo) / s < 1e-12);
        CHECK(eig.delta_plus.imag() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(eig.delta_minus.imag() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(eig.pole_splitting() == doctest::Approx(s).epsilon(1e-12));
    }
}

TEST_CASE("unit rescaling leaves gamma-unit outputs unchanged") {
    std::mt19937_64 rng(99);
    for (int k = 0; k < 2000; ++k) {
        const auto p = random_params(rng);
        const double s = std::pow(10.0, uniform(rng, -3.0, 3.0));
        const auto scaled =
            CollectiveParams::make(s, p.big_gamma, p.lamb_shift, p.phi);
        const auto e1 = collective_eigenvalues(p);
        const auto e2 = collective_eigenvalues(scaled);
        CHECK(rel_err(e2.lambda_plus, e1.lambda_plus) < 1e-12);
        CHECK(rel_err(e2.lambda_minus, e1.lambda_minus) < 1e-12);
        if (!e1.degenerate && !e2.degenerate) {
            CHECK(rel_err(e2.a_plus, e1.a_plus) < 1e-12);
            CHECK(rel_err(e2.a_minus, e1.a_minus) < 1e-12);
        }
    }
}

TEST_CASE("degeneracy flag fires on the bifurcation line L=0, phi=Gamma-gamma") {
    const auto eig =
        collective_eigenvalues(CollectiveParams::make(1.0, 3.0, 0.0, 2.0));
    CHECK(eig.degenerate);
    CHECK(eig.lambda_plus.real() == doctest::Approx(2.0)); // (Gamma+gamma)/2
    CHECK(std::abs(eig.lambda_plus.imag()) < 1e-12);
    CHECK(std::isnan(eig.a_plus.real()));
    CHECK(std::isnan(eig.a_minus.real()));
    CHECK(eig.pole_splitting() == 0.0);

    // just off the line the flag clears
    const auto off =
        collective_eigenvalues(CollectiveParams::make(1.0, 3.0, 0.0, 2.0 + 1e-5));
    CHECK_FALSE(off.degenerate);
}

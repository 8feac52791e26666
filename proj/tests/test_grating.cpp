#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "accordion/errors.hpp"
#include "accordion/grating.hpp"

using namespace accordion;
using std::numbers::pi;

namespace {

// Quadrature oracle, written independently of the library's numeric path:
// trapezoid average of f(x) e^{2 pi i m x / d} over one period at high density.
cdouble coefficient_by_quadrature(const BinaryPhaseGrating& g, double phi, int m, int n = 1 << 20) {
    cdouble acc{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        const double t = (i + 0.5) / n;
        const cdouble f = t < g.duty ? std::polar(1.0, phi) : cdouble{1.0, 0.0};
        acc += f * std::polar(1.0, 2.0 * pi * m * t);
    }
    return acc / static_cast<double>(n);
}

BinaryPhaseGrating default_grating() { return BinaryPhaseGrating{}; }

}  // namespace

TEST_CASE("phase depth at normal incidence") {
    const BinaryPhaseGrating g = default_grating();  // h=390 nm, n0=2.0
    // 2 pi h (n0 - 1) / lambda
    CHECK(phase_depth(g, 780.0) == doctest::Approx(pi).epsilon(1e-14));
    CHECK(phase_depth(g, 775.0) == doctest::Approx(3.1618609932903725).epsilon(1e-14));

    BinaryPhaseGrating matched = g;
    matched.index_n0 = 1.0;  // index-matched ridge adds no phase
    CHECK(phase_depth(matched, 775.0) == doctest::Approx(0.0));
}

TEST_CASE("phase depth under tilt") {
    const BinaryPhaseGrating g = default_grating();
    // Snell refraction inside the ridge lengthens the optical path
    CHECK(phase_depth(g, 780.0, 0.1) == doctest::Approx(1.002502602900901 * pi).epsilon(1e-13));
    CHECK(phase_depth(g, 780.0, -0.1) == doctest::Approx(phase_depth(g, 780.0, 0.1)));
    CHECK(phase_depth(g, 780.0, 0.0) == doctest::Approx(pi));
    CHECK_THROWS_AS((void)phase_depth(g, -775.0), DomainError);
    CHECK_THROWS_AS((void)phase_depth(g, 775.0, 1.6), DomainError);
}

TEST_CASE("structure function is binary with a half-open ridge") {
    const BinaryPhaseGrating g = default_grating();
    const double phi = 0.7;
    CHECK(structure_function(g, 0.0, phi) == std::polar(1.0, phi));
    CHECK(structure_function(g, 1.4999, phi) == std::polar(1.0, phi));
    CHECK(structure_function(g, 1.5, phi) == cdouble{1.0, 0.0});  // groove starts at D*d
    CHECK(structure_function(g, 2.9999, phi) == cdouble{1.0, 0.0});
    CHECK(structure_function(g, 3.0, phi) == std::polar(1.0, phi));  // periodic
    CHECK(structure_function(g, -1.6, phi) == std::polar(1.0, phi));
}

TEST_CASE("first-order coefficient and efficiency at the design point") {
    const BinaryPhaseGrating g = default_grating();  // D = 0.5
    const cdouble a1 = fourier_coefficient(g, 1, pi);
    CHECK(a1.real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(a1.imag() == doctest::Approx(-2.0 / pi).epsilon(1e-14));
    const cdouble am1 = fourier_coefficient(g, -1, pi);
    CHECK(am1.imag() == doctest::Approx(2.0 / pi).epsilon(1e-14));

    CHECK(diffraction_efficiency(g, 1, pi) == doctest::Approx(0.40528473456935109).epsilon(1e-12));
    CHECK(diffraction_efficiency(g, -1, pi) == doctest::Approx(0.40528473456935109).epsilon(1e-12));
    CHECK(diffraction_efficiency(g, 0, pi) == doctest::Approx(0.0).epsilon(1e-25));
}

TEST_CASE("even orders vanish exactly at D = 0.5") {
    const BinaryPhaseGrating g = default_grating();
    for (int m : {2, 4, 6, -2, -8, 100}) {
        CHECK(std::abs(fourier_coefficient(g, m, pi)) < 1e-20);
        CHECK(diffraction_efficiency(g, m, pi) < 1e-40);
    }
}

TEST_CASE("quarter duty cycle") {
    BinaryPhaseGrating g = default_grating();
    g.duty = 0.25;
    // (4/pi^2) sin^2(pi/4) sin^2(pi/2) = 2/pi^2
    CHECK(diffraction_efficiency(g, 1, pi) == doctest::Approx(0.20264236728467554).epsilon(1e-12));
}

TEST_CASE("coefficients agree with the quadrature oracle at random points") {
    std::mt19937 rng(20240817u);
    std::uniform_real_distribution<double> duty_dist(0.1, 0.9);
    std::uniform_real_distribution<double> phi_dist(0.0, 2.0 * pi);
    for (int trial = 0; trial < 5; ++trial) {
        BinaryPhaseGrating g = default_grating();
        g.duty = duty_dist(rng);
        const double phi = phi_dist(rng);
        for (int m : {0, 1, 3, -2}) {
            const cdouble expect = coefficient_by_quadrature(g, phi, m);
            const cdouble got = fourier_coefficient(g, m, phi);
            CHECK(std::abs(got - expect) < 5e-6);  // quadrature converges ~1/n on the jumps
        }
    }
}

TEST_CASE("zero phase step leaves only the zeroth order") {
    const BinaryPhaseGrating g = default_grating();
    CHECK(std::abs(fourier_coefficient(g, 0, 0.0) - cdouble{1.0, 0.0}) < 1e-15);
    for (int m : {1, 2, 3, -1}) CHECK(std::abs(fourier_coefficient(g, m, 0.0)) < 1e-15);
}

TEST_CASE("numeric coefficients match the closed form") {
    const BinaryPhaseGrating g = default_grating();
    const double phi = 2.3;
    const auto numeric = fourier_coefficients_numeric(g, phi, -5, 5, 1 << 16);
    REQUIRE(numeric.size() == 11);
    for (int m = -5; m <= 5; ++m) {
        const cdouble expect = fourier_coefficient(g, m, phi);
        CHECK(std::abs(numeric[static_cast<std::size_t>(m + 5)] - expect) < 1e-4);
    }
}

TEST_CASE("numeric coefficient input validation") {
    const BinaryPhaseGrating g = default_grating();
    CHECK_THROWS_AS((void)fourier_coefficients_numeric(g, pi, 3, -3, 4096), ParameterError);
    // 8 samples cannot resolve order 20
    CHECK_THROWS_AS((void)fourier_coefficients_numeric(g, pi, -20, 20, 8), ParameterError);
}

TEST_CASE("diffraction angles and the evanescent cutoff") {
    const BinaryPhaseGrating g = default_grating();  // d = 3 um
    const auto xi1 = diffraction_angle(g, 1, 775.0);
    REQUIRE(xi1.has_value());
    CHECK(*xi1 == doctest::Approx(-0.26129657582421895).epsilon(1e-14));
    const auto xim1 = diffraction_angle(g, -1, 775.0);
    REQUIRE(xim1.has_value());
    CHECK(*xim1 == doctest::Approx(0.26129657582421895).epsilon(1e-14));
    CHECK(*diffraction_angle(g, 0, 775.0) == doctest::Approx(0.0));
    // |m lambda / d| > 1 for m = 4 at 775 nm
    CHECK_FALSE(diffraction_angle(g, 4, 775.0).has_value());
    CHECK(diffraction_angle(g, 3, 775.0).has_value());
}

TEST_CASE("order spectrum structure") {
    const BinaryPhaseGrating g = default_grating();
    const DiffractionOrderSpectrum sp = order_spectrum(g, 775.0, 0.0, 10);
    REQUIRE(sp.entries.size() == 21);
    CHECK(sp.entries.front().m == -10);
    CHECK(sp.entries.back().m == 10);
    CHECK(sp.effective_period_um == doctest::Approx(3.0));
    for (const OrderEntry& e : sp.entries) {
        const OrderEntry& mirror = sp.entries[static_cast<std::size_t>(10 - e.m)];
        CHECK(e.eta == doctest::Approx(mirror.eta).epsilon(1e-12));
        if (std::abs(e.m) > 3)
            CHECK_FALSE(e.xi_rad.has_value());
        else
            CHECK(e.xi_rad.has_value());
    }
}

TEST_CASE("tilt shrinks the effective period in the spectrum") {
    const BinaryPhaseGrating g = default_grating();
    const DiffractionOrderSpectrum sp = order_spectrum(g, 780.0, 0.1, 3);
    CHECK(sp.effective_period_um == doctest::Approx(3.0 * std::cos(0.1)).epsilon(1e-14));
    CHECK(sp.phase_phi == doctest::Approx(1.002502602900901 * pi).epsilon(1e-13));
    // efficiency changes only through phi
    const double eta1 = sp.entries[static_cast<std::size_t>(3 + 1)].eta;
    CHECK(eta1 ==
          doctest::Approx(diffraction_efficiency(g, 1, sp.phase_phi)).epsilon(1e-14));
}

TEST_CASE("diffracted power sums to the illuminating power") {
    const BinaryPhaseGrating g = default_grating();
    // |f|^2 = 1 pointwise, so total efficiency over all orders is 1; the tail
    // falls off as 1/m^2 and the first 200 orders carry 99.797%
    double sum200 = diffraction_efficiency(g, 0, pi);
    for (int m = 1; m <= 200; ++m)
        sum200 += diffraction_efficiency(g, m, pi) + diffraction_efficiency(g, -m, pi);
    CHECK(sum200 == doctest::Approx(0.997973593213).epsilon(1e-9));
    CHECK(sum200 < 1.0 + 1e-12);

    double sum1000 = sum200;
    for (int m = 201; m <= 1000; ++m)
        sum1000 += diffraction_efficiency(g, m, pi) + diffraction_efficiency(g, -m, pi);
    CHECK(sum1000 > 0.999);
    CHECK(sum1000 < 1.0 + 1e-12);
}

TEST_CASE("parameter validation") {
    BinaryPhaseGrating g = default_grating();
    g.duty = 0.0;
    CHECK_THROWS_AS(g.validate(), DomainError);
    g.duty = 1.0;
    CHECK_THROWS_AS(g.validate(), DomainError);
    g = default_grating();
    g.period_um = -3.0;
    CHECK_THROWS_AS(g.validate(), DomainError);
    g = default_grating();
    g.relief_nm = 0.0;
    CHECK_THROWS_AS(g.validate(), DomainError);
    g = default_grating();
    g.index_n0 = 1.0;  // a real ridge needs contrast against vacuum
    CHECK_THROWS_AS(g.validate(), DomainError);
}

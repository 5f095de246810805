#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "delayrc/drive.hpp"
#include "delayrc/integrator.hpp"
#include "delayrc/models.hpp"

using namespace delayrc;
using Catch::Matchers::WithinAbs;

namespace {

ReservoirParams table_defaults() { return ReservoirParams{}; }

}  // namespace

TEST_CASE("oscillator rhs at hand-checked points") {
    ReservoirParams p = table_defaults();

    SECTION("origin is an equilibrium without delayed input") {
        const Complex r = hopf_rhs(p, {0, 0}, {0, 0}, 0.37);
        CHECK(r == Complex{0, 0});
    }

    SECTION("cubic saturation on the real axis") {
        p.kappa = 0.0;
        const Complex r = hopf_rhs(p, {1, 0}, {0, 0}, 0.0);
        CHECK_THAT(r.real(), WithinAbs(-0.12, 1e-15));
        CHECK_THAT(r.imag(), WithinAbs(0.0, 1e-15));
    }

    SECTION("feedback phase pi flips the delayed term") {
        p.lambda = 0.0;
        p.gamma_re = 0.0;
        p.phi = std::numbers::pi;
        const Complex r = hopf_rhs(p, {0, 0}, {1, 0}, 0.0);
        CHECK_THAT(r.real(), WithinAbs(-0.1, 1e-12));
        CHECK_THAT(r.imag(), WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("saturable laser rhs at hand-checked points") {
    ReservoirParams p = table_defaults();
    p.kappa = 0.0;

    SECTION("off state is an equilibrium") {
        const Complex r = class_a_rhs(p, 0.3, {0, 0}, {0, 0}, 0.0, 2.0);
        CHECK(r == Complex{0, 0});
    }

    SECTION("gain clamps at the stationary intensity") {
        const Complex z{std::sqrt(0.1), 0.0};
        const Complex r = class_a_rhs(p, 0.1, z, {0, 0}, 0.0, 0.0);
        CHECK_THAT(std::abs(r), WithinAbs(0.0, 1e-15));
    }

    SECTION("saturated gain above threshold") {
        const Complex r = class_a_rhs(p, 0.5, {1, 0}, {0, 0}, 0.0, 1.0);
        CHECK_THAT(r.real(), WithinAbs(-1.0 / 6.0, 1e-12));
        CHECK_THAT(r.imag(), WithinAbs(-1.0 / 6.0, 1e-12));
    }
}

TEST_CASE("rhs is equivariant under global phase rotation") {
    ReservoirParams p = table_defaults();
    std::mt19937_64 eng(99);
    std::uniform_real_distribution<double> amp(-2.0, 2.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    for (int i = 0; i < 200; ++i) {
        const Complex z{amp(eng), amp(eng)};
        const Complex zd{amp(eng), amp(eng)};
        const double psi = ang(eng);
        const Complex rot = std::polar(1.0, psi);
        const Complex lhs = hopf_rhs(p, rot * z, rot * zd, 0.004);
        const Complex rhs_rot = rot * hopf_rhs(p, z, zd, 0.004);
        CHECK_THAT(std::abs(lhs - rhs_rot), WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("saturable laser matches the cubic oscillator near threshold") {
    // Match: lambda = pump, omega = alpha*pump (rotating-frame shift),
    // gamma = -(1 + i*alpha), no feedback.
    std::mt19937_64 eng(7);
    std::uniform_real_distribution<double> small(0.0, 0.05);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> alphas(0.0, 2.0);
    for (int i = 0; i < 2000; ++i) {
        const double pump = small(eng);
        const double intensity = small(eng);
        const double alpha = alphas(eng);
        const Complex z = std::polar(std::sqrt(intensity), angle(eng));

        ReservoirParams hp;
        hp.lambda = pump;
        hp.eta = 0.0;
        hp.omega = alpha * pump;
        hp.gamma_re = -1.0;
        hp.gamma_im = -alpha;
        hp.kappa = 0.0;

        ReservoirParams ap = hp;
        const Complex full = class_a_rhs(ap, pump, z, {0, 0}, 0.0, alpha);
        const Complex cubic = hopf_rhs(hp, z, {0, 0}, 0.0);
        CHECK(std::abs(full - cubic) <= 0.15 * std::abs(cubic) + 1e-6);
    }
}

TEST_CASE("limit-cycle amplitude settles at sqrt(lambda/|gamma|)") {
    ReservoirParams p;
    p.lambda = 0.1;
    p.gamma_re = -0.1;
    p.kappa = 0.0;
    p.eta = 0.0;
    p.tau = 1.0;

    DdeIntegrator<HopfModel> integ(HopfModel(p), p.tau, 0.01, {0.5, 0.0});
    integ.advance_constant(15000, 0.0);
    CHECK_THAT(std::abs(integ.state()), WithinAbs(1.0, 1e-6));

    p.lambda = 0.05;
    p.gamma_re = -0.2;
    DdeIntegrator<HopfModel> integ2(HopfModel(p), p.tau, 0.01, {0.1, 0.0});
    integ2.advance_constant(30000, 0.0);
    CHECK_THAT(std::abs(integ2.state()), WithinAbs(0.5, 1e-6));
}

TEST_CASE("model names parse and round-trip") {
    CHECK(parse_model_kind("hopf") == ModelKind::hopf);
    CHECK(parse_model_kind("class_a") == ModelKind::class_a);
    CHECK(model_kind_name(ModelKind::hopf) == "hopf");
    CHECK_THROWS_AS(parse_model_kind("lorenz"), ConfigError);
}

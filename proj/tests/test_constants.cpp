#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sharpgrad/constants.hpp"

using namespace sharpgrad::constants;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("problem point validation")
{
    CHECK_NOTHROW(ProblemPoint{3, 0.0, 0.0}.validate());
    CHECK_NOTHROW(ProblemPoint{7, 0.999, 12.0}.validate());
    CHECK_THROWS_AS((ProblemPoint{2, 0.5, 0.0}.validate()), std::domain_error);
    CHECK_THROWS_AS((ProblemPoint{3, 1.0, 0.0}.validate()), std::domain_error);
    CHECK_THROWS_AS((ProblemPoint{3, -0.1, 0.0}.validate()), std::domain_error);
    CHECK_THROWS_AS((ProblemPoint{3, 0.5, std::nan("")}.validate()), std::domain_error);
    CHECK(ProblemPoint{3, 0.6, 0.0}.alpha_rho() == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(ProblemPoint{5, 0.5, 0.0}.alpha_rho() == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("representation prefactor closed forms")
{
    for (double rho : {0.0, 0.3, 0.8}) {
        CHECK(representation_prefactor(3, rho) ==
              doctest::Approx(1.5 / (1.0 - rho * rho)).epsilon(1e-14));
        CHECK(representation_prefactor(4, rho) ==
              doctest::Approx(8.0 / (pi * (1.0 - rho * rho))).epsilon(1e-14));
    }
}

TEST_CASE("radial closed form for n = 3")
{
    // reference values from 40-digit arithmetic
    CHECK(radial_constant_closed3(0.1) ==
          doctest::Approx(1.51557215704450072693).epsilon(1e-15));
    CHECK(radial_constant_closed3(0.5) ==
          doctest::Approx(2.01370177623549456859).epsilon(1e-15));
    CHECK(radial_constant_closed3(0.9) ==
          doctest::Approx(8.06508975982618518598).epsilon(1e-15));
    CHECK(radial_constant_closed3(0.0) == doctest::Approx(1.5).epsilon(1e-16));
    CHECK(radial_constant_closed3(1e-12) == doctest::Approx(1.5).epsilon(1e-14));
    // both branches around the switch point agree with the local quadratic
    for (double r : {0.99e-4, 1.01e-4}) {
        const double quad = 1.5 + 37.0 / 24.0 * r * r;
        CHECK(std::fabs(radial_constant_closed3(r) - quad) <= 1e-13);
    }
    CHECK_THROWS_AS((void)radial_constant_closed3(1.0), std::domain_error);
    CHECK_THROWS_AS((void)radial_constant_closed3(-0.2), std::domain_error);
}

TEST_CASE("directional constant reference values")
{
    struct Case { int n; double rho, alpha, expect; };
    const Case cases[] = {
        {3, 0.5, 0.0, 2.01370177623549456859},
        {3, 0.5, 0.3, 2.00731173322504412924},
        {3, 0.5, 0.7, 1.98266281563425968655},
        {3, 0.5, pi / 2, 1.93537502252050327406},
        {3, 0.9, pi / 2, 6.98034481491183333421},
        {4, 0.6, pi / 4, 2.54373732578564244283},
        {4, 0.7, 0.0, 3.28739953027803482651},
        {4, 0.7, 0.1, 3.28465021086065991294},
        {5, 0.4, pi / 3, 2.1565986711744820358},
        {5, 0.5, 0.0, 2.4494075287311971818},
        {6, 0.9, 0.0, 9.54884801851088484898},
        {6, 0.9, 0.35, 9.37246449673198455158},
        {6, 0.9, pi / 2, 7.73092640145568993201},
    };
    for (const Case& c : cases) {
        const ConstantEstimate est = directional_constant({c.n, c.rho, c.alpha}, 1e-12);
        CHECK(est.converged);
        CHECK(est.method == Method::representation);
        CHECK(std::fabs(est.value - c.expect) <= 1e-11 * c.expect);
    }
}

TEST_CASE("radial direction dominates for n = 3")
{
    for (double rho : {0.2, 0.6, 0.9}) {
        const double radial = directional_constant({3, rho, 0.0}, 1e-11).value;
        for (double alpha : {0.2, 0.9, pi / 2}) {
            const double v = directional_constant({3, rho, alpha}, 1e-11).value;
            CHECK(v <= radial * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("gradient constant maximizes over the direction angle")
{
    const auto [est, argmax] = gradient_constant(3, 0.5, 1e-10);
    CHECK(est.converged);
    CHECK(std::fabs(est.value - 2.01370177623549456859) <= 1e-6 * est.value);
    CHECK(std::fabs(argmax) <= 1e-4);
    // the maximum dominates every grid direction
    for (double alpha : {0.0, 0.4, 1.1, pi / 2}) {
        CHECK(directional_constant({3, 0.5, alpha}, 1e-10).value <=
              est.value * (1.0 + 1e-9));
    }
}

TEST_CASE("sphere areas")
{
    CHECK(sphere_area(1) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(sphere_area(2) == doctest::Approx(2.0 * pi).epsilon(1e-15));
    CHECK(sphere_area(3) == doctest::Approx(4.0 * pi).epsilon(1e-15));
    CHECK(sphere_area(4) == doctest::Approx(2.0 * pi * pi).epsilon(1e-14));
}

TEST_CASE("center and half-space constants")
{
    CHECK(center_constant(3) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(center_constant(4) == doctest::Approx(1.6976527263135502482).epsilon(1e-14));
    CHECK(center_constant(5) == doctest::Approx(1.875).epsilon(1e-14));
    CHECK(center_constant(6) == doctest::Approx(2.0371832715762602978).epsilon(1e-14));
    CHECK(halfspace_constant(3) == doctest::Approx(0.769800358919501019346).epsilon(1e-14));
    CHECK(halfspace_constant(4) == doctest::Approx(0.826993343132688074267).epsilon(1e-14));
    // 16/(3 pi) and 4/(3 sqrt 3) in closed form
    CHECK(center_constant(4) == doctest::Approx(16.0 / (3.0 * pi)).epsilon(1e-15));
    CHECK(halfspace_constant(3) == doctest::Approx(4.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-15));
}

TEST_CASE("directional constant is continuous down to the center")
{
    for (int n : {3, 4, 5}) {
        const double c0 = center_constant(n);
        for (double alpha : {0.0, 1.0}) {
            const double v = directional_constant({n, 1e-7, alpha}, 1e-11).value;
            CHECK(std::fabs(v - c0) <= 1e-6 * c0);
        }
    }
}

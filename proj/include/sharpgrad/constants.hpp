#pragma once

#include <utility>

// Sharp constants C(x, l) and C(x) for the pointwise gradient bound
// |grad u(x)| <= C(x) sup |u| over bounded harmonic functions on the unit
// ball B^n: directional constants for a radial base point x = rho e_1 and a
// direction at angle alpha to the radius, their maximum over alpha, and the
// classical closed-form anchors.

namespace sharpgrad::constants {

// Base point rho e_1 in B^n together with the direction angle alpha
// (alpha = 0 is the radial direction).
struct ProblemPoint {
    int n = 3;
    double rho = 0.0;
    double alpha = 0.0;

    // Offset (n-2)/n * rho appearing in the kernel factor |a - <zeta, l>|.
    double alpha_rho() const { return (n - 2.0) / n * rho; }

    // Throws std::domain_error unless n >= 3, 0 <= rho < 1 and alpha is
    // finite.
    void validate() const;
};

enum class Method {
    representation,  // 1-D hypergeometric integral
    oracle_direct,   // sphere integral of |<grad P, l>|
    oracle_moebius,  // sphere integral of the Moebius-transformed kernel
    closed3,         // closed form, n = 3 radial only
};

struct ConstantEstimate {
    double value = 0.0;
    Method method = Method::representation;
    double error_bound = 0.0;
    bool converged = false;
};

// Scale factor n/(1-rho^2) * Gamma(n/2) / (Gamma(1/2) Gamma((n-1)/2))
// multiplying the 1-D representation integral.
double representation_prefactor(int n, double rho);

// C(rho e_1, l_alpha) by adaptive quadrature of the 1-D representation
// integral; tol is the quadrature budget for the integral factor.
ConstantEstimate directional_constant(const ProblemPoint& pt, double tol = 1e-10);

// C(rho e_1) = max over alpha in [0, pi/2] of the directional constant:
// 65-point grid scan followed by golden-section refinement of the winning
// bracket (ties resolved toward smaller alpha).  Returns the maximum and the
// maximizing alpha.
std::pair<ConstantEstimate, double> gradient_constant(int n, double rho,
                                                      double tol = 1e-10);

// Closed form of the radial constant for n = 3:
//   ((1 + rho^2/3)^{3/2} / (1 - rho^2) - 1) / rho^2,
// with a Taylor branch below rho = 1e-4 where the closed form cancels.
double radial_constant_closed3(double rho);

// Surface area of S^{m-1}: 2 pi^{m/2} / Gamma(m/2).
double sphere_area(int m);

// C(0) = 2 n omega_{n-1} / ((n-1) omega_n) where omega_m is the area of
// S^{m-1}; equals n * mean of |xi_1| over S^{n-1}.
double center_constant(int n);

// Sharp constant of the half-space gradient estimate,
//   (4/sqrt(pi)) ((n-1)^{(n-1)/2} / n^{n/2}) Gamma(n/2)/Gamma((n-1)/2).
double halfspace_constant(int n);

} // namespace sharpgrad::constants

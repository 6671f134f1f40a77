#pragma once

#include <span>

#include "sharpgrad/constants.hpp"

// Slow reference evaluations that bypass the 1-D representation integral:
// direct sphere integrals of the Poisson-kernel gradient, the
// Moebius-transformed variant, verification of the sphere-to-ball projection
// identity, the inner-integral identity behind the hypergeometric factor,
// and a finite-difference probe with the extremal boundary function.

namespace sharpgrad::oracle {

// Poisson kernel P(x, zeta) = (1 - |x|^2) / |x - zeta|^n for |x| < 1,
// |zeta| = 1.  Spans must have length n.
double poisson_kernel(int n, std::span<const double> x, std::span<const double> zeta);

// grad_x P into `out` (length n):
//   -2 x |x-zeta|^{-n} - n (1-|x|^2) (x-zeta) |x-zeta|^{-n-2}.
void poisson_kernel_gradient(int n, std::span<const double> x,
                             std::span<const double> zeta, std::span<double> out);

// C(rho e_1, l_alpha) as the sphere integral of |<grad P, l>|.
constants::ConstantEstimate constant_oracle_direct(const constants::ProblemPoint& pt,
                                                   int refinement = 1);

// Same constant through the Moebius-transformed kernel:
//   n/(1-rho^2) * integral of |<eta - alpha_rho e_1, l>| |eta - rho e_1|^{2-n}.
constants::ConstantEstimate constant_oracle_moebius(const constants::ProblemPoint& pt,
                                                    int refinement = 1);

// Test integrands for the projection identity, as functions of the first k
// coordinates.
enum class TestFn {
    one,          // constant 1
    x1_squared,   // x_1^2
    abs_x1,       // |x_1|
    radial_bump,  // exp(-|x|^2)
};

// Both sides of the projection identity
//   mean over S^{n-1} of f(xi_1..xi_k)
//     = Gamma(n/2)/(Gamma(k/2+1) Gamma((n-k)/2)) *
//       mean over B^k of (1-|x|^2)^{(n-k-2)/2} f(x)
// (sphere side by cubature, ball side by adaptive quadrature; k in {1, 2}).
// Returns {lhs, rhs}.
std::pair<double, double> verify_projection_lemma(TestFn fn, int n, int k);

// Both sides of the inner-integral identity at a single (n, rho, alpha, x):
// the y-integral across the slice (after y = sqrt(1-x^2) sin t) against
// B(1/2, n/2-1) (1-x^2)^{(n-3)/2} p^{1-n/2} 2F1(...).  Returns {lhs, rhs}.
std::pair<double, double> verify_inner_integral(int n, double rho, double alpha, double x);

// Optional diagnostics for extremal_derivative.
struct ExtremalInfo {
    double u_plus = 0.0;        // u*(rho e_1 + h l)
    double u_minus = 0.0;       // u*(rho e_1 - h l)
    double quad_error = 0.0;    // combined cubature error estimate
    bool step_noise_warning = false;  // quad_error > h^2
};

// Central difference (u*(x+hl) - u*(x-hl)) / (2h) where u* is the harmonic
// extension of the extremal boundary sign function for (pt, l).  Approaches
// the directional constant from below as h -> 0.  Cubature runs at 4x the
// given refinement (the integrand is a Poisson kernel against a sign
// function).  Requires rho + h < 1.
double extremal_derivative(const constants::ProblemPoint& pt, double h,
                           int refinement = 1, ExtremalInfo* info = nullptr);

} // namespace sharpgrad::oracle

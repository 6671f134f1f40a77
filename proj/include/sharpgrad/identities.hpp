#pragma once

// Quadrature checks of the integral identities behind the directional
// constant: the weighted-2F1 reductions (suites lemma3..lemma5) and the
// S / S1 / S2 split used by the Cauchy-Schwarz majorant.

namespace sharpgrad::identities {

struct IdentityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_gap = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

// int_0^pi sin^{n-2} p^{1-n/2} 2F1 dtheta equals the same integral with the
// 2F1 dropped and cos(alpha) removed from the weight.
IdentityReport lemma3_sides(int n, double rho, double alpha, double tol = 1e-9);

// Same comparison for the integrand weighted by cos^2(theta); the right side
// splits into a sin^2(alpha) and a cos^2(alpha) part.
IdentityReport lemma4_sides(int n, double rho, double alpha, double tol = 1e-9);

// Signed first-moment integral (no absolute value); vanishes identically.
// rhs of the report is 0.
IdentityReport lemma5_value(int n, double rho, double alpha, double tol = 1e-9);

struct SIntegrals {
    double S = 0.0;   // |a - cos(theta)| against the plain weight
    double S1 = 0.0;  // 2F1 excess against the plain weight
    double S2 = 0.0;  // 2F1 excess against the squared first moment
    double error_estimate = 0.0;
};

// The three pieces of the Cauchy-Schwarz split of the representation
// integral, by adaptive quadrature.  The 2F1 excess is evaluated through the
// cancellation-free series for tiny arguments.  rho is limited to [0, 0.99]
// (the excess integrands lose meaningful digits beyond that).
SIntegrals s_integrals(int n, double rho, double alpha, double tol = 1e-10);

// Scaled Cauchy-Schwarz majorant
//   prefactor(n, rho) * (S + sqrt(S1 S2))
// which dominates the directional constant pointwise.
double cs_majorant_scaled(int n, double rho, double alpha, double tol = 1e-10);

} // namespace sharpgrad::identities

#pragma once

#include <span>
#include <vector>

// n = 3 closed forms: the three pieces S, S1, S2 of the Cauchy-Schwarz
// majorant, their AM-GM combination M = S + S1/3 + (3/4) S2 viewed as a
// function T of t = cos^2(alpha), the power-series coefficients of T, and
// the monotonicity facts (coefficient signs, one-sided derivative at t = 1)
// that make T(1) the global maximum.

namespace sharpgrad::majorant3 {

// Closed forms of the S integrals, valid for rho in (0, 1) and
// cos(alpha) != 0.  All three lose accuracy like eps/cos^4(alpha) as alpha
// approaches pi/2; below cos^2(alpha) = series_switch callers should prefer
// the quadrature route (identities::s_integrals).  rho = 0 returns the
// limit values (1, 0, 0).
double closed_S(double rho, double alpha);
double closed_S1(double rho, double alpha);
double closed_S2(double rho, double alpha);

// cos^2(alpha) below which majorant() evaluates T by series instead of the
// closed form.
inline constexpr double series_switch = 0.05;

struct MajorantBreakdown {
    double S = 0.0;
    double S1 = 0.0;
    double S2 = 0.0;
    double M = 0.0;   // S + S1/3 + (3/4) S2 = T(t)
    double t = 0.0;   // cos^2(alpha)
};

// The majorant at (rho, alpha).  M comes from the combined closed form when
// cos^2(alpha) >= series_switch and from the t-power series otherwise; the
// S pieces fall back to quadrature in the series branch.
MajorantBreakdown majorant(double rho, double alpha);

// Coefficient a_k(rho) of t^k in T(t), k >= 1.  k = 1 has its own closed
// form; k >= 2 uses the double-factorial form evaluated in log space (the
// factorial ratios overflow near k = 90 otherwise).
double coefficient_a(int k, double rho);

// Constant term T(0) = 7/6 - rho^2/10 - 1/(6 sqrt(1+rho^2)).
double series_constant(double rho);

// T(t) = T(0) + sum_k a_k t^k for t in [0, 1].  Stops when three
// consecutive terms fall below tol * |partial sum|; throws
// specfun::accuracy_error if kmax terms do not reach that.
double majorant_series_T(double t, double rho, double tol = 1e-15, int kmax = 500);

// Per-k record of the coefficient-sign argument: the polynomials P, Q, R
// from the quartic factorization of a_k's bracket, the discriminant
// D = k^2 Q^2 + 4 (k^2-1) P R (negative), the minimum over y in [1, 2] of
// the quadratic (k-1) P y^2 - k Q y - (k+1) R (positive), and the envelope
// pair l_k > d_k.
struct Lemma6Report {
    int k = 0;
    double P = 0.0;
    double Q = 0.0;
    double R = 0.0;
    double discriminant = 0.0;
    double discriminant_dual_gap = 0.0;  // |expanded octic - direct| / |direct|
    double phi_quad_min = 0.0;
    double l_k = 0.0;
    double d_k = 0.0;
    double ratio_gap = 0.0;  // |l_{k+1}/l_k - closed ratio| relative
    bool a_k_negative = false;
    bool passed = false;
};

// Runs the per-k checks for k = 2..kmax at the given rho.
std::vector<Lemma6Report> lemma6_verify(double rho, int kmax = 200);

// One-sided derivative T'(1-) of the majorant in t.  Evaluated in the
// conjugate form
//   (121 rho^6 + (10040/27) rho^4 + (640/3) rho^2) /
//   (60 (A + B sqrt(1 + rho^2/3))),
// A = 11 rho^4 + 60 rho^2 + 40, B = 40 (1 + (4/3) rho^2), which is free of
// cancellation for all rho in [0, 1) and manifestly nonnegative.
double t_prime_at_one(double rho);

struct ChainSample {
    double alpha = 0.0;
    double lhs = 0.0;       // (2/3) (1-rho^2) C(rho, alpha)
    double cs = 0.0;        // S + sqrt(S1 S2)
    double t_value = 0.0;   // T(cos^2 alpha)
    double t_radial = 0.0;  // T(1)
    double min_slack = 0.0; // smallest of the three inequality slacks
    bool passed = false;
};

struct ChainReport {
    double rho = 0.0;
    std::vector<ChainSample> samples;
    double radial_identity_gap = 0.0;  // |prefactor * T(1) - closed radial|
    double s1_at_zero = 0.0;
    double s2_at_zero = 0.0;
    double max_second_derivative = 0.0;  // max over t grid of sum k(k-1) a_k t^{k-2}
    double min_slack = 0.0;
    bool passed = false;
};

// Verifies the inequality chain
//   (2/3)(1-rho^2) C(rho, alpha) <= S + sqrt(S1 S2) <= T(cos^2 alpha) <= T(1)
// over the given alpha grid, together with the equality anchors at alpha = 0
// and concavity of T sampled on t in [0, 1].
ChainReport conjecture_chain(double rho, std::span<const double> alpha_grid,
                             double slack_tol = 1e-9);

} // namespace sharpgrad::majorant3

#pragma once

#include <functional>
#include <span>
#include <vector>

// Gauss-Legendre rules, an adaptive 1-D integrator, and a product cubature
// over the unit sphere S^{n-1}.

namespace sharpgrad::quadrature {

struct QuadratureRule {
    int order = 0;
    std::vector<double> nodes;    // ascending in (-1, 1)
    std::vector<double> weights;  // positive, sum to 2
};

// Gauss-Legendre rule on [-1, 1].  Nodes by Newton iteration seeded with the
// Chebyshev-angle estimates; order limited to [1, 512].
QuadratureRule gauss_legendre_rule(int order);

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

// Adaptive bisection on [a, b] with a 32-point Gauss estimate per panel and
// |GL32 - GL16| as the panel error.  Interior breakpoints (integrand kinks)
// become initial panel boundaries.  A panel is accepted when its error is
// within its length-proportional share of tol; recursion stops at max_depth
// and the result is flagged non-converged if unaccepted panels remain.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double tol,
                                    std::span<const double> breakpoints = {},
                                    int max_depth = 30);

// Kink alignment for sphere_integral.  `first` lists fixed interior angles
// of the first polar angle where the integrand is not smooth (kinks of |.|
// factors).  `second`, when set, is queried once per first-angle node with
// (cos t1, sin t1) and returns kink positions in the second angle: the
// second polar angle in (0, pi) for n >= 4, the azimuthal angle in [0, 2 pi)
// for n = 3.  Panels never straddle the returned angles, which restores
// spectral accuracy for |smooth| integrands whose kink curve crosses the
// slices transversally.  Ignored for n = 2.
struct SphereSplits {
    std::vector<double> first;
    std::function<std::vector<double>(double cos_t1, double sin_t1)> second;
};

// Normalized integral over S^{n-1} (surface measure scaled to total mass 1)
// of g evaluated on unit vectors, n >= 2.  Product rule: Gauss-Legendre in
// each polar angle with the sin-power weight folded in, uniform points in the
// azimuthal angle.  `refinement` scales the node counts of the leading
// levels; the error estimate comes from re-evaluating at twice the
// refinement, and `value` is the finer result.
QuadratureResult sphere_integral(const std::function<double(std::span<const double>)>& g,
                                 int n, int refinement = 1,
                                 const SphereSplits& splits = {});

// Node counts per level used by sphere_integral (polar levels first, then
// the azimuthal level).  Exposed for tests and cost accounting.
std::vector<int> sphere_level_counts(int n, int refinement);

} // namespace sharpgrad::quadrature

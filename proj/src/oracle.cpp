#include "sharpgrad/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sharpgrad/quadrature.hpp"
#include "sharpgrad/specfun.hpp"
#include "halfpow.hpp"

namespace sharpgrad::oracle {

using quadrature::integrate_adaptive;
using quadrature::sphere_integral;

double poisson_kernel(int n, std::span<const double> x, std::span<const double> zeta)
{
    if (n < 2 || x.size() < static_cast<size_t>(n) || zeta.size() < static_cast<size_t>(n))
        throw std::domain_error("poisson_kernel: need n >= 2 vectors of length n");
    double x2 = 0.0, d2 = 0.0;
    for (int i = 0; i < n; ++i) {
        x2 += x[i] * x[i];
        const double d = x[i] - zeta[i];
        d2 += d * d;
    }
    if (x2 >= 1.0)
        throw std::domain_error("poisson_kernel: |x| must be < 1");
    return (1.0 - x2) * half_pow(d2, -n);
}

void poisson_kernel_gradient(int n, std::span<const double> x,
                             std::span<const double> zeta, std::span<double> out)
{
    if (n < 2 || x.size() < static_cast<size_t>(n) || zeta.size() < static_cast<size_t>(n) ||
        out.size() < static_cast<size_t>(n))
        throw std::domain_error("poisson_kernel_gradient: need n >= 2 vectors of length n");
    double x2 = 0.0, d2 = 0.0;
    for (int i = 0; i < n; ++i) {
        x2 += x[i] * x[i];
        const double d = x[i] - zeta[i];
        d2 += d * d;
    }
    if (x2 >= 1.0)
        throw std::domain_error("poisson_kernel_gradient: |x| must be < 1");
    const double fk = half_pow(d2, -n);
    const double fg = n * (1.0 - x2) * half_pow(d2, -(n + 2));
    for (int i = 0; i < n; ++i)
        out[i] = -2.0 * x[i] * fk - fg * (x[i] - zeta[i]);
}

namespace {

// <grad_x P(rho e_1, zeta), l_alpha> with l_alpha = cos(alpha) e_1 + sin(alpha) e_2,
// reduced to the first two coordinates of zeta.
inline double kernel_gradient_component(int n, double rho, double ca, double sa,
                                        double z1, double z2)
{
    const double d2 = 1.0 + rho * rho - 2.0 * rho * z1;
    const double xl = rho * ca;
    return -2.0 * xl * half_pow(d2, -n)
           - n * (1.0 - rho * rho) * (xl - (z1 * ca + z2 * sa)) * half_pow(d2, -(n + 2));
}

// The |.| factors of the oracle integrands are not smooth across a curve on
// the sphere.  The argument of |.| is linear in zeta_2 at fixed zeta_1, so
// within a slice zeta_1 = cos(t1) the kink sits at an explicit value of the
// second angle.  At alpha = 0 the zeta_2 coefficient vanishes and the curve
// is a polar circle, handled by a fixed t1 split; otherwise a per-slice
// split in the second angle aligns the panels with the curve.  Either way
// the cubature only ever integrates smooth pieces and stays spectrally
// accurate.
//
// Given cos(t2*) = c2 in (-1, 1), the second-angle splits are {acos(c2)}
// for n >= 4 (second polar angle) and {acos(c2), 2 pi - acos(c2)} for n = 3
// (azimuthal angle).
std::vector<double> second_angle_splits(int n, double c2)
{
    if (!(std::fabs(c2) < 1.0))
        return {};
    const double t2 = std::acos(c2);
    if (n == 3)
        return {t2, 2.0 * std::numbers::pi - t2};
    return {t2};
}

// The kink curve cos(t2*) = k (c* - cos t1) / (l sin t1) enters or leaves
// the slice range where |cos(t2*)| = 1.  Crossing such a fold leaves a
// one-sided (t1 - t_fold)^(3/2) term in the slice integral; panels that
// merely stop at the fold still converge only algebraically, so each fold
// gets a two-sided geometric ladder of boundaries that shrinks the panels
// toward the branch point.  Squaring the fold condition gives
// (k^2 + l^2) c^2 - 2 k^2 c* c + k^2 c*^2 - l^2 = 0 for c = cos t1.
void append_fold_splits(std::vector<double>& first, double k, double l, double cstar)
{
    const double k2 = k * k, l2 = l * l;
    const double disc = k2 * (1.0 - cstar * cstar) + l2;
    if (!(disc > 0.0))
        return;
    const double rootterm = std::fabs(l) * std::sqrt(disc);
    for (double c : {(k2 * cstar + rootterm) / (k2 + l2), (k2 * cstar - rootterm) / (k2 + l2)}) {
        if (!(c > -1.0 && c < 1.0))
            continue;
        const double tf = std::acos(c);
        first.push_back(tf);
        for (double h = 0.1; h > 1e-5; h *= 0.25) {
            first.push_back(tf - h);
            first.push_back(tf + h);
        }
    }
}

// <grad P, l> = -d^(-n-2) [ca (2 rho d2 + n (1-rho^2)(rho - z1))
//                          - n (1-rho^2) sa z2],  d2 = 1 + rho^2 - 2 rho z1,
// so its sign flips at z2 = ca (2 rho d2 + n (1-rho^2)(rho - z1)) / (n (1-rho^2) sa).
quadrature::SphereSplits direct_splits(int n, double rho, double ca, double sa)
{
    quadrature::SphereSplits sp;
    const double A = rho * (2.0 * (1.0 + rho * rho) + n * (1.0 - rho * rho));
    const double B = 4.0 * rho * rho + n * (1.0 - rho * rho);
    if (std::fabs(sa) < 1e-14) {
        const double ct = A / B;
        if (ct > -1.0 && ct < 1.0)
            sp.first.push_back(std::acos(ct));
        return sp;
    }
    const double scale = n * (1.0 - rho * rho) * sa;
    append_fold_splits(sp.first, ca * B, scale, A / B);
    sp.second = [n, rho, ca, scale](double ct, double st) {
        if (!(st > 0.0))
            return std::vector<double>{};
        const double d2 = 1.0 + rho * rho - 2.0 * rho * ct;
        const double bracket = 2.0 * rho * d2 + n * (1.0 - rho * rho) * (rho - ct);
        return second_angle_splits(n, ca * bracket / (scale * st));
    };
    return sp;
}

// |(z1 - ar) ca + z2 sa| flips sign at z2 = (ar - z1) ca / sa.
quadrature::SphereSplits moebius_splits(int n, double ar, double ca, double sa)
{
    quadrature::SphereSplits sp;
    if (std::fabs(sa) < 1e-14) {
        if (ar > -1.0 && ar < 1.0)
            sp.first.push_back(std::acos(ar));
        return sp;
    }
    append_fold_splits(sp.first, ca, sa, ar);
    sp.second = [n, ar, ca, sa](double ct, double st) {
        if (!(st > 0.0))
            return std::vector<double>{};
        return second_angle_splits(n, ca * (ar - ct) / (sa * st));
    };
    return sp;
}

} // namespace

constants::ConstantEstimate constant_oracle_direct(const constants::ProblemPoint& pt,
                                                   int refinement)
{
    pt.validate();
    const double ca = std::cos(pt.alpha), sa = std::sin(pt.alpha);
    const double rho = pt.rho;
    const int n = pt.n;
    auto g = [&](std::span<const double> zeta) {
        return std::fabs(kernel_gradient_component(n, rho, ca, sa, zeta[0], zeta[1]));
    };
    const auto q = sphere_integral(g, n, refinement, direct_splits(n, rho, ca, sa));
    constants::ConstantEstimate est;
    est.value = q.value;
    est.method = constants::Method::oracle_direct;
    est.error_bound = q.error_estimate;
    est.converged = q.converged;
    return est;
}

constants::ConstantEstimate constant_oracle_moebius(const constants::ProblemPoint& pt,
                                                    int refinement)
{
    pt.validate();
    const double ca = std::cos(pt.alpha), sa = std::sin(pt.alpha);
    const double rho = pt.rho;
    const double ar = pt.alpha_rho();
    const int n = pt.n;
    auto g = [&](std::span<const double> eta) {
        const double d2 = 1.0 - 2.0 * rho * eta[0] + rho * rho;
        return std::fabs((eta[0] - ar) * ca + eta[1] * sa) * half_pow(d2, 2 - n);
    };
    const auto q = sphere_integral(g, n, refinement, moebius_splits(n, ar, ca, sa));
    const double scale = n / (1.0 - rho * rho);
    constants::ConstantEstimate est;
    est.value = scale * q.value;
    est.method = constants::Method::oracle_moebius;
    est.error_bound = scale * q.error_estimate;
    est.converged = q.converged;
    return est;
}

namespace {

inline double eval_fn(TestFn fn, const double* x, int k)
{
    switch (fn) {
    case TestFn::one:
        return 1.0;
    case TestFn::x1_squared:
        return x[0] * x[0];
    case TestFn::abs_x1:
        return std::fabs(x[0]);
    case TestFn::radial_bump: {
        double r2 = 0.0;
        for (int i = 0; i < k; ++i)
            r2 += x[i] * x[i];
        return std::exp(-r2);
    }
    }
    return 0.0;
}

} // namespace

std::pair<double, double> verify_projection_lemma(TestFn fn, int n, int k)
{
    if (n < 3 || k < 1 || k > 2 || k > n - 1)
        throw std::domain_error("verify_projection_lemma: need n >= 3 and k in {1, 2}, k < n");

    auto g = [&](std::span<const double> xi) { return eval_fn(fn, xi.data(), k); };
    // |xi_1| kinks on the equator circle, a polar panel boundary
    quadrature::SphereSplits splits;
    if (fn == TestFn::abs_x1)
        splits.first.push_back(0.5 * std::numbers::pi);
    const double lhs = sphere_integral(g, n, 2, splits).value;

    const double cfac = std::exp(specfun::log_gamma(0.5 * n)
                                 - specfun::log_gamma(0.5 * k + 1.0)
                                 - specfun::log_gamma(0.5 * (n - k)));
    const double pi = std::numbers::pi;
    double ball;
    if (k == 1) {
        // mean over [-1, 1] with x = cos(theta); |x| kinks at theta = pi/2
        auto f = [&](double th) {
            const double x = std::cos(th);
            const double s = std::sin(th);
            return eval_fn(fn, &x, 1) * std::pow(s, n - 2);
        };
        const double bp[] = {0.5 * pi};
        ball = 0.5 * integrate_adaptive(f, 0.0, pi, 1e-12, bp).value;
    } else {
        // mean over the unit disc, radius r = sin(psi) so the (1-r^2)^{(n-4)/2}
        // endpoint factor folds into cos^{n-3}(psi)
        auto outer = [&](double psi) {
            const double sp = std::sin(psi), cp = std::cos(psi);
            auto inner = [&](double phi) {
                const double x[2] = {sp * std::cos(phi), sp * std::sin(phi)};
                return eval_fn(fn, x, 2);
            };
            const double bp[] = {0.5 * pi, 1.5 * pi};
            const double ring = integrate_adaptive(inner, 0.0, 2.0 * pi, 1e-13, bp).value;
            return std::pow(cp, n - 3) * sp * ring;
        };
        ball = integrate_adaptive(outer, 0.0, 0.5 * pi, 1e-11).value / pi;
    }
    return {lhs, cfac * ball};
}

std::pair<double, double> verify_inner_integral(int n, double rho, double alpha, double x)
{
    if (n < 3)
        throw std::domain_error("verify_inner_integral: need n >= 3");
    if (!(rho >= 0.0 && rho < 1.0))
        throw std::domain_error("verify_inner_integral: need 0 <= rho < 1");
    if (!(x > -1.0 && x < 1.0))
        throw std::domain_error("verify_inner_integral: need -1 < x < 1");

    const double ca = std::cos(alpha), sa = std::sin(alpha);
    const double s2 = 1.0 - x * x;
    const double s = std::sqrt(s2);
    const double pi = std::numbers::pi;

    // slice integral over y = s sin(t), second angle folded symmetrically
    auto f = [&](double t) {
        const double q = 1.0 + rho * rho - 2.0 * rho * (x * ca + s * std::sin(t) * sa);
        return std::pow(std::cos(t), n - 3) * half_pow(q, 2 - n);
    };
    const double slice = integrate_adaptive(f, -0.5 * pi, 0.5 * pi, 1e-12).value;
    const double lhs = std::pow(s2, 0.5 * (n - 3)) * slice;

    const double p = 1.0 + rho * rho - 2.0 * rho * x * ca;
    const double z = 4.0 * rho * rho * sa * sa * s2 / (p * p);
    const double hyp = specfun::hyp2f1_logcase(specfun::Hyp2F1Args::for_dimension(n, z));
    const double rhs = specfun::beta(0.5, 0.5 * n - 1.0) * std::pow(s2, 0.5 * (n - 3))
                       * half_pow(p, 2 - n) * hyp;
    return {lhs, rhs};
}

double extremal_derivative(const constants::ProblemPoint& pt, double h,
                           int refinement, ExtremalInfo* info)
{
    pt.validate();
    if (!(h > 0.0) || pt.rho + h >= 1.0)
        throw std::domain_error("extremal_derivative: need 0 < h < 1 - rho");
    if (refinement < 1)
        throw std::domain_error("extremal_derivative: refinement must be >= 1");

    const double ca = std::cos(pt.alpha), sa = std::sin(pt.alpha);
    const double rho = pt.rho;
    const int n = pt.n;
    const quadrature::SphereSplits splits = direct_splits(n, rho, ca, sa);

    // u*(x) for the boundary function f* = sign <grad P(rho e_1, .), l>;
    // x = rho e_1 +/- h l has only two nonzero coordinates
    auto probe = [&](double sgn) {
        const double x1 = rho + sgn * h * ca;
        const double x2 = sgn * h * sa;
        const double x2norm = x1 * x1 + x2 * x2;
        auto g = [&](std::span<const double> zeta) {
            const double gl = kernel_gradient_component(n, rho, ca, sa, zeta[0], zeta[1]);
            const double fstar = gl > 0.0 ? 1.0 : (gl < 0.0 ? -1.0 : 0.0);
            const double d2 = x2norm + 1.0 - 2.0 * (x1 * zeta[0] + x2 * zeta[1]);
            return (1.0 - x2norm) * half_pow(d2, -n) * fstar;
        };
        return sphere_integral(g, n, 4 * refinement, splits);
    };

    const auto up = probe(1.0);
    const auto um = probe(-1.0);
    const double deriv = (up.value - um.value) / (2.0 * h);
    if (info) {
        info->u_plus = up.value;
        info->u_minus = um.value;
        info->quad_error = up.error_estimate + um.error_estimate;
        info->step_noise_warning = info->quad_error > h * h;
    }
    return deriv;
}

} // namespace sharpgrad::oracle

#include "sharpgrad/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sharpgrad/quadrature.hpp"
#include "sharpgrad/specfun.hpp"

namespace sharpgrad::constants {

void ProblemPoint::validate() const
{
    if (n < 3)
        throw std::domain_error("ProblemPoint: require n >= 3");
    if (!(rho >= 0.0) || rho >= 1.0)
        throw std::domain_error("ProblemPoint: require 0 <= rho < 1");
    if (!std::isfinite(alpha))
        throw std::domain_error("ProblemPoint: require finite alpha");
}

double representation_prefactor(int n, double rho)
{
    if (n < 3)
        throw std::domain_error("representation_prefactor: require n >= 3");
    if (!(rho >= 0.0) || rho >= 1.0)
        throw std::domain_error("representation_prefactor: require 0 <= rho < 1");
    using specfun::log_gamma;
    const double ratio =
        std::exp(log_gamma(n / 2.0) - log_gamma(0.5) - log_gamma((n - 1) / 2.0));
    return n / (1.0 - rho * rho) * ratio;
}

ConstantEstimate directional_constant(const ProblemPoint& pt, double tol)
{
    pt.validate();
    const int n = pt.n;
    const double rho = pt.rho;
    const double ca = std::cos(pt.alpha), sa = std::sin(pt.alpha);
    const double a = pt.alpha_rho() * ca;
    const double zscale = 4.0 * rho * rho * sa * sa;
    const double half_exp = 0.5 * (2.0 - n);

    auto integrand = [&](double theta) {
        const double x = std::cos(theta), s = std::sin(theta);
        const double p = 1.0 + rho * rho - 2.0 * rho * x * ca;
        const double z = zscale * s * s / (p * p);
        const double f =
            specfun::hyp2f1_logcase(specfun::Hyp2F1Args::for_dimension(n, z));
        return std::abs(a - x) * std::pow(s, n - 2) * std::pow(p, half_exp) * f;
    };

    // the |a - cos(theta)| kink
    const double kink = std::acos(std::clamp(a, -1.0, 1.0));
    const double bp[1] = {kink};
    const quadrature::QuadratureResult q =
        quadrature::integrate_adaptive(integrand, 0.0, M_PI, tol, bp);

    const double pref = representation_prefactor(n, rho);
    ConstantEstimate out;
    out.value = pref * q.value;
    out.method = Method::representation;
    out.error_bound = pref * q.error_estimate;
    out.converged = q.converged;
    return out;
}

namespace {

// Golden-section maximization to bracket width `width`; ties move the
// bracket left so flat profiles resolve to the smaller abscissa.
double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double width)
{
    constexpr double inv_phi = 0.6180339887498948882;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > width) {
        if (f2 > f1) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::pair<ConstantEstimate, double> gradient_constant(int n, double rho, double tol)
{
    ProblemPoint pt{n, rho, 0.0};
    pt.validate();

    auto value_at = [&](double alpha) {
        return directional_constant({n, rho, alpha}, tol).value;
    };

    // coarse scan of [0, pi/2]
    constexpr int grid = 64;
    int best = 0;
    double best_value = value_at(0.0);
    for (int i = 1; i <= grid; ++i) {
        const double v = value_at(M_PI_2 * i / grid);
        if (v > best_value) {  // strict: ties keep the smaller alpha
            best = i;
            best_value = v;
        }
    }

    const double lo = M_PI_2 * std::max(0, best - 1) / grid;
    const double hi = M_PI_2 * std::min(grid, best + 1) / grid;
    double argmax = golden_section_max(value_at, lo, hi, 1e-6);
    ConstantEstimate refined = directional_constant({n, rho, argmax}, tol);
    if (refined.value < best_value) {
        argmax = M_PI_2 * best / grid;
        refined = directional_constant({n, rho, argmax}, tol);
    }
    return {refined, argmax};
}

double radial_constant_closed3(double rho)
{
    if (!(rho >= 0.0) || rho >= 1.0)
        throw std::domain_error("radial_constant_closed3: require 0 <= rho < 1");
    const double r2 = rho * rho;
    if (rho < 1e-4) {
        // below the last digit the rearranged closed form can resolve
        return 1.5 + r2 * (37.0 / 24.0 + r2 * (665.0 / 432.0 + r2 * 5321.0 / 3456.0));
    }
    // ((1+r2/3)^{3/2} - (1-r2)) / ((1-r2) r2) with the power split through
    // expm1/log1p so the small-rho cancellation never happens: both summands
    // of the numerator are positive
    const double bracket = std::expm1(1.5 * std::log1p(r2 / 3.0)) + r2;
    return bracket / ((1.0 - r2) * r2);
}

double sphere_area(int m)
{
    if (m < 1)
        throw std::domain_error("sphere_area: require m >= 1");
    return 2.0 * std::exp(0.5 * m * std::log(M_PI) - specfun::log_gamma(0.5 * m));
}

double center_constant(int n)
{
    if (n < 2)
        throw std::domain_error("center_constant: require n >= 2");
    return 2.0 * n * sphere_area(n - 1) / ((n - 1) * sphere_area(n));
}

double halfspace_constant(int n)
{
    if (n < 2)
        throw std::domain_error("halfspace_constant: require n >= 2");
    using specfun::log_gamma;
    const double log_power = 0.5 * (n - 1) * std::log(n - 1.0) - 0.5 * n * std::log(n);
    return 4.0 / std::sqrt(M_PI) *
           std::exp(log_power + log_gamma(0.5 * n) - log_gamma(0.5 * (n - 1)));
}

} // namespace sharpgrad::constants

#include "sharpgrad/identities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sharpgrad/constants.hpp"
#include "sharpgrad/quadrature.hpp"
#include "sharpgrad/specfun.hpp"
#include "halfpow.hpp"

namespace sharpgrad::identities {

using quadrature::integrate_adaptive;

namespace {

constexpr double pi = std::numbers::pi;

void check_args(int n, double rho, const char* who)
{
    if (n < 3)
        throw std::domain_error(std::string(who) + ": need n >= 3");
    if (!(rho >= 0.0 && rho < 1.0))
        throw std::domain_error(std::string(who) + ": need 0 <= rho < 1");
}

IdentityReport make_report(double lhs, double rhs, double tol)
{
    IdentityReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_gap = std::fabs(lhs - rhs);
    r.tolerance = tol * std::max(1.0, std::fabs(rhs));
    r.passed = r.abs_gap <= r.tolerance;
    return r;
}

// shared pieces of the theta integrands
struct Weight {
    int n;
    double rho, ca, sa2;
    double r2;  // 1 + rho^2

    Weight(int n_, double rho_, double alpha) : n(n_), rho(rho_)
    {
        ca = std::cos(alpha);
        const double sa = std::sin(alpha);
        sa2 = sa * sa;
        r2 = 1.0 + rho * rho;
    }

    double p(double ct) const { return r2 - 2.0 * rho * ct * ca; }
    double p0(double ct) const { return r2 - 2.0 * rho * ct; }
    double z(double p_, double st) const
    {
        return 4.0 * rho * rho * sa2 * st * st / (p_ * p_);
    }
    double base(double p_, double st) const
    {
        return std::pow(st, n - 2) * half_pow(p_, 2 - n);
    }
};

} // namespace

IdentityReport lemma3_sides(int n, double rho, double alpha, double tol)
{
    check_args(n, rho, "lemma3_sides");
    const Weight w(n, rho, alpha);
    const double qtol = std::max(tol / 10.0, 1e-13);

    auto lhs_f = [&](double th) {
        const double ct = std::cos(th), st = std::sin(th);
        const double p = w.p(ct);
        const double hyp = specfun::hyp2f1_logcase(
            specfun::Hyp2F1Args::for_dimension(n, w.z(p, st)));
        return w.base(p, st) * hyp;
    };
    auto rhs_f = [&](double th) {
        const double ct = std::cos(th), st = std::sin(th);
        return w.base(w.p0(ct), st);
    };
    const double lhs = integrate_adaptive(lhs_f, 0.0, pi, qtol).value;
    const double rhs = integrate_adaptive(rhs_f, 0.0, pi, qtol).value;
    return make_report(lhs, rhs, tol);
}

IdentityReport lemma4_sides(int n, double rho, double alpha, double tol)
{
    check_args(n, rho, "lemma4_sides");
    const Weight w(n, rho, alpha);
    const double qtol = std::max(tol / 10.0, 1e-13);

    auto lhs_f = [&](double th) {
        const double ct = std::cos(th), st = std::sin(th);
        const double p = w.p(ct);
        const double hyp = specfun::hyp2f1_logcase(
            specfun::Hyp2F1Args::for_dimension(n, w.z(p, st)));
        return ct * ct * w.base(p, st) * hyp;
    };
    auto rhs_sin = [&](double th) {
        const double ct = std::cos(th), st = std::sin(th);
        return st * st * w.base(w.p0(ct), st);
    };
    auto rhs_cos = [&](double th) {
        const double ct = std::cos(th), st = std::sin(th);
        return ct * ct * w.base(w.p0(ct), st);
    };
    const double lhs = integrate_adaptive(lhs_f, 0.0, pi, qtol).value;
    const double rhs = w.sa2 / (n - 1.0) * integrate_adaptive(rhs_sin, 0.0, pi, qtol).value
                       + w.ca * w.ca * integrate_adaptive(rhs_cos, 0.0, pi, qtol).value;
    return make_report(lhs, rhs, tol);
}

IdentityReport lemma5_value(int n, double rho, double alpha, double tol)
{
    check_args(n, rho, "lemma5_value");
    const Weight w(n, rho, alpha);
    const double qtol = std::max(tol / 10.0, 1e-13);
    const double a = (n - 2.0) / n * rho * w.ca;

    auto f = [&](double th) {
        const double ct = std::cos(th), st = std::sin(th);
        const double p = w.p(ct);
        const double hyp = specfun::hyp2f1_logcase(
            specfun::Hyp2F1Args::for_dimension(n, w.z(p, st)));
        return (a - ct) * w.base(p, st) * hyp;
    };
    const double lhs = integrate_adaptive(f, 0.0, pi, qtol).value;
    return make_report(lhs, 0.0, tol);
}

SIntegrals s_integrals(int n, double rho, double alpha, double tol)
{
    check_args(n, rho, "s_integrals");
    if (rho > 0.99)
        throw std::domain_error("s_integrals: rho limited to [0, 0.99]");
    const Weight w(n, rho, alpha);
    const double qtol = std::max(tol / 3.0, 1e-13);
    const double a = (n - 2.0) / n * rho * w.ca;

    auto s_f = [&](double th) {
        const double ct = std::cos(th), st = std::sin(th);
        return std::fabs(a - ct) * w.base(w.p(ct), st);
    };
    auto excess = [&](double th) {
        const double ct = std::cos(th), st = std::sin(th);
        const double p = w.p(ct);
        return specfun::hyp2f1m1_logcase(
                   specfun::Hyp2F1Args::for_dimension(n, w.z(p, st)))
               * w.base(p, st);
    };
    auto s2_f = [&](double th) {
        const double d = a - std::cos(th);
        return d * d * excess(th);
    };

    // the first-moment kernel kinks where cos(theta) crosses a
    const double bp[] = {std::acos(std::clamp(a, -1.0, 1.0))};
    const auto qs = integrate_adaptive(s_f, 0.0, pi, qtol, bp);
    const auto q1 = integrate_adaptive(excess, 0.0, pi, qtol);
    const auto q2 = integrate_adaptive(s2_f, 0.0, pi, qtol);

    SIntegrals out;
    out.S = qs.value;
    out.S1 = q1.value;
    out.S2 = q2.value;
    out.error_estimate = qs.error_estimate + q1.error_estimate + q2.error_estimate;
    return out;
}

double cs_majorant_scaled(int n, double rho, double alpha, double tol)
{
    const auto s = s_integrals(n, rho, alpha, tol);
    const double cross = std::sqrt(std::max(s.S1, 0.0) * std::max(s.S2, 0.0));
    return constants::representation_prefactor(n, rho) * (s.S + cross);
}

} // namespace sharpgrad::identities

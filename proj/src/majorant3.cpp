#include "sharpgrad/majorant3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sharpgrad/constants.hpp"
#include "sharpgrad/identities.hpp"
#include "sharpgrad/specfun.hpp"

namespace sharpgrad::majorant3 {

namespace {

void check_rho(double rho, const char* who)
{
    if (!(rho >= 0.0 && rho < 1.0))
        throw std::domain_error(std::string(who) + ": need 0 <= rho < 1");
}

// |cos(alpha)| below this the closed forms have lost ~all digits
constexpr double cos_floor = 1e-6;

double checked_cos(double rho, double alpha, const char* who)
{
    check_rho(rho, who);
    const double c = std::cos(alpha);
    if (rho > 0.0 && std::fabs(c) < cos_floor)
        throw std::domain_error(std::string(who) +
                                ": cos(alpha) too small for the closed form, "
                                "use the quadrature route");
    return c;
}

struct Roots {
    double sm, sp;  // sqrt(1 + rho^2 -/+ 2 rho c)
};

Roots roots(double rho, double c)
{
    const double w = 1.0 + rho * rho;
    return {std::sqrt(w - 2.0 * rho * c), std::sqrt(w + 2.0 * rho * c)};
}

} // namespace

double closed_S(double rho, double alpha)
{
    const double c = checked_cos(rho, alpha, "closed_S");
    if (rho == 0.0)
        return 1.0;
    const auto [sm, sp] = roots(rho, c);
    const double r2 = rho * rho, c2 = c * c;
    const double core = 1.0 + r2 - 2.0 / 3.0 * r2 * c2;
    return (2.0 * core * std::sqrt(core)
            - (1.0 + r2 - r2 * c2 + rho * c) * sm
            - (1.0 + r2 - r2 * c2 - rho * c) * sp) / (3.0 * r2 * c2);
}

double closed_S1(double rho, double alpha)
{
    const double c = checked_cos(rho, alpha, "closed_S1");
    if (rho == 0.0)
        return 0.0;
    const auto [sm, sp] = roots(rho, c);
    return 2.0 - (sp - sm) / (rho * c);
}

double closed_S2(double rho, double alpha)
{
    const double c = checked_cos(rho, alpha, "closed_S2");
    if (rho == 0.0)
        return 0.0;
    const auto [sm, sp] = roots(rho, c);
    const double r2 = rho * rho, c2 = c * c;
    double s2 = (2.0 / 3.0 + 2.0 / 45.0 * r2) * c2
                + (2.0 / 3.0 - 2.0 / 15.0 * r2) * (1.0 - c2);
    s2 += (rho * c / 9.0 - (10.0 * r2 + 1.0) / (45.0 * rho * c)
           + 2.0 * (1.0 + r2) * (1.0 + r2) / (15.0 * r2 * rho * c2 * c)) * (sm - sp);
    s2 += (2.0 * (1.0 + r2) / (15.0 * r2 * c2) - 2.0 / 9.0) * (sp + sm);
    return s2;
}

namespace {

// combined closed form of S + S1/3 + (3/4) S2; algebraically identical to
// recombining the three pieces but with fewer cancelling terms
double closed_M(double rho, double c)
{
    const auto [sm, sp] = roots(rho, c);
    const double r2 = rho * rho, c2 = c * c;
    const double w = 1.0 + r2;
    const double core = w - 2.0 / 3.0 * r2 * c2;
    double m = 2.0 * core * std::sqrt(core) / (3.0 * r2 * c2);
    m += 7.0 / 6.0 - r2 / 10.0 + 2.0 * r2 * c2 / 15.0;
    m += (1.0 / 6.0 - 7.0 * w / (30.0 * r2 * c2)) * (sm + sp);
    m += (rho * c / 12.0 - (10.0 * r2 + 1.0) / (60.0 * rho * c)
          + w * w / (10.0 * r2 * rho * c2 * c)) * (sm - sp);
    return m;
}

} // namespace

MajorantBreakdown majorant(double rho, double alpha)
{
    check_rho(rho, "majorant");
    const double c = std::cos(alpha);
    MajorantBreakdown bd;
    bd.t = c * c;
    if (rho == 0.0) {
        bd.S = 1.0;
        bd.M = 1.0;
        return bd;
    }
    if (bd.t >= series_switch) {
        bd.S = closed_S(rho, alpha);
        bd.S1 = closed_S1(rho, alpha);
        bd.S2 = closed_S2(rho, alpha);
        bd.M = closed_M(rho, c);
    } else {
        const auto s = identities::s_integrals(3, rho, alpha, 1e-10);
        bd.S = s.S;
        bd.S1 = s.S1;
        bd.S2 = s.S2;
        bd.M = majorant_series_T(bd.t, rho);
    }
    return bd;
}

namespace {

// Log-space pieces of a_k for k >= 2: a_k = exp(log_t1) + sign(bracket) *
// exp(log_abs_t2).  Exposed separately so the sign of a_k can still be
// decided after the value itself underflows (small rho, large k).
struct CoeffParts {
    double log_t1 = 0.0;
    double log_abs_t2 = 0.0;
    double bracket = 0.0;
};

CoeffParts coefficient_parts(int k, double rho)
{
    const double w = 1.0 + rho * rho;
    const double kk = k;
    const double P = (8.0 / 3.0 * kk + 8.0) * kk * kk * kk + (22.0 / 3.0 * kk + 2.0) * kk;
    const double Q = ((32.0 / 3.0 * kk + 8.0) * kk - 68.0 / 3.0) * kk * kk - 8.0 * kk + 12.0;
    const double R = (((-32.0 / 3.0 * kk + 16.0) * kk - 70.0 / 3.0) * kk + 17.0) * kk - 3.0;

    CoeffParts parts;
    parts.bracket = (-w * P + Q) * w + R;
    const double lw = std::log(w), lr = std::log(rho);
    parts.log_t1 = std::numbers::ln2 + 0.5 * lw - std::log(3.0)
                   + specfun::log_double_factorial(2 * k - 3)
                   - specfun::log_gamma(kk + 2.0)
                   + kk * (2.0 * lr - std::log(3.0) - lw);
    parts.log_abs_t2 = specfun::log_double_factorial(4 * k - 5)
                       - specfun::log_gamma(2.0 * kk + 4.0) - 0.5 * lw
                       + 2.0 * kk * (lr - lw)
                       + (parts.bracket != 0.0 ? std::log(std::fabs(parts.bracket))
                                               : -std::numeric_limits<double>::infinity());
    return parts;
}

} // namespace

double coefficient_a(int k, double rho)
{
    if (k < 1)
        throw std::domain_error("coefficient_a: need k >= 1");
    check_rho(rho, "coefficient_a");
    if (rho == 0.0)
        return 0.0;
    if (k == 1) {
        const double w = 1.0 + rho * rho;
        const double sw = std::sqrt(w);
        return rho * rho * (2.0 / 15.0 - 1.0 / (18.0 * sw)
                            - 1.0 / (30.0 * w * w * sw));
    }
    const CoeffParts parts = coefficient_parts(k, rho);
    const double t1 = std::exp(parts.log_t1);
    double t2 = 0.0;
    if (parts.bracket != 0.0) {
        t2 = std::exp(parts.log_abs_t2);
        if (parts.bracket < 0.0)
            t2 = -t2;
    }
    return t1 + t2;
}

double series_constant(double rho)
{
    check_rho(rho, "series_constant");
    return 7.0 / 6.0 - rho * rho / 10.0 - 1.0 / (6.0 * std::sqrt(1.0 + rho * rho));
}

double majorant_series_T(double t, double rho, double tol, int kmax)
{
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("majorant_series_T: need t in [0, 1]");
    check_rho(rho, "majorant_series_T");
    double sum = series_constant(rho);
    if (t == 0.0 || rho == 0.0)
        return sum;
    double tp = 1.0;
    int small = 0;
    for (int k = 1; k <= kmax; ++k) {
        tp *= t;
        const double term = coefficient_a(k, rho) * tp;
        sum += term;
        if (std::fabs(term) <= tol * std::fabs(sum)) {
            if (++small >= 3)
                return sum;
        } else {
            small = 0;
        }
    }
    throw specfun::accuracy_error("majorant_series_T: series did not converge", sum);
}

namespace {

double log_l(int k)
{
    // (3/2)^{k+1} (k+1)! (4k-5)!! / ((2k-3)!! (2k+3)!) with the factorial
    // ratios telescoped into products of small integers and summed in log
    // space under Neumaier compensation; the large-argument log-gamma route
    // loses ~1e-12 absolute here, which is too coarse for the ratio check.
    double sum = (k + 1.0) * std::log(1.5);
    double comp = 0.0;
    auto add = [&](double x) {
        const double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    };
    for (int j = 2 * k - 1; j <= 4 * k - 5; j += 2)
        add(std::log(static_cast<double>(j)));
    for (int i = k + 2; i <= 2 * k + 3; ++i)
        add(-std::log(static_cast<double>(i)));
    return sum + comp;
}

} // namespace

std::vector<Lemma6Report> lemma6_verify(double rho, int kmax)
{
    check_rho(rho, "lemma6_verify");
    if (rho == 0.0)
        throw std::domain_error("lemma6_verify: need rho > 0");
    if (kmax < 2)
        throw std::domain_error("lemma6_verify: need kmax >= 2");

    std::vector<Lemma6Report> out;
    out.reserve(kmax - 1);
    for (int k = 2; k <= kmax; ++k) {
        Lemma6Report rep;
        rep.k = k;
        const double kk = k;
        rep.P = (8.0 / 3.0 * kk + 8.0) * kk * kk * kk + (22.0 / 3.0 * kk + 2.0) * kk;
        rep.Q = ((32.0 / 3.0 * kk + 8.0) * kk - 68.0 / 3.0) * kk * kk - 8.0 * kk + 12.0;
        rep.R = (((-32.0 / 3.0 * kk + 16.0) * kk - 70.0 / 3.0) * kk + 17.0) * kk - 3.0;

        rep.discriminant = kk * kk * rep.Q * rep.Q
                           + 4.0 * (kk * kk - 1.0) * rep.P * rep.R;
        const double octic = ((((((((-3200.0 / 9.0) * kk - 544.0) * kk + 5824.0 / 9.0) * kk
                                  + 952.0) * kk - 3488.0 / 9.0) * kk - 432.0) * kk + 96.0) * kk
                              + 24.0) * kk;
        rep.discriminant_dual_gap =
            std::fabs(octic - rep.discriminant) / std::fabs(rep.discriminant);

        // minimum over y in [1, 2] of (k-1) P y^2 - k Q y - (k+1) R
        auto phi = [&](double y) {
            return ((kk - 1.0) * rep.P * y - kk * rep.Q) * y - (kk + 1.0) * rep.R;
        };
        rep.phi_quad_min = std::min(phi(1.0), phi(2.0));
        const double yv = kk * rep.Q / (2.0 * (kk - 1.0) * rep.P);
        if (yv > 1.0 && yv < 2.0)
            rep.phi_quad_min = std::min(rep.phi_quad_min, phi(yv));

        rep.l_k = std::exp(log_l(k));
        rep.d_k = 2.0 / ((98.0 * kk + 7.0) * kk - 21.0);
        const double ratio = std::exp(log_l(k + 1) - log_l(k));
        const double ratio_closed = 3.0 * (4.0 * kk - 1.0) * (4.0 * kk - 3.0) * (kk + 2.0)
                                    / (2.0 * (2.0 * kk + 5.0) * (2.0 * kk + 4.0)
                                       * (2.0 * kk - 1.0));
        rep.ratio_gap = std::fabs(ratio - ratio_closed) / ratio_closed;
        // sign decided in log space: the value itself underflows for small
        // rho at large k, but negativity only needs the dominant term
        const CoeffParts parts = coefficient_parts(k, rho);
        rep.a_k_negative = parts.bracket < 0.0 && parts.log_abs_t2 > parts.log_t1;

        rep.passed = rep.discriminant < 0.0
                     && rep.discriminant_dual_gap <= 1e-9
                     && rep.phi_quad_min > 0.0
                     && rep.l_k > rep.d_k
                     && rep.ratio_gap <= 1e-12
                     && rep.a_k_negative;
        out.push_back(rep);
    }
    return out;
}

double t_prime_at_one(double rho)
{
    check_rho(rho, "t_prime_at_one");
    const double r2 = rho * rho;
    const double num = r2 * (640.0 / 3.0 + r2 * (10040.0 / 27.0 + 121.0 * r2));
    const double A = (11.0 * r2 + 60.0) * r2 + 40.0;
    const double B = 40.0 * (1.0 + 4.0 / 3.0 * r2);
    return num / (60.0 * (A + B * std::sqrt(1.0 + r2 / 3.0)));
}

ChainReport conjecture_chain(double rho, std::span<const double> alpha_grid,
                             double slack_tol)
{
    check_rho(rho, "conjecture_chain");
    if (rho == 0.0 || rho > 0.99)
        throw std::domain_error("conjecture_chain: need rho in (0, 0.99]");

    ChainReport rep;
    rep.rho = rho;
    rep.min_slack = std::numeric_limits<double>::infinity();
    const double t_radial = majorant(rho, 0.0).M;
    const double pref = constants::representation_prefactor(3, rho);
    bool all_passed = true;

    for (const double alpha : alpha_grid) {
        ChainSample s;
        s.alpha = alpha;
        const constants::ProblemPoint pt{3, rho, alpha};
        const auto est = constants::directional_constant(pt, 1e-10);
        s.lhs = est.value / pref;
        const auto bd = majorant(rho, alpha);
        s.cs = bd.S + std::sqrt(std::max(bd.S1, 0.0) * std::max(bd.S2, 0.0));
        s.t_value = bd.M;
        s.t_radial = t_radial;
        s.min_slack = std::min({s.cs - s.lhs, s.t_value - s.cs, s.t_radial - s.t_value});
        s.passed = s.min_slack >= -slack_tol;
        all_passed = all_passed && s.passed;
        rep.min_slack = std::min(rep.min_slack, s.min_slack);
        rep.samples.push_back(s);
    }

    rep.radial_identity_gap =
        std::fabs(pref * t_radial - constants::radial_constant_closed3(rho));
    rep.s1_at_zero = closed_S1(rho, 0.0);
    rep.s2_at_zero = closed_S2(rho, 0.0);

    // concavity probe: T'' sampled on a t grid; every a_k (k >= 2) is
    // negative so the truncated sums are upper bounds
    double max_tpp = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 10; ++i) {
        const double t = 0.1 * i;
        double sum = 0.0, tp = 1.0;
        for (int k = 2; k <= 20000; ++k) {
            const double term = k * (k - 1.0) * coefficient_a(k, rho) * tp;
            sum += term;
            tp *= t;
            if (k > 4 && std::fabs(term) <= 1e-17 * std::fabs(sum))
                break;
        }
        max_tpp = std::max(max_tpp, sum);
    }
    rep.max_second_derivative = max_tpp;

    const double closed = constants::radial_constant_closed3(rho);
    rep.passed = all_passed
                 && rep.radial_identity_gap <= slack_tol * std::max(1.0, closed)
                 && std::fabs(rep.s1_at_zero) <= slack_tol
                 && std::fabs(rep.s2_at_zero) <= slack_tol
                 && rep.max_second_derivative <= slack_tol;
    return rep;
}

} // namespace sharpgrad::majorant3

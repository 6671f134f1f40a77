#include "sharpgrad.h"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <memory>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sharpgrad/constants.hpp"
#include "sharpgrad/identities.hpp"
#include "sharpgrad/majorant3.hpp"
#include "sharpgrad/oracle.hpp"
#include "sharpgrad/specfun.hpp"

struct sg_context {
    double tol = 1e-9;
    int refinement = 1;
    int kmax = 200;
};

namespace {

struct CaseRec {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    double tol = 0.0;
    bool passed = false;
};

} // namespace

struct sg_report {
    std::vector<CaseRec> cases;
};

namespace {

using namespace sharpgrad;

std::string fmt(const char* f, ...)
{
    char buf[160];
    va_list ap;
    va_start(ap, f);
    vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

void add_case(std::vector<CaseRec>& out, std::string name, double lhs, double rhs,
              double tol, bool passed)
{
    CaseRec c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.gap = std::fabs(lhs - rhs);
    c.tol = tol;
    c.passed = passed;
    out.push_back(std::move(c));
}

// scaled two-sided comparison used by the identity suites
void add_gap_case(std::vector<CaseRec>& out, std::string name, double lhs, double rhs,
                  double tol)
{
    const double scaled = tol * std::max(1.0, std::fabs(rhs));
    add_case(out, std::move(name), lhs, rhs, scaled, std::fabs(lhs - rhs) <= scaled);
}

constexpr double half_pi = std::numbers::pi / 2.0;

std::vector<int> dim_grid(int n)
{
    if (n > 0)
        return {n};
    return {3, 4, 5, 6};
}

void suite_lemma1(std::vector<CaseRec>& out, double tol, int n_filter)
{
    static const std::pair<oracle::TestFn, const char*> fns[] = {
        {oracle::TestFn::one, "one"},
        {oracle::TestFn::x1_squared, "x1_squared"},
        {oracle::TestFn::abs_x1, "abs_x1"},
        {oracle::TestFn::radial_bump, "radial_bump"},
    };
    static const std::pair<int, int> pairs[] = {{3, 1}, {3, 2}, {4, 2}, {5, 2}};
    for (const auto& [n, k] : pairs) {
        if (n_filter > 0 && n != n_filter)
            continue;
        for (const auto& [fn, fname] : fns) {
            const auto [lhs, rhs] = oracle::verify_projection_lemma(fn, n, k);
            add_gap_case(out, fmt("lemma1 fn=%s n=%d k=%d", fname, n, k), lhs, rhs, tol);
        }
    }
}

void suite_lemma2(std::vector<CaseRec>& out, double tol, int n_filter)
{
    std::mt19937 gen(12345);
    auto uni = [&] { return gen() * 0x1p-32; };
    for (int i = 0; i < 12; ++i) {
        int n = 3 + static_cast<int>(gen() % 4);
        const double rho = 0.05 + 0.9 * uni();
        const double alpha = half_pi * uni();
        const double x = -0.95 + 1.9 * uni();
        if (n_filter > 0)
            n = n_filter;
        const auto [lhs, rhs] = oracle::verify_inner_integral(n, rho, alpha, x);
        add_gap_case(out,
                     fmt("lemma2 n=%d rho=%.4f alpha=%.4f x=%.4f", n, rho, alpha, x),
                     lhs, rhs, tol);
    }
}

template <typename F>
void identity_grid(std::vector<CaseRec>& out, const char* name, double tol,
                   int n_filter, F&& sides)
{
    static const double rhos[] = {0.1, 0.3, 0.5, 0.7, 0.9};
    static const double alphas[] = {0.0, std::numbers::pi / 6.0, std::numbers::pi / 3.0,
                                    half_pi};
    for (int n : dim_grid(n_filter))
        for (double rho : rhos)
            for (double alpha : alphas) {
                const identities::IdentityReport r = sides(n, rho, alpha, tol);
                add_case(out,
                         fmt("%s n=%d rho=%.1f alpha=%.4f", name, n, rho, alpha),
                         r.lhs, r.rhs, r.tolerance, r.passed);
            }
}

void suite_lemma6(std::vector<CaseRec>& out, int kmax)
{
    for (int j = 1; j <= 19; ++j) {
        const double rho = 0.05 * j;
        const auto reports = majorant3::lemma6_verify(rho, kmax);
        bool all = true;
        double min_phi = reports.front().phi_quad_min;
        double max_disc = reports.front().discriminant;
        double max_dual = 0.0;
        for (const auto& r : reports) {
            all = all && r.passed;
            min_phi = std::min(min_phi, r.phi_quad_min);
            max_disc = std::max(max_disc, r.discriminant);
            max_dual = std::max(max_dual, r.discriminant_dual_gap);
        }
        CaseRec c;
        c.name = fmt("lemma6 rho=%.2f kmax=%d", rho, kmax);
        c.lhs = min_phi;    // must stay positive
        c.rhs = max_disc;   // must stay negative
        c.gap = max_dual;
        c.tol = 1e-9;
        c.passed = all;
        out.push_back(std::move(c));
    }
}

void suite_lemma7(std::vector<CaseRec>& out)
{
    for (int j = 1; j <= 99; ++j) {
        const double rho = 0.01 * j;
        const double tp = majorant3::t_prime_at_one(rho);
        add_case(out, fmt("lemma7 tprime rho=%.2f", rho), tp, 0.0, 0.0, tp >= 0.0);
    }
    std::mt19937 gen(777);
    for (int i = 0; i < 20; ++i) {
        const double rho = 0.999 * (gen() * 0x1p-32);
        const double r2 = rho * rho;
        const double A = (11.0 * r2 + 60.0) * r2 + 40.0;
        const double B = 40.0 * (1.0 + 4.0 / 3.0 * r2);
        // A^2 - B^2 C in the factored form (A-B)(A+B) - B^2 (C-1), with the
        // differences A-B = 11 rho^4 + (20/3) rho^2 and C-1 = rho^2/3 written
        // out so the near-cancellation of the squares at small rho never
        // enters in floating point
        const double lhs = (11.0 * r2 + 20.0 / 3.0) * r2 * (A + B) - B * B * (r2 / 3.0);
        const double rhs = ((121.0 * r2 + 10040.0 / 27.0) * r2 + 640.0 / 3.0) * r2 * r2;
        add_case(out, fmt("lemma7 octic rho=%.6f", rho), lhs, rhs,
                 1e-10 * std::fabs(rhs), std::fabs(lhs - rhs) <= 1e-10 * std::fabs(rhs));
    }
    for (int j = 1; j <= 8; ++j) {
        const double rho = 0.1 * j;
        double sum = 0.0;
        for (int k = 1; k <= 2000; ++k) {
            const double term = k * majorant3::coefficient_a(k, rho);
            sum += term;
            if (k > 8 && std::fabs(term) <= 1e-16 * std::fabs(sum))
                break;
        }
        const double closed = majorant3::t_prime_at_one(rho);
        add_case(out, fmt("lemma7 series rho=%.1f", rho), sum, closed, 1e-8,
                 std::fabs(sum - closed) <= 1e-8);
    }
}

void suite_chain(std::vector<CaseRec>& out, double tol)
{
    std::vector<double> alphas(33);
    for (int i = 0; i < 33; ++i)
        alphas[i] = half_pi * i / 32.0;
    for (int j = 1; j <= 19; ++j) {
        const double rho = 0.05 * j;
        const auto rep = majorant3::conjecture_chain(rho, alphas, tol);
        CaseRec c;
        c.name = fmt("chain rho=%.2f", rho);
        c.lhs = rep.min_slack;
        c.rhs = 0.0;
        c.gap = rep.radial_identity_gap;
        c.tol = tol;
        c.passed = rep.passed;
        out.push_back(std::move(c));
    }
}

sg_error run_suite(const sg_context* ctx, const std::string& suite, int n,
                   std::vector<CaseRec>& out)
{
    const double tol = ctx->tol;
    if (suite == "lemma1") {
        suite_lemma1(out, tol, n);
    } else if (suite == "lemma2") {
        suite_lemma2(out, tol, n);
    } else if (suite == "lemma3") {
        identity_grid(out, "lemma3", tol, n, identities::lemma3_sides);
    } else if (suite == "lemma4") {
        identity_grid(out, "lemma4", tol, n, identities::lemma4_sides);
    } else if (suite == "lemma5") {
        identity_grid(out, "lemma5", tol, n, identities::lemma5_value);
    } else if (suite == "lemma6") {
        suite_lemma6(out, ctx->kmax);
    } else if (suite == "lemma7") {
        suite_lemma7(out);
    } else if (suite == "chain") {
        suite_chain(out, tol);
    } else if (suite == "all") {
        for (const char* s : {"lemma1", "lemma2", "lemma3", "lemma4", "lemma5",
                              "lemma6", "lemma7", "chain"}) {
            const sg_error err = run_suite(ctx, s, n, out);
            if (err != SG_OK)
                return err;
        }
    } else {
        return SG_ERR_UNKNOWN_SUITE;
    }
    return SG_OK;
}

template <typename F>
sg_error guarded(F&& body)
{
    try {
        body();
        return SG_OK;
    } catch (const specfun::accuracy_error&) {
        return SG_ERR_NO_CONVERGENCE;
    } catch (const std::domain_error&) {
        return SG_ERR_DOMAIN;
    } catch (const std::invalid_argument&) {
        return SG_ERR_INVALID;
    } catch (...) {
        return SG_ERR_INTERNAL;
    }
}

void fill(sg_estimate* out, const constants::ConstantEstimate& est)
{
    out->value = est.value;
    out->error_bound = est.error_bound;
    out->converged = est.converged ? 1 : 0;
}

} // namespace

extern "C" {

const char* sg_error_message(int code)
{
    switch (code) {
    case SG_OK:
        return "ok";
    case SG_ERR_DOMAIN:
        return "input outside the mathematical domain";
    case SG_ERR_NO_CONVERGENCE:
        return "series or quadrature did not reach the requested accuracy";
    case SG_ERR_INVALID:
        return "null handle or malformed argument";
    case SG_ERR_UNKNOWN_SUITE:
        return "unknown verification suite";
    case SG_ERR_INTERNAL:
        return "internal error";
    default:
        return "unrecognized error code";
    }
}

const char* sg_version(void)
{
    return "0.1.0";
}

sg_context* sg_context_create(void)
{
    return new (std::nothrow) sg_context;
}

void sg_context_destroy(sg_context* ctx)
{
    delete ctx;
}

int sg_context_set_tolerance(sg_context* ctx, double tol)
{
    if (!ctx || !(tol > 0.0) || !std::isfinite(tol))
        return SG_ERR_INVALID;
    ctx->tol = tol;
    return SG_OK;
}

int sg_context_set_refinement(sg_context* ctx, int refinement)
{
    if (!ctx || refinement < 1 || refinement > 64)
        return SG_ERR_INVALID;
    ctx->refinement = refinement;
    return SG_OK;
}

int sg_context_set_kmax(sg_context* ctx, int kmax)
{
    if (!ctx || kmax < 2 || kmax > 100000)
        return SG_ERR_INVALID;
    ctx->kmax = kmax;
    return SG_OK;
}

int sg_constant(const sg_context* ctx, int n, double rho, double alpha,
                int method, sg_estimate* out)
{
    if (!ctx || !out)
        return SG_ERR_INVALID;
    return guarded([&] {
        const constants::ProblemPoint pt{n, rho, alpha};
        switch (method) {
        case SG_METHOD_REPRESENTATION:
            fill(out, constants::directional_constant(pt, ctx->tol));
            break;
        case SG_METHOD_ORACLE_DIRECT:
            fill(out, oracle::constant_oracle_direct(pt, ctx->refinement));
            break;
        case SG_METHOD_ORACLE_MOEBIUS:
            fill(out, oracle::constant_oracle_moebius(pt, ctx->refinement));
            break;
        case SG_METHOD_CLOSED3: {
            if (n != 3 || alpha != 0.0)
                throw std::domain_error("closed3 requires n = 3, alpha = 0");
            const double v = constants::radial_constant_closed3(rho);
            out->value = v;
            out->error_bound = 4e-16 * v;
            out->converged = 1;
            break;
        }
        default:
            throw std::invalid_argument("unknown method");
        }
    });
}

int sg_gradient_constant(const sg_context* ctx, int n, double rho,
                         sg_estimate* out, double* argmax_alpha)
{
    if (!ctx || !out)
        return SG_ERR_INVALID;
    return guarded([&] {
        const auto [est, alpha] = constants::gradient_constant(n, rho, ctx->tol);
        fill(out, est);
        if (argmax_alpha)
            *argmax_alpha = alpha;
    });
}

int sg_radial_constant_closed3(double rho, double* out)
{
    if (!out)
        return SG_ERR_INVALID;
    return guarded([&] { *out = constants::radial_constant_closed3(rho); });
}

int sg_center_constant(int n, double* out)
{
    if (!out)
        return SG_ERR_INVALID;
    return guarded([&] { *out = constants::center_constant(n); });
}

int sg_halfspace_constant(int n, double* out)
{
    if (!out)
        return SG_ERR_INVALID;
    return guarded([&] { *out = constants::halfspace_constant(n); });
}

int sg_majorant_scaled(const sg_context* ctx, int n, double rho, double alpha,
                       double* out)
{
    if (!ctx || !out)
        return SG_ERR_INVALID;
    return guarded([&] { *out = identities::cs_majorant_scaled(n, rho, alpha, ctx->tol); });
}

int sg_verify(const sg_context* ctx, const char* suite, int n, sg_report** out)
{
    if (!ctx || !suite || !out)
        return SG_ERR_INVALID;
    *out = nullptr;
    auto rep = std::make_unique<sg_report>();
    sg_error suite_err = SG_OK;
    const sg_error err =
        guarded([&] { suite_err = run_suite(ctx, suite, n, rep->cases); });
    if (err != SG_OK)
        return err;
    if (suite_err != SG_OK)
        return suite_err;
    *out = rep.release();
    return SG_OK;
}

int sg_report_count(const sg_report* rep)
{
    return rep ? static_cast<int>(rep->cases.size()) : 0;
}

int sg_report_passed(const sg_report* rep)
{
    if (!rep)
        return 0;
    for (const auto& c : rep->cases)
        if (!c.passed)
            return 0;
    return 1;
}

const char* sg_report_case_name(const sg_report* rep, int index)
{
    if (!rep || index < 0 || index >= static_cast<int>(rep->cases.size()))
        return nullptr;
    return rep->cases[index].name.c_str();
}

int sg_report_case(const sg_report* rep, int index, double* lhs, double* rhs,
                   double* gap, double* tol, int* passed)
{
    if (!rep || index < 0 || index >= static_cast<int>(rep->cases.size()))
        return SG_ERR_INVALID;
    const CaseRec& c = rep->cases[index];
    if (lhs)
        *lhs = c.lhs;
    if (rhs)
        *rhs = c.rhs;
    if (gap)
        *gap = c.gap;
    if (tol)
        *tol = c.tol;
    if (passed)
        *passed = c.passed ? 1 : 0;
    return SG_OK;
}

void sg_report_destroy(sg_report* rep)
{
    delete rep;
}

} // extern "C"

// Acceptance gate: one line per criterion, tolerances pinned here.
// Exit status is the number of failed criteria.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "sharpgrad/constants.hpp"
#include "sharpgrad/identities.hpp"
#include "sharpgrad/majorant3.hpp"
#include "sharpgrad/oracle.hpp"
#include "sharpgrad/quadrature.hpp"
#include "sharpgrad/specfun.hpp"

using namespace sharpgrad;

namespace {

constexpr double pi = std::numbers::pi;

double now_seconds()
{
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

// index-ordered parallel map: results land by index, so output order and
// values are independent of the worker count
void parallel_for(int count, const std::function<void(int)>& body)
{
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0)
        workers = 4;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(count));
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                body(i);
        });
    }
    for (std::thread& t : pool)
        t.join();
}

struct Outcome {
    bool passed = false;
    std::string detail;
};

const double rho_grid5[] = {0.1, 0.3, 0.5, 0.7, 0.9};
const double alpha_grid4[] = {0.0, pi / 6, pi / 3, pi / 2};
const int dims4[] = {3, 4, 5, 6};

std::string fmtd(const char* f, ...)
{
    char buf[256];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// 1. gradient constant vs the closed radial form, with radial argmax
Outcome criterion1()
{
    const double t0 = now_seconds();
    double worst_rel = 0.0, worst_arg = 0.0;
    bool ok = true;
    for (double rho : rho_grid5) {
        const auto [est, argmax] = constants::gradient_constant(3, rho, 1e-10);
        const double closed = constants::radial_constant_closed3(rho);
        const double rel = std::fabs(est.value - closed) / closed;
        worst_rel = std::max(worst_rel, rel);
        worst_arg = std::max(worst_arg, std::fabs(argmax));
        ok = ok && est.converged && rel <= 1e-6 && std::fabs(argmax) <= 1e-4;
    }
    const double dt = now_seconds() - t0;
    ok = ok && dt < 30.0;
    return {ok, fmtd("worst rel %.2e, worst |argmax| %.2e, %.1fs", worst_rel,
                     worst_arg, dt)};
}

// 2. three evaluation routes agree pairwise on the full grid
Outcome criterion2()
{
    const double t0 = now_seconds();
    struct Cell { int n; double rho, alpha; };
    std::vector<Cell> cells;
    for (int n : dims4)
        for (double rho : rho_grid5)
            for (double alpha : alpha_grid4)
                cells.push_back({n, rho, alpha});
    std::vector<double> rel(cells.size(), 1.0);
    std::atomic<bool> all_converged{true};
    parallel_for(static_cast<int>(cells.size()), [&](int i) {
        const constants::ProblemPoint pt{cells[i].n, cells[i].rho, cells[i].alpha};
        const auto r = constants::directional_constant(pt, 1e-10);
        const auto d = oracle::constant_oracle_direct(pt, 1);
        const auto m = oracle::constant_oracle_moebius(pt, 1);
        if (!(r.converged && d.converged && m.converged))
            all_converged = false;
        const double scale = std::fabs(r.value);
        rel[i] = std::max({std::fabs(r.value - d.value), std::fabs(r.value - m.value),
                           std::fabs(d.value - m.value)}) / scale;
    });
    double worst = 0.0;
    for (double g : rel)
        worst = std::max(worst, g);
    const double dt = now_seconds() - t0;
    const bool ok = all_converged && worst <= 1e-6 && dt < 120.0;
    return {ok, fmtd("%zu cells, worst pairwise rel %.2e, %.1fs", cells.size(),
                     worst, dt)};
}

// 3. integral identity suites at 1e-8 absolute gap
Outcome criterion3()
{
    bool ok = true;
    double worst = 0.0;
    // projection identity: four integrands, four (n, k) pairs
    const oracle::TestFn fns[] = {oracle::TestFn::one, oracle::TestFn::x1_squared,
                                  oracle::TestFn::abs_x1, oracle::TestFn::radial_bump};
    const std::pair<int, int> dims[] = {{3, 1}, {3, 2}, {4, 2}, {5, 2}};
    for (auto fn : fns) {
        for (auto [n, k] : dims) {
            const auto [lhs, rhs] = oracle::verify_projection_lemma(fn, n, k);
            const double gap = std::fabs(lhs - rhs);
            worst = std::max(worst, gap);
            ok = ok && gap <= 1e-8;
        }
    }
    // inner-integral identity on reproducible random tuples
    std::mt19937 gen(12345u);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 3 + static_cast<int>(gen() % 4u);
        const double rho = 0.05 + 0.9 * (gen() * 0x1p-32);
        const double alpha = 0.5 * pi * (gen() * 0x1p-32);
        const double x = -0.95 + 1.9 * (gen() * 0x1p-32);
        const auto [lhs, rhs] = oracle::verify_inner_integral(n, rho, alpha, x);
        const double gap = std::fabs(lhs - rhs);
        worst = std::max(worst, gap);
        ok = ok && gap <= 1e-8;
    }
    // weighted reductions over the full grid
    double worst3rhs = 0.0;
    for (int n : dims4) {
        for (double rho : rho_grid5) {
            for (double alpha : alpha_grid4) {
                const auto r3 = identities::lemma3_sides(n, rho, alpha, 1e-10);
                const auto r4 = identities::lemma4_sides(n, rho, alpha, 1e-10);
                const auto r5 = identities::lemma5_value(n, rho, alpha, 1e-10);
                worst = std::max({worst, r3.abs_gap, r4.abs_gap, r5.abs_gap});
                ok = ok && r3.abs_gap <= 1e-8 && r4.abs_gap <= 1e-8 &&
                     r5.abs_gap <= 1e-8;
                if (n == 3) {
                    worst3rhs = std::max(worst3rhs, std::fabs(r3.rhs - 2.0));
                    ok = ok && std::fabs(r3.rhs - 2.0) <= 1e-9;
                }
            }
        }
    }
    return {ok, fmtd("worst abs gap %.2e, worst |rhs-2| %.2e (n=3)", worst, worst3rhs)};
}

// 4. closed moment fixtures of the kernel weight
Outcome criterion4()
{
    bool ok = true;
    double worst = 0.0;
    std::mt19937 gen(2024u);
    for (int trial = 0; trial < 10; ++trial) {
        const double rho = 0.02 + 0.96 * (gen() * 0x1p-32);
        auto f1 = [rho](double x) {
            return x * x / std::sqrt(1.0 - 2.0 * rho * x + rho * rho);
        };
        auto f2 = [rho](double x) {
            return (1.0 - x * x) / std::sqrt(1.0 + rho * rho - 2.0 * rho * x);
        };
        const double g1 = std::fabs(quadrature::integrate_adaptive(f1, -1.0, 1.0, 1e-12).value
                                    - (4.0 * rho * rho / 15.0 + 2.0 / 3.0));
        const double g2 = std::fabs(quadrature::integrate_adaptive(f2, -1.0, 1.0, 1e-12).value
                                    - (4.0 / 3.0 - 4.0 * rho * rho / 15.0));
        worst = std::max({worst, g1, g2});
        ok = ok && g1 <= 1e-10 && g2 <= 1e-10;
    }
    return {ok, fmtd("10 draws, worst abs gap %.2e", worst)};
}

// 5. majorant chain with radial equality anchors
Outcome criterion5()
{
    std::vector<double> alphas(33);
    for (int i = 0; i < 33; ++i)
        alphas[i] = 0.5 * pi * i / 32.0;
    bool ok = true;
    double worst_slack = 1e300, worst_anchor = 0.0, worst_zero = 0.0;
    std::vector<majorant3::ChainReport> reports(19);
    parallel_for(19, [&](int j) {
        reports[j] = majorant3::conjecture_chain(0.05 * (j + 1), alphas, 1e-9);
    });
    for (const auto& rep : reports) {
        ok = ok && rep.passed;
        worst_slack = std::min(worst_slack, rep.min_slack);
        worst_anchor = std::max(worst_anchor, rep.radial_identity_gap);
        worst_zero = std::max({worst_zero, std::fabs(rep.s1_at_zero),
                               std::fabs(rep.s2_at_zero)});
        ok = ok && rep.min_slack >= -1e-9 && rep.radial_identity_gap <= 1e-9 &&
             std::fabs(rep.s1_at_zero) <= 1e-10 && std::fabs(rep.s2_at_zero) <= 1e-10;
    }
    return {ok, fmtd("min slack %.2e, worst radial anchor gap %.2e, worst S1/S2(0) %.2e",
                     worst_slack, worst_anchor, worst_zero)};
}

// 6. series-coefficient sign analysis
Outcome criterion6()
{
    bool ok = true;
    double worst_dual = 0.0, worst_ratio = 0.0, worst_bracket = 0.0;
    for (int j = 1; j <= 19; ++j) {
        const double rho = 0.05 * j;
        const auto reps = majorant3::lemma6_verify(rho, 200);
        ok = ok && reps.size() == 199;
        for (const auto& r : reps) {
            ok = ok && r.passed && r.a_k_negative && r.discriminant < 0.0;
            worst_dual = std::max(worst_dual, r.discriminant_dual_gap);
            worst_ratio = std::max(worst_ratio, r.ratio_gap);
            ok = ok && r.discriminant_dual_gap <= 1e-9 && r.ratio_gap <= 1e-12 &&
                 r.l_k > r.d_k;
            if (r.k <= 10) {
                const double collapsed = -4.0 * r.P + 2.0 * r.Q + r.R;
                const double expect = -(98.0 * r.k * r.k + 7.0 * r.k - 21.0);
                const double gap = std::fabs(collapsed - expect) / std::fabs(expect);
                worst_bracket = std::max(worst_bracket, gap);
                ok = ok && gap <= 1e-12;
            }
            if (r.k == 2) {
                ok = ok && std::fabs(r.l_k - 0.0120536) <= 1e-6 &&
                     std::fabs(r.d_k - 2.0 / 385.0) <= 1e-17 && r.l_k > r.d_k;
            }
        }
    }
    return {ok, fmtd("k = 2..200 over 19 radii; dual %.2e, ratio %.2e, bracket %.2e",
                     worst_dual, worst_ratio, worst_bracket)};
}

// 7. one-sided slope at t = 1: sign, conjugate octic, series consistency
Outcome criterion7()
{
    bool ok = true;
    for (int i = 1; i <= 99; ++i)
        ok = ok && majorant3::t_prime_at_one(0.01 * i) >= 0.0;
    // A^2 - B^2 C collapses to rho^4 (121 rho^4 + 10040/27 rho^2 + 640/3);
    // the left side is evaluated as (A-B)(A+B) - B^2 (C-1) with the
    // differences written out, so small rho keeps full precision
    double worst_octic = 0.0;
    std::mt19937 gen(777u);
    for (int trial = 0; trial < 20; ++trial) {
        const double rho = 0.999 * (gen() * 0x1p-32);
        const double r2 = rho * rho;
        const double a = (11.0 * r2 + 60.0) * r2 + 40.0;
        const double b = 40.0 * (1.0 + 4.0 / 3.0 * r2);
        const double lhs = (11.0 * r2 + 20.0 / 3.0) * r2 * (a + b) - b * b * (r2 / 3.0);
        const double rhs = r2 * r2 * ((121.0 * r2 + 10040.0 / 27.0) * r2 + 640.0 / 3.0);
        const double gap = std::fabs(lhs - rhs) / std::max(1e-300, std::fabs(rhs));
        worst_octic = std::max(worst_octic, gap);
        ok = ok && gap <= 1e-10;
    }
    // sum k a_k at t = 1 against the closed slope
    double worst_series = 0.0;
    for (int i = 1; i <= 8; ++i) {
        const double rho = 0.1 * i;
        double sum = 0.0;
        for (int k = 1; k <= 2000; ++k) {
            const double term = k * majorant3::coefficient_a(k, rho);
            sum += term;
            if (k > 8 && std::fabs(term) <= 1e-18 * std::fabs(sum))
                break;
        }
        const double gap = std::fabs(sum - majorant3::t_prime_at_one(rho));
        worst_series = std::max(worst_series, gap);
        ok = ok && gap <= 1e-8;
    }
    return {ok, fmtd("99 sign checks; worst octic rel %.2e, worst series gap %.2e",
                     worst_octic, worst_series)};
}

// 8. finite-difference probe with the extremal boundary function
Outcome criterion8()
{
    const double closed = constants::radial_constant_closed3(0.5);
    const double deriv = oracle::extremal_derivative({3, 0.5, 0.0}, 1e-3, 2);
    const bool ok = deriv >= 0.999 * closed && deriv <= closed + 1e-3;
    return {ok, fmtd("derivative %.9f vs closed %.9f (ratio %.6f)", deriv, closed,
                     deriv / closed)};
}

// 9. center and half-space anchors; continuity down to the center
Outcome criterion9()
{
    bool ok = true;
    ok = ok && std::fabs(constants::center_constant(3) - 1.5) <= 1e-14;
    ok = ok && std::fabs(constants::center_constant(4) - 16.0 / (3.0 * pi)) <= 1e-14;
    ok = ok &&
         std::fabs(constants::halfspace_constant(3) - 4.0 / (3.0 * std::sqrt(3.0))) <= 1e-14;
    double worst = 0.0;
    for (int n : {3, 4}) {
        const double c0 = constants::center_constant(n);
        for (double alpha : {0.0, 1.0}) {
            const double v = constants::directional_constant({n, 1e-7, alpha}, 1e-11).value;
            const double rel = std::fabs(v - c0) / c0;
            worst = std::max(worst, rel);
            ok = ok && rel <= 1e-6;
        }
    }
    return {ok, fmtd("anchors exact; worst center-limit rel %.2e", worst)};
}

// 10. hypergeometric dual route and the logarithmic blow-up
Outcome criterion10()
{
    bool ok = true;
    double worst = 0.0;
    for (int n : dims4) {
        for (int i = 0; i <= 12; ++i) {
            const double z = 0.6 + 0.025 * i;
            const auto args = specfun::Hyp2F1Args::for_dimension(n, z);
            const double d = specfun::hyp2f1_direct_series(args);
            const double c = specfun::hyp2f1_connection(args);
            const double rel = std::fabs(d - c) / c;
            worst = std::max(worst, rel);
            ok = ok && rel <= 1e-10;
        }
    }
    const double c0 = 0.225079079039276517389;  // 1/(pi sqrt 2)
    const double h0 = 4.1588830833596718565;    // 6 ln 2
    double prev = 1e300, tail = 1e300;
    for (int m = 8; m <= 48; m += 8) {
        const double z = 1.0 - std::ldexp(1.0, -m);
        const double f = specfun::hyp2f1_logcase({0.25, 0.75, 1.0, z});
        const double big_l = -std::log1p(-z);
        const double dev = f / (big_l * c0) - 1.0;
        ok = ok && dev > 0.0 && dev < prev;
        prev = dev;
        tail = std::fabs(big_l * dev - h0);
    }
    ok = ok && tail <= 1e-10;
    return {ok, fmtd("worst dual rel %.2e, limit-correction gap %.2e", worst, tail)};
}

} // namespace

int main()
{
    struct Entry {
        const char* desc;
        Outcome (*fn)();
    };
    const Entry entries[] = {
        {"gradient constant matches the radial closed form", criterion1},
        {"representation and both oracle routes agree", criterion2},
        {"integral identity suites", criterion3},
        {"kernel moment fixtures", criterion4},
        {"majorant inequality chain", criterion5},
        {"series-coefficient sign analysis", criterion6},
        {"one-sided slope at the radial end", criterion7},
        {"extremal finite-difference probe", criterion8},
        {"center and half-space anchors", criterion9},
        {"hypergeometric dual route and blow-up", criterion10},
    };
    int failures = 0;
    for (std::size_t i = 0; i < std::size(entries); ++i) {
        const double t0 = now_seconds();
        const Outcome out = entries[i].fn();
        const double dt = now_seconds() - t0;
        std::printf("%s criterion %zu: %s (%s) [%.1fs]\n", out.passed ? "PASS" : "FAIL",
                    i + 1, entries[i].desc, out.detail.c_str(), dt);
        std::fflush(stdout);
        if (!out.passed)
            ++failures;
    }
    if (failures == 0)
        std::printf("all %zu criteria passed\n", std::size(entries));
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures;
}

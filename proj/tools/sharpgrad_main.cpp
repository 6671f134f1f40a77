// Command-line front end.  Talks to the library exclusively through the C
// interface in sharpgrad.h; everything here is argument plumbing, grid
// expansion, and CSV/JSON emission.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sharpgrad.h"

namespace {

using nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;   // non-convergence or failed checks
constexpr int exit_usage = 2;

double default_tol()
{
    if (const char* env = std::getenv("SHARPGRAD_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end && *end == '\0' && v > 0.0 && std::isfinite(v))
            return v;
        std::fprintf(stderr, "warning: ignoring invalid SHARPGRAD_TOL=%s\n", env);
    }
    return 1e-9;
}

// value or "start:stop:count"
std::vector<double> parse_grid(const std::string& text, const char* what)
{
    auto number = [&](const std::string& s) {
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (s.empty() || !end || *end != '\0' || !std::isfinite(v))
            throw CLI::ValidationError(what, "'" + s + "' is not a number");
        return v;
    };
    const auto c1 = text.find(':');
    if (c1 == std::string::npos)
        return {number(text)};
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos)
        throw CLI::ValidationError(what, "grid must be start:stop:count");
    const double start = number(text.substr(0, c1));
    const double stop = number(text.substr(c1 + 1, c2 - c1 - 1));
    char* end = nullptr;
    const std::string cs = text.substr(c2 + 1);
    const long count = std::strtol(cs.c_str(), &end, 10);
    if (cs.empty() || !end || *end != '\0' || count < 1 || count > 1000000)
        throw CLI::ValidationError(what, "grid count must be an integer >= 1");
    std::vector<double> grid(count);
    for (long i = 0; i < count; ++i)
        grid[i] = count == 1 ? start : start + (stop - start) * i / (count - 1);
    return grid;
}

struct Options {
    int n = 3;
    int verify_n = 0;  // 0 = default dimension grid of the suite
    std::string rho = "0";
    std::string alpha = "0";
    std::string method = "representation";
    std::string suite;
    std::string format = "csv";
    double tol = 1e-9;
    int kmax = 200;
    int refinement = 1;
    int jobs = 0;
    int seed = 0;  // reserved; all methods are deterministic
};

struct Ctx {
    sg_context* p = nullptr;
    Ctx(const Options& o)
    {
        p = sg_context_create();
        if (!p)
            throw std::bad_alloc();
        sg_context_set_tolerance(p, o.tol);
        sg_context_set_refinement(p, o.refinement);
        sg_context_set_kmax(p, o.kmax);
    }
    ~Ctx() { sg_context_destroy(p); }
    Ctx(const Ctx&) = delete;
    Ctx& operator=(const Ctx&) = delete;
};

int method_code(const std::string& m)
{
    if (m == "representation")
        return SG_METHOD_REPRESENTATION;
    if (m == "oracle-direct")
        return SG_METHOD_ORACLE_DIRECT;
    if (m == "oracle-moebius")
        return SG_METHOD_ORACLE_MOEBIUS;
    if (m == "closed3")
        return SG_METHOD_CLOSED3;
    return -1;
}

void run_indexed(int count, int jobs, const std::function<void(int)>& body)
{
    if (jobs <= 0) {
        jobs = static_cast<int>(std::thread::hardware_concurrency());
        if (jobs <= 0)
            jobs = 1;
    }
    jobs = std::min(jobs, count);
    if (jobs <= 1) {
        for (int i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                body(i);
        });
    for (auto& th : pool)
        th.join();
}

std::string num17(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---- constant --------------------------------------------------------------

struct ConstantRow {
    double rho = 0.0, alpha = 0.0;
    sg_estimate est{};
    int err = SG_OK;
};

int run_constant(const Options& opt)
{
    const int method = method_code(opt.method);
    const std::vector<double> rhos = parse_grid(opt.rho, "--rho");
    const std::vector<double> alphas = parse_grid(opt.alpha, "--alpha");

    for (double r : rhos)
        if (!(r >= 0.0 && r < 1.0)) {
            std::fprintf(stderr, "error: rho=%g outside [0, 1)\n", r);
            return exit_usage;
        }
    if (opt.n < 3) {
        std::fprintf(stderr, "error: need n >= 3\n");
        return exit_usage;
    }
    if (method == SG_METHOD_CLOSED3)
        for (double a : alphas)
            if (opt.n != 3 || a != 0.0) {
                std::fprintf(stderr, "error: closed3 requires n=3 and alpha=0\n");
                return exit_usage;
            }

    const Ctx ctx(opt);
    std::vector<ConstantRow> rows(rhos.size() * alphas.size());
    run_indexed(static_cast<int>(rows.size()), opt.jobs, [&](int i) {
        ConstantRow& row = rows[i];
        row.rho = rhos[i / alphas.size()];
        row.alpha = alphas[i % alphas.size()];
        row.err = sg_constant(ctx.p, opt.n, row.rho, row.alpha, method, &row.est);
        if (row.err != SG_OK) {
            row.est.value = std::numeric_limits<double>::quiet_NaN();
            row.est.error_bound = std::numeric_limits<double>::quiet_NaN();
            row.est.converged = 0;
        }
    });

    if (opt.format == "csv") {
        std::printf("# sharpgrad %s constant n=%d method=%s tol=%g refinement=%d "
                    "rho=%s alpha=%s\n",
                    sg_version(), opt.n, opt.method.c_str(), opt.tol, opt.refinement,
                    opt.rho.c_str(), opt.alpha.c_str());
        std::printf("n,rho,alpha,method,value,error_bound,converged\n");
        for (const auto& row : rows)
            std::printf("%d,%s,%s,%s,%s,%s,%d\n", opt.n, num17(row.rho).c_str(),
                        num17(row.alpha).c_str(), opt.method.c_str(),
                        num17(row.est.value).c_str(), num17(row.est.error_bound).c_str(),
                        row.est.converged);
    } else {
        ordered_json arr = ordered_json::array();
        for (const auto& row : rows)
            arr.push_back({{"n", opt.n},
                           {"rho", row.rho},
                           {"alpha", row.alpha},
                           {"method", opt.method},
                           {"value", row.est.value},
                           {"error_bound", row.est.error_bound},
                           {"converged", row.est.converged != 0}});
        std::printf("%s\n", arr.dump(2).c_str());
    }

    int rc = exit_ok;
    for (const auto& row : rows) {
        if (row.err != SG_OK) {
            std::fprintf(stderr, "error: rho=%g alpha=%g: %s\n", row.rho, row.alpha,
                         sg_error_message(row.err));
            rc = exit_failure;
        } else if (!row.est.converged) {
            std::fprintf(stderr, "warning: rho=%g alpha=%g did not converge\n", row.rho,
                         row.alpha);
            rc = exit_failure;
        }
    }
    return rc;
}

// ---- scan ------------------------------------------------------------------

struct ScanRow {
    double rho = 0.0, alpha = 0.0;
    double c = 0.0, majorant = 0.0, gap = 0.0;
    int err = SG_OK;
};

int run_scan(const Options& opt)
{
    const std::vector<double> rhos = parse_grid(opt.rho, "--rho");
    const std::vector<double> alphas = parse_grid(opt.alpha, "--alpha");
    for (double r : rhos)
        if (!(r >= 0.0 && r <= 0.99)) {
            std::fprintf(stderr, "error: scan needs rho in [0, 0.99], got %g\n", r);
            return exit_usage;
        }
    if (opt.n < 3) {
        std::fprintf(stderr, "error: need n >= 3\n");
        return exit_usage;
    }

    const Ctx ctx(opt);
    std::vector<ScanRow> rows(rhos.size() * alphas.size());
    run_indexed(static_cast<int>(rows.size()), opt.jobs, [&](int i) {
        ScanRow& row = rows[i];
        row.rho = rhos[i / alphas.size()];
        row.alpha = alphas[i % alphas.size()];
        sg_estimate est{};
        row.err = sg_constant(ctx.p, opt.n, row.rho, row.alpha,
                              SG_METHOD_REPRESENTATION, &est);
        if (row.err == SG_OK)
            row.err = sg_majorant_scaled(ctx.p, opt.n, row.rho, row.alpha, &row.majorant);
        row.c = est.value;
        row.gap = row.majorant - row.c;
    });

    if (opt.format == "csv") {
        std::printf("# sharpgrad %s scan n=%d tol=%g rho=%s alpha=%s\n", sg_version(),
                    opt.n, opt.tol, opt.rho.c_str(), opt.alpha.c_str());
        std::printf("rho,alpha,n,C,majorant_scaled,gap\n");
        for (const auto& row : rows)
            std::printf("%s,%s,%d,%s,%s,%s\n", num17(row.rho).c_str(),
                        num17(row.alpha).c_str(), opt.n, num17(row.c).c_str(),
                        num17(row.majorant).c_str(), num17(row.gap).c_str());
    } else {
        ordered_json arr = ordered_json::array();
        for (const auto& row : rows)
            arr.push_back({{"rho", row.rho},
                           {"alpha", row.alpha},
                           {"n", opt.n},
                           {"C", row.c},
                           {"majorant_scaled", row.majorant},
                           {"gap", row.gap}});
        std::printf("%s\n", arr.dump(2).c_str());
    }

    int rc = exit_ok;
    for (const auto& row : rows) {
        if (row.err != SG_OK) {
            std::fprintf(stderr, "error: rho=%g alpha=%g: %s\n", row.rho, row.alpha,
                         sg_error_message(row.err));
            rc = exit_failure;
        } else if (row.gap < -opt.tol) {
            std::fprintf(stderr, "error: majorant violated at rho=%g alpha=%g (gap %g)\n",
                         row.rho, row.alpha, row.gap);
            rc = exit_failure;
        }
    }
    return rc;
}

// ---- verify ----------------------------------------------------------------

int run_verify(const Options& opt)
{
    const Ctx ctx(opt);
    sg_report* rep = nullptr;
    const int err = sg_verify(ctx.p, opt.suite.c_str(), opt.verify_n, &rep);
    if (err == SG_ERR_UNKNOWN_SUITE) {
        std::fprintf(stderr, "error: unknown suite '%s'\n", opt.suite.c_str());
        return exit_usage;
    }
    if (err != SG_OK) {
        std::fprintf(stderr, "error: %s\n", sg_error_message(err));
        return err == SG_ERR_DOMAIN || err == SG_ERR_INVALID ? exit_usage : exit_failure;
    }

    const int count = sg_report_count(rep);
    ordered_json cases = ordered_json::array();
    for (int i = 0; i < count; ++i) {
        double lhs, rhs, gap, tol;
        int passed;
        sg_report_case(rep, i, &lhs, &rhs, &gap, &tol, &passed);
        cases.push_back({{"name", sg_report_case_name(rep, i)},
                         {"lhs", lhs},
                         {"rhs", rhs},
                         {"gap", gap},
                         {"tol", tol},
                         {"passed", passed != 0}});
        if (!passed)
            std::fprintf(stderr, "failed: %s (lhs=%.17g rhs=%.17g gap=%.3g)\n",
                         sg_report_case_name(rep, i), lhs, rhs, gap);
    }
    const bool all_passed = sg_report_passed(rep) != 0;
    ordered_json doc{{"suite", opt.suite},
                     {"version", sg_version()},
                     {"count", count},
                     {"passed", all_passed},
                     {"cases", std::move(cases)}};
    std::printf("%s\n", doc.dump(2).c_str());
    sg_report_destroy(rep);
    return all_passed ? exit_ok : exit_failure;
}

} // namespace

int main(int argc, char** argv)
{
    Options opt;
    opt.tol = default_tol();

    CLI::App app{"Sharp gradient constants for bounded harmonic functions on the "
                 "unit ball, with verification suites for every identity behind them"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* cmd, bool with_method) {
        cmd->add_option("--n", opt.n, "dimension (>= 3)")->capture_default_str();
        cmd->add_option("--rho", opt.rho, "radius: value or start:stop:count")
            ->capture_default_str();
        cmd->add_option("--alpha", opt.alpha,
                        "direction angle in radians: value or start:stop:count")
            ->capture_default_str();
        if (with_method)
            cmd->add_option("--method", opt.method,
                            "representation | oracle-direct | oracle-moebius | closed3")
                ->capture_default_str()
                ->check(CLI::IsMember(
                    {"representation", "oracle-direct", "oracle-moebius", "closed3"}));
        cmd->add_option("--tol", opt.tol, "tolerance (env SHARPGRAD_TOL overrides default)")
            ->capture_default_str();
        cmd->add_option("--kmax", opt.kmax, "series term cap")->capture_default_str();
        cmd->add_option("--refinement", opt.refinement, "sphere cubature refinement")
            ->capture_default_str();
        cmd->add_option("--format", opt.format, "csv | json")
            ->capture_default_str()
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--jobs", opt.jobs, "worker threads (0 = hardware)")
            ->capture_default_str();
        cmd->add_option("--seed", opt.seed, "reserved (all methods deterministic)");
    };

    CLI::App* cmd_constant =
        app.add_subcommand("constant", "directional constant C(rho e1, l_alpha)");
    add_common(cmd_constant, true);

    CLI::App* cmd_scan =
        app.add_subcommand("scan", "constant vs scaled majorant over a grid");
    add_common(cmd_scan, false);

    CLI::App* cmd_verify = app.add_subcommand("verify", "run a verification suite");
    cmd_verify->add_option("--suite", opt.suite,
                           "lemma1..lemma7 | chain | all")->required();
    cmd_verify->add_option("--n", opt.verify_n, "restrict dimension grid (0 = default)");
    cmd_verify->add_option("--tol", opt.tol, "pass tolerance")->capture_default_str();
    cmd_verify->add_option("--kmax", opt.kmax, "series term cap")->capture_default_str();
    cmd_verify->add_option("--refinement", opt.refinement, "sphere cubature refinement");
    cmd_verify->add_option("--seed", opt.seed, "reserved");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        if (cmd_constant->parsed())
            return run_constant(opt);
        if (cmd_scan->parsed())
            return run_scan(opt);
        if (cmd_verify->parsed())
            return run_verify(opt);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_usage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_failure;
    }
    return exit_usage;
}

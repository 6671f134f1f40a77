#include "doctest.h"

#include <cmath>
#include <cstring>
#include <string>

#include "sharpgrad.h"

namespace {

struct Ctx {
    sg_context* p = sg_context_create();
    ~Ctx() { sg_context_destroy(p); }
    operator sg_context*() const { return p; }
};

struct Report {
    sg_report* p = nullptr;
    ~Report() { sg_report_destroy(p); }
};

} // namespace

TEST_CASE("version and error messages")
{
    CHECK(sg_version() != nullptr);
    CHECK(std::strlen(sg_version()) > 0);
    for (int code = 0; code <= 5; ++code) {
        CHECK(sg_error_message(code) != nullptr);
        CHECK(std::strlen(sg_error_message(code)) > 0);
    }
    CHECK(sg_error_message(99) != nullptr);
    CHECK(std::string(sg_error_message(SG_OK)) != sg_error_message(SG_ERR_DOMAIN));
}

TEST_CASE("context settings validation")
{
    Ctx ctx;
    CHECK(sg_context_set_tolerance(ctx, 1e-8) == SG_OK);
    CHECK(sg_context_set_tolerance(ctx, 0.0) == SG_ERR_INVALID);
    CHECK(sg_context_set_tolerance(ctx, -1.0) == SG_ERR_INVALID);
    CHECK(sg_context_set_tolerance(nullptr, 1e-8) == SG_ERR_INVALID);
    CHECK(sg_context_set_refinement(ctx, 2) == SG_OK);
    CHECK(sg_context_set_refinement(ctx, 0) == SG_ERR_INVALID);
    CHECK(sg_context_set_refinement(ctx, 65) == SG_ERR_INVALID);
    CHECK(sg_context_set_kmax(ctx, 500) == SG_OK);
    CHECK(sg_context_set_kmax(ctx, 1) == SG_ERR_INVALID);
    CHECK(sg_context_set_kmax(ctx, 100001) == SG_ERR_INVALID);
    sg_context_destroy(nullptr);  // must be a no-op
}

TEST_CASE("constant evaluation across methods")
{
    Ctx ctx;
    const double expect = 2.01370177623549456859;
    sg_estimate est[4];
    for (int m = 0; m < 4; ++m) {
        CHECK(sg_constant(ctx, 3, 0.5, 0.0, m, &est[m]) == SG_OK);
        CHECK(est[m].converged == 1);
        CHECK(std::fabs(est[m].value - expect) <= 1e-9 * expect);
    }
    for (int m = 1; m < 4; ++m)
        CHECK(std::fabs(est[m].value - est[0].value) <= 1e-9 * expect);
}

TEST_CASE("constant evaluation error paths")
{
    Ctx ctx;
    sg_estimate est;
    CHECK(sg_constant(nullptr, 3, 0.5, 0.0, SG_METHOD_REPRESENTATION, &est) ==
          SG_ERR_INVALID);
    CHECK(sg_constant(ctx, 3, 0.5, 0.0, SG_METHOD_REPRESENTATION, nullptr) ==
          SG_ERR_INVALID);
    CHECK(sg_constant(ctx, 2, 0.5, 0.0, SG_METHOD_REPRESENTATION, &est) == SG_ERR_DOMAIN);
    CHECK(sg_constant(ctx, 3, 1.0, 0.0, SG_METHOD_REPRESENTATION, &est) == SG_ERR_DOMAIN);
    CHECK(sg_constant(ctx, 3, -0.5, 0.0, SG_METHOD_REPRESENTATION, &est) == SG_ERR_DOMAIN);
    CHECK(sg_constant(ctx, 4, 0.5, 0.0, SG_METHOD_CLOSED3, &est) == SG_ERR_DOMAIN);
    CHECK(sg_constant(ctx, 3, 0.5, 0.2, SG_METHOD_CLOSED3, &est) == SG_ERR_DOMAIN);
    CHECK(sg_constant(ctx, 3, 0.5, 0.0, 7, &est) == SG_ERR_INVALID);
}

TEST_CASE("constant evaluation is deterministic")
{
    Ctx ctx;
    sg_estimate a, b;
    REQUIRE(sg_constant(ctx, 5, 0.7, 0.9, SG_METHOD_ORACLE_DIRECT, &a) == SG_OK);
    REQUIRE(sg_constant(ctx, 5, 0.7, 0.9, SG_METHOD_ORACLE_DIRECT, &b) == SG_OK);
    CHECK(std::memcmp(&a.value, &b.value, sizeof a.value) == 0);
    CHECK(std::memcmp(&a.error_bound, &b.error_bound, sizeof a.error_bound) == 0);
}

TEST_CASE("gradient constant and closed-form anchors")
{
    Ctx ctx;
    sg_estimate est;
    double argmax = -1.0;
    REQUIRE(sg_gradient_constant(ctx, 3, 0.5, &est, &argmax) == SG_OK);
    CHECK(std::fabs(est.value - 2.01370177623549456859) <= 1e-6 * est.value);
    CHECK(std::fabs(argmax) <= 1e-4);
    REQUIRE(sg_gradient_constant(ctx, 3, 0.3, &est, nullptr) == SG_OK);

    double v = 0.0;
    CHECK(sg_radial_constant_closed3(0.5, &v) == SG_OK);
    CHECK(v == doctest::Approx(2.01370177623549456859).epsilon(1e-15));
    CHECK(sg_radial_constant_closed3(1.2, &v) == SG_ERR_DOMAIN);
    CHECK(sg_radial_constant_closed3(0.5, nullptr) == SG_ERR_INVALID);

    CHECK(sg_center_constant(3, &v) == SG_OK);
    CHECK(v == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(sg_center_constant(4, &v) == SG_OK);
    CHECK(v == doctest::Approx(1.6976527263135502482).epsilon(1e-14));
    CHECK(sg_halfspace_constant(3, &v) == SG_OK);
    CHECK(v == doctest::Approx(0.769800358919501019346).epsilon(1e-14));
}

TEST_CASE("majorant dominates the constant through the C interface")
{
    Ctx ctx;
    for (double alpha : {0.0, 0.7, 1.4}) {
        double maj = 0.0;
        sg_estimate est;
        REQUIRE(sg_majorant_scaled(ctx, 3, 0.6, alpha, &maj) == SG_OK);
        REQUIRE(sg_constant(ctx, 3, 0.6, alpha, SG_METHOD_REPRESENTATION, &est) == SG_OK);
        CHECK(maj >= est.value - 1e-9 * est.value);
    }
}

TEST_CASE("verification suites through the C interface")
{
    Ctx ctx;
    Report rep;
    REQUIRE(sg_verify(ctx, "lemma5", 0, &rep.p) == SG_OK);
    const int count = sg_report_count(rep.p);
    CHECK(count > 0);
    CHECK(sg_report_passed(rep.p) == 1);
    for (int i = 0; i < count; ++i) {
        CHECK(sg_report_case_name(rep.p, i) != nullptr);
        double lhs = 0, rhs = 0, gap = 0, tol = 0;
        int passed = 0;
        CHECK(sg_report_case(rep.p, i, &lhs, &rhs, &gap, &tol, &passed) == SG_OK);
        CHECK(passed == 1);
        CHECK(gap <= tol);
        CHECK(std::isfinite(lhs));
    }
    // null out-params are allowed individually
    CHECK(sg_report_case(rep.p, 0, nullptr, nullptr, nullptr, nullptr, nullptr) == SG_OK);
    CHECK(sg_report_case(rep.p, count, nullptr, nullptr, nullptr, nullptr, nullptr) ==
          SG_ERR_INVALID);
    CHECK(sg_report_case_name(rep.p, -1) == nullptr);
}

TEST_CASE("verification suite dimension filter")
{
    Ctx ctx;
    Report rep;
    REQUIRE(sg_verify(ctx, "lemma3", 4, &rep.p) == SG_OK);
    CHECK(sg_report_passed(rep.p) == 1);
    for (int i = 0; i < sg_report_count(rep.p); ++i) {
        const std::string name = sg_report_case_name(rep.p, i);
        CHECK(name.find("n=4") != std::string::npos);
    }
}

TEST_CASE("verification suite error paths")
{
    Ctx ctx;
    sg_report* out = nullptr;
    CHECK(sg_verify(ctx, "nosuchsuite", 0, &out) == SG_ERR_UNKNOWN_SUITE);
    CHECK(out == nullptr);
    CHECK(sg_verify(ctx, nullptr, 0, &out) == SG_ERR_INVALID);
    CHECK(sg_verify(nullptr, "lemma5", 0, &out) == SG_ERR_INVALID);
    sg_report_destroy(nullptr);  // must be a no-op
    CHECK(sg_report_count(nullptr) == 0);
    CHECK(sg_report_passed(nullptr) == 0);
}

TEST_CASE("lemma7 suite passes with a restricted series cap")
{
    Ctx ctx;
    REQUIRE(sg_context_set_kmax(ctx, 3000) == SG_OK);
    Report rep;
    REQUIRE(sg_verify(ctx, "lemma7", 0, &rep.p) == SG_OK);
    CHECK(sg_report_passed(rep.p) == 1);
}

#include "oracles.hpp"
#include "rescon/error.hpp"
#include "rescon/nussbaum.hpp"
#include "rescon/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace rescon;

namespace {

NussbaumSpec sine_unit() { return {1.0, 0.0, 1.0, 1.0, TrigKind::sine}; }

}  // namespace

TEST_CASE("spec validation") {
    CHECK_NOTHROW(slow_growth_nussbaum().validate());
    CHECK_NOTHROW(classic_nussbaum().validate());
    CHECK_THROWS_AS((NussbaumSpec{0.0, 0.0, 1.0, 1.0, TrigKind::sine}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((NussbaumSpec{1.0, -1.0, 1.0, 1.0, TrigKind::sine}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((NussbaumSpec{1.0, 0.0, 0.5, 1.0, TrigKind::sine}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((NussbaumSpec{1.0, 0.0, 1.2, 1.0, TrigKind::sine}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((NussbaumSpec{1.0, 0.0, 1.0, 0.0, TrigKind::sine}.validate()), std::invalid_argument);
}

TEST_CASE("evaluation examples") {
    NussbaumSpec cos0 = sine_unit();
    cos0.variant = TrigKind::cosine;
    CHECK(eval(cos0, 0.0) == 1.0);
    CHECK(eval(sine_unit(), M_PI / 2) == doctest::Approx(std::exp(M_PI * M_PI / 4)).epsilon(1e-14));
    CHECK(eval(sine_unit(), M_PI / 2) == doctest::Approx(11.79176).epsilon(1e-6));
    // Direct evaluation of exp(0.9 * 0.001^0.7) * cos(0)
    const double expected = std::exp(0.9 * std::pow(0.001, 0.7));
    CHECK(eval(slow_growth_nussbaum(), 0.0) == doctest::Approx(expected).epsilon(1e-15));
    CHECK(eval(slow_growth_nussbaum(), 0.0) == doctest::Approx(1.00717).epsilon(1e-5));
}

TEST_CASE("overflow is reported") {
    CHECK_THROWS_AS(eval(sine_unit(), 30.0), OverflowError);
    CHECK_THROWS_AS(eval_derivative(sine_unit(), 30.0), OverflowError);
    CHECK_NOTHROW(eval(sine_unit(), 26.0));
}

TEST_CASE("derivative examples and finite-difference agreement") {
    NussbaumSpec s = sine_unit();
    s.omega = 0.7;
    CHECK(eval_derivative(s, 0.0) == doctest::Approx(0.7));
    NussbaumSpec c = s;
    c.variant = TrigKind::cosine;
    CHECK(eval_derivative(c, 0.0) == 0.0);

    for (const NussbaumSpec& spec : {slow_growth_nussbaum(), classic_nussbaum(), sine_unit(),
                                     NussbaumSpec{0.5, 0.2, 0.6, 1.3, TrigKind::sine}}) {
        for (double nu : {0.3, 1.7, -2.4}) {
            const double fd = oracle::central_difference([&](double v) { return eval(spec, v); }, nu);
            CHECK(oracle::close_rel(eval_derivative(spec, nu), fd, 1e-6, 1e-8));
        }
    }
}

TEST_CASE("sine variant is odd") {
    for (const NussbaumSpec& spec : {sine_unit(), NussbaumSpec{0.9, 0.001, 0.7, 0.4, TrigKind::sine}})
        for (double nu : {0.1, 0.9, 2.5, 4.0}) CHECK(eval(spec, -nu) == -eval(spec, nu));
}

TEST_CASE("lobe layout") {
    const Lobe s1 = lobe(1.0, TrigKind::sine, 1);
    CHECK(s1.lo == 0.0);
    CHECK(s1.hi == doctest::Approx(M_PI));
    CHECK(s1.sign == 1);
    const Lobe s2 = lobe(1.0, TrigKind::sine, 2);
    CHECK(s2.lo == doctest::Approx(M_PI));
    CHECK(s2.sign == -1);
    const Lobe c1 = lobe(0.4, TrigKind::cosine, 1);
    CHECK(c1.hi == doctest::Approx(M_PI / 0.8));
    const Lobe c2 = lobe(0.4, TrigKind::cosine, 2);
    CHECK(c2.hi - c2.lo == doctest::Approx(M_PI / 0.4));
    CHECK(c2.sign == -1);
}

TEST_CASE("half-period integrals") {
    const NussbaumSpec spec = sine_unit();
    CHECK(half_period_integral(spec, 1) > 0);
    CHECK(half_period_integral(spec, 2) < 0);
    // Oracle: plain fine-grid trapezoid on the first window.
    double trap = 0;
    const int n = 200000;
    const double h = M_PI / n;
    for (int k = 0; k <= n; ++k) trap += (k == 0 || k == n ? 0.5 : 1.0) * eval(spec, k * h);
    trap *= h;
    CHECK(half_period_integral(spec, 1) == doctest::Approx(trap).epsilon(1e-8));

    for (const NussbaumSpec& s : {slow_growth_nussbaum(), NussbaumSpec{0.5, 0.2, 0.6, 1.3, TrigKind::sine}}) {
        for (int i = 1; i + 2 <= 8; ++i) {
            const LogMagnitude a = lobe_integral_log(s, i);
            const LogMagnitude b = lobe_integral_log(s, i + 2);
            CHECK(a.sign == (i % 2 == 1 ? 1 : -1));
            CHECK(b.log_abs > a.log_abs);
        }
    }
}

TEST_CASE("log magnitude agrees with the direct integral where representable") {
    const NussbaumSpec s = slow_growth_nussbaum();
    for (int i = 1; i <= 4; ++i) {
        const double direct = half_period_integral(s, i);
        const LogMagnitude lm = lobe_integral_log(s, i);
        CHECK(lm.sign * std::exp(lm.log_abs) == doctest::Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("certifier verdicts") {
    const RatioReport slow = certify_nfunction(slow_growth_nussbaum(), 12);
    CHECK(slow.verdict == Verdict::pass);
    CHECK(slow.domination_holds());
    CHECK(slow.rows.size() == 12);
    CHECK(slow.rows.back().ratio1 < kCertifyRatioThreshold);
    CHECK(slow.rows.back().ratio2 < kCertifyRatioThreshold);

    const RatioReport classic = certify_nfunction(classic_nussbaum(), 12);
    CHECK(classic.verdict == Verdict::pass);
    CHECK(classic.domination_holds());

    RawFunction universal{[](double nu) { return nu * nu * std::sin(nu); }, 1.0, TrigKind::sine, "nu^2 sin nu"};
    const RatioReport bad = certify_nfunction(universal, 12);
    CHECK(bad.verdict == Verdict::fail);
    CHECK(bad.rows.back().ratio1 > 0.5);

    CHECK_THROWS(certify_nfunction(slow_growth_nussbaum(), 2));
}

TEST_CASE("report sums are monotone") {
    const RatioReport r = certify_nfunction(NussbaumSpec{0.5, 0.2, 0.6, 1.3, TrigKind::sine}, 10);
    for (std::size_t k = 1; k < r.rows.size(); ++k) {
        CHECK(r.rows[k].log_sp > r.rows[k - 1].log_sp);
        CHECK(r.rows[k].log_neg_sn > r.rows[k - 1].log_neg_sn);
    }
    CHECK(r.domination_holds());
}

TEST_CASE("raw overflow truncates the report") {
    RawFunction fast{[](double nu) { return std::exp(nu * nu) * std::sin(nu); }, 1.0, TrigKind::sine, "fast"};
    const RatioReport r = certify_nfunction(fast, 12);
    CHECK(r.truncated);
    CHECK(r.rows.size() >= 3);
    RawFunction faster{[](double nu) { return std::exp(std::exp(nu)) * std::sin(nu); }, 1.0, TrigKind::sine, "x"};
    CHECK_THROWS_AS(certify_nfunction(faster, 12), OverflowError);
}

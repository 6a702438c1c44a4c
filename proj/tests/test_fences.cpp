#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include <boxfence/fences.hpp>
#include <boxfence/normal.hpp>

using namespace boxfence;

namespace {

QuartileSummary summary(double q1, double q3, std::size_t n) {
    QuartileSummary q;
    q.q1 = q1;
    q.median = 0.5 * (q1 + q3);
    q.q3 = q3;
    q.iqr = q3 - q1;
    q.n = n;
    return q;
}

// Independent inversion of the coefficient definition: bisect normal_cdf
// for the z with Phi(z) = 1 - 0.25/n, then rescale. Shares only the CDF
// with the implementation under test.
double k_by_bisection(std::size_t n) {
    const double target = 1.0 - 0.25 / static_cast<double>(n);
    double lo = 0.0, hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (normal_cdf(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi) / 1.35 - 0.5;
}

// Population quartile of the standard normal.
constexpr double kPopQ3 = 0.67448975019608174;

} // namespace

TEST_CASE("tukey_fences hand example and validation") {
    const auto q = summary(1.0, 3.0, 20);
    const FenceSpec f = tukey_fences(q, 1.5);
    CHECK(f.method == Method::Tukey);
    CHECK(f.lower == -2.0);
    CHECK(f.upper == 6.0);
    REQUIRE(f.coefficient.has_value());
    CHECK(*f.coefficient == 1.5);
    CHECK_FALSE(f.alpha.has_value());

    CHECK(tukey_fences(q).lower == -2.0); // k defaults to 1.5
    const FenceSpec wide = tukey_fences(q, 3.0);
    CHECK(wide.lower == -5.0);
    CHECK(wide.upper == 9.0);

    CHECK_THROWS_AS(tukey_fences(q, 0.0), std::domain_error);
    CHECK_THROWS_AS(tukey_fences(q, -1.5), std::domain_error);
    CHECK_THROWS_AS(tukey_fences(q, std::nan("")), std::domain_error);
    CHECK_THROWS_AS(tukey_fences(q, INFINITY), std::domain_error);
}

TEST_CASE("chauvenet_k matches frozen references") {
    const struct {
        std::size_t n;
        double k;
    } cases[] = {
        {2, 0.35211065213037643},   {3, 0.52444009414862101},
        {4, 0.63638558840929356},   {5, 0.71841009403812794},
        {20, 1.160298316744404},    {50, 1.4080217063325191},
        {100, 1.5792842728472623},  {1000, 2.0783380772934909},
        {5000, 2.3819199158615511}, {10000, 2.5041681341647416},
        {50000, 2.7719803062733497},
    };
    for (const auto& c : cases) {
        INFO("n = " << c.n);
        CHECK_THAT(chauvenet_k(c.n), Catch::Matchers::WithinAbs(c.k, 1e-12));
    }
    CHECK_THROWS_AS(chauvenet_k(0), std::domain_error);
}

TEST_CASE("chauvenet_k agrees with a bisection oracle") {
    for (std::size_t n : {5ul, 50ul, 500ul, 5000ul, 50000ul, 1000000ul}) {
        INFO("n = " << n);
        CHECK_THAT(chauvenet_k(n), Catch::Matchers::WithinAbs(k_by_bisection(n), 1e-4));
    }
}

TEST_CASE("chauvenet_k grows strictly with n and crosses 1.5 at n = 73") {
    double prev = chauvenet_k(1);
    for (std::size_t n = 2; n <= 200; ++n) {
        const double cur = chauvenet_k(n);
        REQUIRE(cur > prev);
        prev = cur;
    }
    for (std::size_t n = 400; n <= 102400; n *= 2) {
        const double cur = chauvenet_k(n);
        REQUIRE(cur > prev);
        prev = cur;
    }
    // Below this sample size the adaptive fence is tighter than Tukey's,
    // above it wider.
    CHECK(chauvenet_k(72) < 1.5);
    CHECK(chauvenet_k(73) > 1.5);
}

TEST_CASE("chauvenet_fences compose the coefficient with the quartiles") {
    const auto q = summary(1.0, 3.0, 50);
    const FenceSpec f = chauvenet_fences(q);
    CHECK(f.method == Method::Chauvenet);
    CHECK_THAT(f.lower, Catch::Matchers::WithinAbs(-1.8160434126650381, 1e-9));
    CHECK_THAT(f.upper, Catch::Matchers::WithinAbs(5.8160434126650381, 1e-9));
    REQUIRE(f.coefficient.has_value());
    CHECK_THAT(*f.coefficient, Catch::Matchers::WithinAbs(1.4080217063325191, 1e-12));

    // Same quartiles, larger sample: wider fences.
    const FenceSpec g = chauvenet_fences(summary(1.0, 3.0, 50000));
    CHECK(g.upper > f.upper);
    CHECK(g.lower < f.lower);
}

TEST_CASE("population-quartile calibration of the fence rules") {
    // With the true normal quartiles, the Tukey fence sits at ~2.698 sigma,
    // for an outside rate of ~0.70% per observation regardless of n.
    const auto pop = summary(-kPopQ3, kPopQ3, 10000);
    const FenceSpec t = tukey_fences(pop, 1.5);
    CHECK_THAT(t.upper, Catch::Matchers::WithinAbs(2.6979590007843270, 1e-9));
    const double tukey_rate = 2.0 * (1.0 - normal_cdf(t.upper));
    CHECK_THAT(tukey_rate, Catch::Matchers::WithinAbs(0.0069766, 2e-6));

    // The adaptive fence at n = 50000 instead reaches ~4.41 sigma.
    const FenceSpec c = chauvenet_fences(summary(-kPopQ3, kPopQ3, 50000));
    CHECK_THAT(c.upper, Catch::Matchers::WithinAbs(4.4138343587111272, 1e-8));

    // Calibration identity: n times the outside rate stays near 0.5 across
    // sample sizes (the fence is built to leave half an expected
    // observation outside).
    for (std::size_t n : {100ul, 1000ul, 10000ul, 1000000ul}) {
        const FenceSpec f = chauvenet_fences(summary(-kPopQ3, kPopQ3, n));
        const double rate = 2.0 * (1.0 - normal_cdf(f.upper));
        const double expected_outside = rate * static_cast<double>(n);
        INFO("n = " << n << " expected outside = " << expected_outside);
        CHECK(expected_outside > 0.5 * 0.95);
        CHECK(expected_outside < 0.5 * 1.05);
    }
}

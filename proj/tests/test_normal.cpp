#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <stdexcept>

#include <boxfence/normal.hpp>

using boxfence::normal_cdf;
using boxfence::normal_quantile;

// Reference values computed with 50-digit arithmetic (erfc and root finding
// on log Phi for the tails).

TEST_CASE("normal_cdf matches high-precision reference values") {
    CHECK(normal_cdf(0.0) == 0.5);
    CHECK_THAT(normal_cdf(0.5), Catch::Matchers::WithinAbs(0.6914624612740131, 1e-14));
    CHECK_THAT(normal_cdf(1.0), Catch::Matchers::WithinAbs(0.84134474606854295, 1e-14));
    CHECK_THAT(normal_cdf(2.0), Catch::Matchers::WithinAbs(0.97724986805182079, 1e-14));
    CHECK_THAT(normal_cdf(-3.0), Catch::Matchers::WithinAbs(0.0013498980316300945, 1e-15));
    CHECK_THAT(normal_cdf(1.959964), Catch::Matchers::WithinAbs(0.9750000009035576, 1e-14));
    CHECK_THAT(normal_cdf(8.0), Catch::Matchers::WithinAbs(0.99999999999999938, 1e-15));
}

TEST_CASE("normal_cdf keeps relative accuracy in the lower tail") {
    CHECK_THAT(normal_cdf(-5.0), Catch::Matchers::WithinRel(2.8665157187919391e-7, 1e-12));
    CHECK_THAT(normal_cdf(-10.0), Catch::Matchers::WithinRel(7.6198530241605261e-24, 1e-12));
    CHECK_THAT(normal_cdf(-37.0), Catch::Matchers::WithinRel(5.7255712225245768e-300, 1e-11));
}

TEST_CASE("normal_cdf symmetry and monotonicity") {
    for (double z = -8.0; z <= 8.0; z += 0.37)
        CHECK_THAT(normal_cdf(z) + normal_cdf(-z), Catch::Matchers::WithinAbs(1.0, 1e-15));
    // Strict growth holds until the CDF saturates at 1.0, around z = 8.3 in
    // double precision.
    double prev = normal_cdf(-20.0);
    for (double z = -19.5; z <= 20.0; z += 0.5) {
        const double cur = normal_cdf(z);
        if (cur < 1.0)
            CHECK(cur > prev);
        else
            CHECK(cur >= prev);
        prev = cur;
    }
    CHECK_THROWS_AS(normal_cdf(std::nan("")), std::domain_error);
}

TEST_CASE("normal_quantile matches high-precision reference values") {
    CHECK(normal_quantile(0.5) == 0.0);
    const struct {
        double p, x;
    } cases[] = {
        {0.0013498980316301, -2.9999999999999988},
        {0.3, -0.52440051270804078},
        {0.7, 0.52440051270804078},
        {0.75, 0.67448975019608174},
        {0.975, 1.9599639845400542},
        {0.9875, 2.2414027276049454},
        {0.995, 2.5758293035489008},
        {0.999995, 4.4171734134690221},
        {1e-10, -6.3613409024040562},
        // 0.9999999999 is not representable; the nearest double carries a
        // tail of 1.0000000827e-10, and this is that double's quantile.
        {0.9999999999, 6.3613408896974219},
        {1e-20, -9.2623400897984076},
    };
    for (const auto& c : cases) {
        INFO("p = " << c.p);
        // 1e-9 is the accuracy contract; the implementation does far better.
        CHECK_THAT(normal_quantile(c.p), Catch::Matchers::WithinAbs(c.x, 1e-9));
        CHECK_THAT(normal_quantile(c.p), Catch::Matchers::WithinRel(c.x, 1e-12));
    }
}

TEST_CASE("normal_quantile handles extreme tails") {
    // Reference values are for the exact double inputs.
    CHECK_THAT(normal_quantile(1e-300), Catch::Matchers::WithinRel(-37.047096299361199, 1e-12));
    CHECK_THAT(normal_quantile(0.9999999999999999),
               Catch::Matchers::WithinRel(8.2095361516013869, 1e-12));
    // Exact reflection: 1 - p is computed without rounding for p >= 0.5.
    CHECK(normal_quantile(0.75) == -normal_quantile(0.25));
    CHECK(normal_quantile(0.9) == -normal_quantile(1.0 - 0.9));
}

TEST_CASE("normal_quantile rejects out-of-domain inputs") {
    CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
    CHECK_THROWS_AS(normal_quantile(-0.25), std::domain_error);
    CHECK_THROWS_AS(normal_quantile(1.5), std::domain_error);
    CHECK_THROWS_AS(normal_quantile(std::nan("")), std::domain_error);
}

TEST_CASE("normal_quantile round-trips through normal_cdf") {
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> unif(1e-10, 1.0 - 1e-10);
    std::uniform_real_distribution<double> logspan(std::log(1e-290), std::log(0.5));
    for (int i = 0; i < 20000; ++i) {
        const double p = unif(rng);
        const double back = normal_cdf(normal_quantile(p));
        REQUIRE_THAT(back, Catch::Matchers::WithinAbs(p, 1e-10));
    }
    // Log-spaced tail probabilities: require relative agreement, which is
    // much stronger than the absolute bound there.
    for (int i = 0; i < 5000; ++i) {
        const double p = std::exp(logspan(rng));
        const double back = normal_cdf(normal_quantile(p));
        REQUIRE_THAT(back, Catch::Matchers::WithinRel(p, 1e-9));
    }
    // z-space round trip. For positive z the CDF value sits against 1.0,
    // where doubles are 1.11e-16 apart; storing it costs up to half that
    // spacing divided by the density in recovered z.
    for (double z = -8.0; z <= 8.0; z += 0.173) {
        const double quantization = (z > 0.0) ? 1.2e-16 / boxfence::normal_pdf(z) : 0.0;
        REQUIRE_THAT(normal_quantile(normal_cdf(z)),
                     Catch::Matchers::WithinAbs(z, 1e-9 + quantization));
    }
}

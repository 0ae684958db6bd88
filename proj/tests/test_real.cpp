#include <doctest.h>

#include "markoff_teich/real.hpp"
#include "markoff_teich/tolerances.hpp"
#include "test_common.hpp"

using namespace mkt;
using mkt::testing::dec;
using mkt::testing::kPrec;

TEST_CASE("decimal parse and round trip") {
    Real x = dec("3.14159265358979323846264338327950288419716939937510");
    Real y = Real::from_decimal(x.to_decimal(), kPrec);
    CHECK(x == y);

    Real neg = dec("-0.25");
    CHECK(Real::from_decimal(neg.to_decimal(), kPrec) == neg);
    CHECK(Real(0, kPrec).to_decimal() == "0");

    CHECK_THROWS_AS(dec(""), domain_error);
    CHECK_THROWS_AS(dec("3.14abc"), domain_error);
    CHECK_THROWS_AS(dec("pi"), domain_error);
}

TEST_CASE("round trip survives many random values") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-50, 50);
    for (int i = 0; i < 200; ++i) {
        Real x = exp(Real::from_decimal(std::to_string(d(rng)), kPrec));
        if (i % 2) x = -x;
        CHECK(Real::from_decimal(x.to_decimal(), kPrec) == x);
    }
}

TEST_CASE("arithmetic and precision propagation") {
    Real a(1, 128), b(3, 256);
    Real third = a / b;
    CHECK(third.precision() == 256);
    CHECK(close_rel(third * 3, Real(1, 256), Real::pow2(-250, 256)));

    CHECK(Real(7, kPrec) - 5 == Real(2, kPrec));
    CHECK(2 - Real(7, kPrec) == Real(-5, kPrec));
    CHECK(10 / Real(4, kPrec) == dec("2.5"));
    CHECK((-Real(4, kPrec)).sign() == -1);
}

TEST_CASE("elementary functions invert each other") {
    Real x = dec("1.7320508");
    CHECK(close_rel(exp(log(x)), x, Real::pow2(-250, kPrec)));
    CHECK(close_rel(sqrt(x * x), x, Real::pow2(-250, kPrec)));
    Real s = sinh(x), c = cosh(x);
    CHECK(close_rel(c * c - s * s, Real(1, kPrec), Real::pow2(-240, kPrec)));

    CHECK_THROWS_AS(log(Real(0, kPrec)), domain_error);
    CHECK_THROWS_AS(log(Real(-1, kPrec)), domain_error);
    CHECK_THROWS_AS(sqrt(Real(-1, kPrec)), domain_error);
}

TEST_CASE("log1p keeps relative precision for tiny arguments") {
    // x = 2^-300 is below one ulp of 1 at 256 bits; log(1+x) would be 0.
    Real x = Real::pow2(-300, kPrec);
    Real y = log1p(x);
    CHECK(y.sign() > 0);
    CHECK(close_rel(y, x, Real::pow2(-200, kPrec))); // log1p(x) ~ x - x^2/2
    CHECK(log(Real(1, kPrec) + x).is_zero());
}

TEST_CASE("pow_int matches repeated multiplication") {
    Real x = dec("2.5606601717798212");
    Real p = pow_int(x, 4);
    Real m = x * x * x * x;
    CHECK(close_rel(p, m, Real::pow2(-250, kPrec)));
    CHECK(close_rel(pow_int(x, -3) * pow_int(x, 3), Real(1, kPrec), Real::pow2(-245, kPrec)));
}

TEST_CASE("accumulator keeps guard bits") {
    // Sum 2^20 copies of 2^-200: naive 256-bit running sum near 1 would
    // drop them entirely once the sum reaches O(1).
    Accumulator acc(kPrec);
    acc.add(Real(1, kPrec));
    Real tiny = Real::pow2(-280, kPrec);
    for (int i = 0; i < 1024; ++i) acc.add(tiny);
    Real expect = Real(1, kPrec) + Real::pow2(-270, kPrec); // 1024 * 2^-280
    CHECK(close_rel(acc.value(), expect, Real::pow2(-250, kPrec)));
}

TEST_CASE("tolerance ladder") {
    CHECK(eps_triple(256) == Real::pow2(-240, 256));
    CHECK(eps_id(256) == Real::pow2(-232, 256));
    CHECK(eps_oracle(256) == Real::pow2(-208, 256));
    CHECK_THROWS_AS(Real(1, 32), domain_error);
}

#include <stdexcept>

#include "doctest.h"
#include "rig/hypergeom.hpp"

using namespace rig::hypergeom;

namespace {
Rational rat(long num, long den) { return Rational(BigInt(num), BigInt(den)); }
}  // namespace

TEST_CASE("closed forms on hand-enumerable cases") {
    // all C(4,2)=6 subsets enumerated by hand
    CHECK(p_one_exact(2, 1, 4) == rat(1, 2));
    CHECK(p_hit_exact(2, 1, 4) == rat(1, 2));
    CHECK(p_two_exact(2, 1, 4) == 0);

    CHECK(p_hit_exact(2, 2, 4) == rat(5, 6));
    CHECK(p_one_exact(2, 2, 4) == rat(2, 3));
    CHECK(p_two_exact(2, 2, 4) == rat(1, 6));

    CHECK(p_one_avoid_exact(2, 1, 1, 4) == rat(1, 3));
    CHECK(p_one_hit_exact(2, 1, 1, 4) == rat(1, 6));

    // factorization route: p1(a,b,h,k) = p1(a,b,k) p(a-1,h,k-b)
    CHECK(p_one_hit_exact_factored(2, 1, 1, 4) == p_one_exact(2, 1, 4) * p_hit_exact(1, 1, 3));
    CHECK(p_one_exact(2, 1, 4) * p_hit_exact(1, 1, 3) == rat(1, 6));
}

TEST_CASE("degenerate sizes") {
    for (long k = 1; k <= 8; ++k) {
        for (long b = 0; b <= k; ++b) {
            CHECK(p_two_exact(1, b, k) == 0);  // one element cannot hit twice
            CHECK(p_hit_exact(0, b, k) == 0);
            if (b >= 1) CHECK(p_hit_exact(k, b, k) == 1);
        }
        CHECK(p_hit_exact(k, 0, k) == 0);
    }
}

TEST_CASE("empty avoid set collapses to the two-argument forms") {
    for (long k = 1; k <= 9; ++k)
        for (long a = 0; a <= k; ++a)
            for (long b = 0; b <= k; ++b) {
                CHECK(p_one_avoid_exact(a, b, 0, k) == p_one_exact(a, b, k));
                CHECK(p_one_hit_exact(a, b, 0, k) == 0);
            }
}

TEST_CASE("closed forms equal exhaustive enumeration for k <= 9") {
    for (long k = 1; k <= 9; ++k)
        for (long a = 0; a <= k; ++a)
            for (long b = 0; b <= k; ++b)
                for (long h = 0; b + h <= k; ++h) {
                    const auto e = enumerate_oracle(a, b, h, k);
                    CHECK(p_hit_exact(a, b, k) == e.hit);
                    CHECK(p_one_exact(a, b, k) == e.one);
                    CHECK(p_two_exact(a, b, k) == e.two);
                    CHECK(p_one_avoid_exact(a, b, h, k) == e.one_avoid);
                    CHECK(p_one_hit_exact(a, b, h, k) == e.one_hit);
                }
}

TEST_CASE("alternate evaluation routes agree exactly") {
    for (long k = 1; k <= 9; ++k)
        for (long a = 0; a <= k; ++a)
            for (long b = 0; b <= k; ++b) {
                CHECK(p_one_exact_falling(a, b, k) == p_one_exact(a, b, k));
                for (long h = 0; b + h <= k; ++h) {
                    CHECK(p_one_avoid_exact_factored(a, b, h, k) == p_one_avoid_exact(a, b, h, k));
                    CHECK(p_one_hit_exact_factored(a, b, h, k) == p_one_hit_exact(a, b, h, k));
                }
            }
}

TEST_CASE("additivity and range") {
    for (long k = 1; k <= 9; ++k)
        for (long a = 0; a <= k; ++a)
            for (long b = 0; b <= k; ++b) {
                const auto hit = p_hit_exact(a, b, k);
                const auto one = p_one_exact(a, b, k);
                const auto two = p_two_exact(a, b, k);
                CHECK(one + two == hit);
                CHECK(hit >= 0);
                CHECK(hit <= 1);
                for (long h = 0; b + h <= k; ++h)
                    CHECK(p_one_avoid_exact(a, b, h, k) + p_one_hit_exact(a, b, h, k) == one);
            }
}

TEST_CASE("hit probability is monotone in a and b") {
    const long k = 12;
    for (long b = 0; b <= k; ++b)
        for (long a = 1; a <= k; ++a) CHECK(p_hit_exact(a, b, k) >= p_hit_exact(a - 1, b, k));
    for (long a = 0; a <= k; ++a)
        for (long b = 1; b <= k; ++b) CHECK(p_hit_exact(a, b, k) >= p_hit_exact(a, b - 1, k));
}

TEST_CASE("bound reports on the worked examples") {
    SUBCASE("a=1,b=1,h=0,k=4: chain 1/6 <= 1/4 <= 1/4 <= 1/4") {
        const auto reports = check_lemma1({1, 1, 0, 4});
        REQUIRE(reports.size() == 5);
        CHECK(reports[0].name == "p_one");
        CHECK(reports[0].lower == rat(1, 6));
        CHECK(reports[0].value == rat(1, 4));
        CHECK(reports[0].upper == rat(1, 4));
        CHECK(reports[1].value == rat(1, 4));
        CHECK(reports[1].upper == rat(1, 4));
        for (const auto& r : reports) CHECK(r.holds);
    }
    SUBCASE("a=2,b=1,h=1,k=4: p_one_hit meets its bound with equality") {
        const auto reports = check_lemma1({2, 1, 1, 4});
        REQUIRE(reports.size() == 5);
        const auto& hit = reports[4];
        CHECK(hit.name == "p_one_hit");
        CHECK(hit.value == rat(1, 6));
        CHECK(hit.upper == rat(1, 6));
        CHECK(hit.holds);
    }
    SUBCASE("a=2,b=2,h=0,k=4: second-moment bound") {
        const auto reports = check_lemma1({2, 2, 0, 4});
        const auto& two = reports[2];
        CHECK(two.name == "p_two");
        CHECK(two.value == rat(1, 6));
        CHECK(two.upper == rat(1, 2));
        CHECK(two.holds);
    }
    SUBCASE("negative lower bounds are vacuous but hold") {
        const auto reports = check_lemma1({3, 3, 0, 6});  // kappa' = 3 makes the left side negative
        CHECK(reports[0].vacuous);
        CHECK(reports[0].holds);
    }
    SUBCASE("a+b+h > k suppresses the avoid-set family") {
        const auto reports = check_lemma1({3, 2, 2, 6});
        CHECK(reports.size() == 3);
    }
}

TEST_CASE("every inequality holds on a spot grid") {
    for (long k = 4; k <= 24; k += 5)
        for (long a = 0; a <= k; ++a)
            for (long b = 0; a + b <= k; ++b)
                for (long h = 0; a + b + h <= k; h += 2)
                    for (const auto& r : check_lemma1({a, b, h, k})) CHECK(r.holds);
}

TEST_CASE("log-gamma path tracks the exact path above the rational cutoff") {
    // the double front end switches to lgamma beyond k = 1e4; compare
    // against the rational route evaluated directly
    const long k = 20000;
    for (long a : {1L, 2L, 5L, 37L})
        for (long b : {1L, 3L, 11L, 400L}) {
            const double exact = p_hit_exact(a, b, k).convert_to<double>();
            CHECK(p_hit(a, b, k) == doctest::Approx(exact).epsilon(1e-10));
            const double exact1 = p_one_exact(a, b, k).convert_to<double>();
            CHECK(p_one(a, b, k) == doctest::Approx(exact1).epsilon(1e-10));
            const double exact_avoid = p_one_avoid_exact(a, b, 7, k).convert_to<double>();
            CHECK(p_one_avoid(a, b, 7, k) == doctest::Approx(exact_avoid).epsilon(1e-10));
        }
    // exact rational path is still the one used at k <= 1e4
    CHECK(p_hit(2, 1, 4) == 0.5);
}

TEST_CASE("precondition violations") {
    CHECK_THROWS_AS(p_hit_exact(5, 2, 4), std::invalid_argument);
    CHECK_THROWS_AS(p_one_avoid_exact(2, 3, 2, 4), std::invalid_argument);  // b + h > k
    CHECK_THROWS_AS(enumerate_oracle(3, 2, 1, 25), std::invalid_argument);
    CHECK_THROWS_AS(check_lemma1({1, 1, 0, 3}), std::invalid_argument);  // k < 4
    CHECK_THROWS_AS(check_lemma1({4, 3, 0, 6}), std::invalid_argument);  // a + b > k
}

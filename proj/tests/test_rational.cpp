#include <doctest.h>

#include <algorithm>
#include <random>

#include "frameforge/rational.hpp"

using frameforge::Rational;

TEST_CASE("rational parses and prints p/q in lowest terms") {
    CHECK(Rational::parse("2/3").str() == "2/3");
    CHECK(Rational::parse("4/6").str() == "2/3");
    CHECK(Rational::parse("7/1").str() == "7");
    CHECK(Rational::parse("-5").str() == "-5");
    CHECK(Rational::parse("0/9").str() == "0");
    CHECK(Rational(22, 41).str() == "22/41");
    CHECK(Rational(-4, 6).str() == "-2/3");
}

TEST_CASE("rational rejects malformed input") {
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0), std::invalid_argument);
}

TEST_CASE("rational arithmetic is exact") {
    CHECK(Rational(1, 3) + Rational(1, 3) + Rational(1, 3) == Rational(1));
    CHECK(Rational(1, 10) * Rational(10) == Rational(1));
    CHECK(Rational(2, 3) - Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(3, 2) > Rational(1));
    CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    // Denominators that overflow any fixed-width accumulation.
    Rational big(1);
    for (long p : {982451653L, 899809343L, 715225739L}) big *= Rational(1, p);
    Rational back = big;
    for (long p : {982451653L, 899809343L, 715225739L}) back *= Rational(p);
    CHECK(back == Rational(1));
}

TEST_CASE("rational sums are permutation invariant") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(-20, 20);
    std::uniform_int_distribution<long> den(1, 12);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Rational> v;
        for (int i = 0; i < 12; ++i) v.emplace_back(num(rng), den(rng));
        std::vector<Rational> shuffled = v;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(frameforge::sum(v) == frameforge::sum(shuffled));
    }
}

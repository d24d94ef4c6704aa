#include "doctest.h"

#include "gendirect/rational.hpp"

using gendirect::Rational;

TEST_CASE("rational basic arithmetic stays exact") {
    Rational half = Rational::from_int(1).half();
    Rational third = Rational::from_int(1).third();
    CHECK(half.value() == 0.5);
    CHECK(third.value() == 1.0 / 3.0);
    // chained divisions stay correctly rounded (no drift)
    CHECK(third.third().value() == 1.0 / 9.0);
    CHECK(third.third().third().half().value() == 1.0 / 54.0);

    Rational five_sixths = half + third;  // 5/6
    CHECK(five_sixths.exact());
    CHECK(five_sixths == Rational::make(5, 1, 1));

    Rational diff = five_sixths - half;
    CHECK(diff == third);
}

TEST_CASE("normalization strips shared factors") {
    Rational r = Rational::make(6, 1, 1);  // 6/(2*3) = 1
    CHECK(r == Rational::from_int(1));
    CHECK(r.value() == 1.0);
    CHECK(Rational::make(0, 5, 7) == Rational::from_int(0));
}

TEST_CASE("ordering matches real values") {
    Rational a = Rational::make(1, 0, 1);  // 1/3
    Rational b = Rational::make(1, 1, 0);  // 1/2
    Rational c = Rational::make(2, 0, 1);  // 2/3
    CHECK(a < b);
    CHECK(b < c);
    CHECK(!(c < a));
    CHECK(a <= a);
    CHECK(c > b);
}

TEST_CASE("div_int is exact for 3-smooth divisors and falls back otherwise") {
    Rational one = Rational::from_int(1);
    CHECK(one.div_int(12) == Rational::make(1, 2, 1));
    CHECK(one.div_int(12).exact());

    Rational fifth = one.div_int(5);
    CHECK(!fifth.exact());
    CHECK(fifth.value() == doctest::Approx(0.2));

    // Divisible numerator keeps exactness even for non-smooth divisors.
    Rational ten = Rational::from_int(10);
    CHECK(ten.div_int(5) == Rational::from_int(2));
    CHECK(ten.div_int(5).exact());
}

TEST_CASE("deep subdivision degrades to doubles instead of overflowing") {
    Rational x = Rational::from_int(1);
    for (int i = 0; i < 200; ++i) x = x.third();
    CHECK(x.value() >= 0.0);
    CHECK(!x.exact());

    Rational y = Rational::from_int(1);
    for (int i = 0; i < 60; ++i) y = y.third();
    CHECK(y.exact());
}

TEST_CASE("repeated trisection reproduces exact table coordinates") {
    // 1/2 -> 1/6 by subtracting a third of the unit side.
    Rational c = Rational::make(1, 1, 0);
    Rational off = Rational::from_int(1).third();
    CHECK((c - off) == Rational::make(1, 1, 1));  // 1/6
    CHECK((c + off) == Rational::make(5, 1, 1));  // 5/6
    CHECK((c + off).value() == 5.0 / 6.0);
}

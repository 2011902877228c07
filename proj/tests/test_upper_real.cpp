#include <doctest.h>

#include "cstar/errors.hpp"
#include "cstar/upper_real.hpp"

using namespace cstar;

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(Rational(7, 3)) == "7/3");
  CHECK(to_string(Rational(4)) == "4/1");
  CHECK(to_string(Rational(-1, 2)) == "-1/2");
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-5") == Rational(-5));
  CHECK(parse_rational("+2/7") == Rational(2, 7));
  CHECK_THROWS_AS(parse_rational("1/0"), SchemaError);
  CHECK_THROWS_AS(parse_rational("abc"), SchemaError);
  CHECK_THROWS_AS(parse_rational(""), SchemaError);
  CHECK_THROWS_AS(parse_rational("1.5"), SchemaError);
  CHECK(ceil(Rational(7, 3)) == 3);
  CHECK(ceil(Rational(-7, 3)) == -2);
  CHECK(ceil(Rational(4)) == 4);
  CHECK(pow2(-3) == Rational(1, 8));
  CHECK(pow(Rational(2, 3), 3) == Rational(8, 27));
}

TEST_CASE("from_rational is a constant bound") {
  CHECK(from_rational(0).bound(5) == 0);
  CHECK(from_rational(2).bound(0) == 2);
  CHECK(from_rational(Rational(7, 3)).bound(9) == Rational(7, 3));
  CHECK_THROWS_AS(from_rational(-1), InvalidArgument);
}

TEST_CASE("add and mul act on bounds") {
  const UpperReal dec([](Precision k) -> Rational { return 1 + pow2(-static_cast<long>(k)); });
  for (Precision k = 0; k < 6; ++k) {
    CHECK(add(from_rational(1), from_rational(2)).bound(k) == 3);
    CHECK(add(dec, from_rational(0)).bound(k) == dec.bound(k));
    CHECK(add(dec, dec).bound(k) == 2 * dec.bound(k));
    CHECK(mul(from_rational(2), from_rational(3)).bound(k) == 6);
    CHECK(mul(dec, from_rational(1)).bound(k) == dec.bound(k));
    CHECK(mul(dec, from_rational(0)).bound(k) == 0);
    CHECK(add(dec, dec).bound(k + 1) <= add(dec, dec).bound(k));
    CHECK(min(dec, from_rational(Rational(3, 2))).bound(k) == std::min(dec.bound(k), Rational(3, 2)));
  }
}

TEST_CASE("lt_rational semi-decides") {
  CHECK(lt_rational(from_rational(2), 3, 0) == Semi::yes);
  for (Precision k = 0; k < 8; ++k) CHECK(lt_rational(from_rational(2), 2, k) == Semi::unknown);
  // bound(k) = r + 1 at k = 0, r - 1 from k = 3 on.
  const Rational r = 5;
  const UpperReal u([r](Precision k) { return k < 3 ? Rational(r + 1) : Rational(r - 1); });
  CHECK(lt_rational(u, r, 0) == Semi::unknown);
  CHECK(lt_rational(u, r, 3) == Semi::yes);
}

TEST_CASE("sqrt_upper") {
  for (Precision k = 0; k < 10; ++k) {
    CHECK(sqrt_upper(4, k) == 2);
    CHECK(sqrt_upper(0, k) == 0);
    CHECK(sqrt_upper(Rational(9, 16), k) == Rational(3, 4));
  }
  CHECK(sqrt_upper(2, 0) == Rational(3, 2));
  CHECK_THROWS_AS(sqrt_upper(-1, 0), InvalidArgument);

  SUBCASE("bounds are sound, tight and non-increasing") {
    for (const Rational q : {Rational(2), Rational(1, 3), Rational(1000001), Rational(7, 100000)}) {
      Rational prev;
      for (Precision k = 0; k < 40; k += 3) {
        const Rational b = sqrt_upper(q, k);
        CHECK(b * b >= q);
        // b - sqrt(q) <= 2^-k  <=>  (b - 2^-k)^2 <= q or b <= 2^-k
        const Rational lo = b - pow2(-static_cast<long>(k));
        CHECK((lo <= 0 || lo * lo <= q));
        if (k > 0) CHECK(b <= prev);
        prev = b;
      }
    }
  }
}

TEST_CASE("root_pow2_upper bounds roots from above") {
  for (const long s : {1L, 2L, 3L, 1000L, 123456789L}) {
    for (unsigned e = 0; e < 6; ++e) {
      const Rational t = root_pow2_upper(Integer(s), e, 12);
      CHECK(pow(t, 1ul << e) >= Rational(s));
      // relative slack: (t (1 - 2^-10))^(2^e) < s
      const Rational shrunk = t * (1 - pow2(-10));
      CHECK(pow(shrunk, 1ul << e) < Rational(s));
    }
  }
  CHECK(root_pow2_upper(Integer(0), 3, 4) == 0);
}

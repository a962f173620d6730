#include <doctest.h>

#include "mfcalc/field.hpp"

using namespace mfc;

TEST_CASE("prime field arithmetic") {
  Field f = Field::prime(7);
  CHECK(f.str(f.add(f.from_int(5), f.from_int(4))) == "2");
  CHECK(f.str(f.mul(f.from_int(3), f.from_int(5))) == "1");
  CHECK(f.str(f.neg(f.from_int(2))) == "5");
  CHECK(f.str(f.inv(f.from_int(3))) == "5");  // 3*5 = 15 = 1 mod 7
  CHECK(f.is_one(f.mul(f.from_int(3), f.inv(f.from_int(3)))));
  CHECK(f.str(f.pow(f.from_int(3), 6)) == "1");
  CHECK_THROWS_AS(f.inv(f.zero()), Error);
}

TEST_CASE("prime validation") {
  CHECK_THROWS_AS(Field::prime(6), Error);
  CHECK_THROWS_AS(Field::prime(1), Error);
  CHECK_NOTHROW(Field::prime(2));
  CHECK_NOTHROW(Field::prime(2147483647));  // 2^31 - 1 is prime
  CHECK_THROWS_AS(Field::prime((std::int64_t{1} << 31) + 11), Error);
}

TEST_CASE("from_string reduces mod p and handles big literals") {
  Field f = Field::prime(101);
  CHECK(f.from_string("102") == f.from_int(1));
  long long r = 0;
  for (char c : std::string("123456789123456789123456789")) r = (r * 10 + (c - '0')) % 101;
  CHECK(f.from_string("123456789123456789123456789") == f.from_int(r));
  CHECK(f.from_string("-1") == f.from_int(100));
}

TEST_CASE("rationals are exact") {
  Field q = Field::rationals();
  Scalar third = q.from_string("1/3");
  Scalar sixth = q.from_string("1/6");
  CHECK(q.str(q.add(third, sixth)) == "1/2");
  CHECK(q.str(q.inv(q.from_string("-2/7"))) == "-7/2");
  CHECK(q.is_zero(q.sub(q.from_string("2/4"), q.from_string("1/2"))));
  CHECK_FALSE(q.char_divides(12));
}

TEST_CASE("roots of unity") {
  Field f = Field::prime(7);
  Scalar z = f.root_of_unity(3);
  CHECK(f.is_one(f.pow(z, 3)));
  CHECK_FALSE(f.is_one(z));
  CHECK_THROWS_AS(f.root_of_unity(5), Error);  // 5 does not divide 6

  Field f13 = Field::prime(13);
  Scalar i = f13.root_of_unity(4);
  CHECK(f13.is_one(f13.pow(i, 4)));
  CHECK_FALSE(f13.is_one(f13.pow(i, 2)));

  Field q = Field::rationals();
  CHECK(q.str(q.root_of_unity(2)) == "-1");
  CHECK_THROWS_AS(q.root_of_unity(3), Error);
}

TEST_CASE("characteristic divisibility") {
  CHECK(Field::prime(2).char_divides(6));
  CHECK_FALSE(Field::prime(5).char_divides(6));
}

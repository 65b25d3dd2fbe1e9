#include <bondcat/fields.hpp>
#include <bondcat/matrix.hpp>
#include <catch2/catch_amalgamated.hpp>

using namespace bondcat;

TEST_CASE("rational arithmetic is exact") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(scalar_to_string(a + b) == "1/2");
  CHECK(scalar_to_string(Rational(-4, 2)) == "-2");
  CHECK(rational_from_string("-7/21") == Rational(-1, 3));
  CHECK(rational_from_string("5") == Rational(5));
  CHECK_THROWS_AS(rational_from_string("1/0"), Error);
  CHECK_THROWS_AS(inverse(Rational(0)), Error);
}

TEST_CASE("prime field arithmetic") {
  Gf::set_modulus(5);
  CHECK(Gf(7) == Gf(2));
  CHECK(Gf(-1) == Gf(4));
  CHECK(Gf(2) * Gf(4) + Gf(3) * Gf(1) == Gf(1));  // 8 + 3 = 11 = 1 mod 5
  for (long long x = 1; x < 5; ++x) CHECK(Gf(x) * Gf(x).inv() == Gf(1));
  CHECK_THROWS_AS(Gf(0).inv(), Error);
  CHECK_THROWS_AS(Gf::set_modulus(6), Error);
  CHECK_THROWS_AS(Gf::set_modulus(1), Error);
  Gf::set_modulus(5);
}

TEST_CASE("matrix product, identity and empty blocks") {
  using M = Mat<Rational>;
  M a(2, 2, {Rational(1), Rational(2), Rational(0), Rational(1)});
  CHECK(a * M::identity(2) == a);

  M empty(0, 3), b(3, 2);
  M prod = empty * b;
  CHECK(prod.rows() == 0);
  CHECK(prod.cols() == 2);

  CHECK_THROWS_AS(M(2, 3) * M(2, 3), DimensionMismatch);
}

TEST_CASE("GF(5) product matches integer arithmetic oracle") {
  Gf::set_modulus(5);
  // [[2,3]] * [[4],[1]] = [[1]] since 2*4 + 3*1 = 11 = 1 mod 5
  Mat<Gf> a(1, 2, {Gf(2), Gf(3)});
  Mat<Gf> b(2, 1, {Gf(4), Gf(1)});
  long long oracle = (2 * 4 + 3 * 1) % 5;
  CHECK((a * b).at(0, 0) == Gf(oracle));
  CHECK((a * b).at(0, 0) == Gf(1));
}

#include <doctest.h>

#include <random>

#include "descartes/dyadic.hpp"
#include "oracle.hpp"

using descartes::BigInt;
using descartes::Dyadic;
using descartes::DyadicInterval;
using oracle::Q;

namespace {

Dyadic random_dyadic(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-100000, 100000);
  std::uniform_int_distribution<int> e(0, 40);
  return Dyadic(BigInt(num(rng)), e(rng));
}

}  // namespace

TEST_CASE("normalization keeps an odd numerator") {
  const Dyadic x(BigInt(12), 3);
  CHECK(x.num() == 3);
  CHECK(x.exp() == 1);
  const Dyadic z(BigInt(0), 17);
  CHECK(z.is_zero());
  CHECK(z.exp() == 0);
  CHECK(Dyadic(BigInt(8), 3) == Dyadic(1));
  CHECK(Dyadic::pow2_scaled(BigInt(3), 4) == Dyadic(48));
  CHECK(Dyadic::pow2_scaled(BigInt(3), -4) == Dyadic(BigInt(3), 4));
}

TEST_CASE("arithmetic agrees with rationals") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const Dyadic a = random_dyadic(rng);
    const Dyadic b = random_dyadic(rng);
    const Q qa = oracle::to_q(a);
    const Q qb = oracle::to_q(b);
    CHECK(oracle::to_q(a + b) == qa + qb);
    CHECK(oracle::to_q(a - b) == qa - qb);
    CHECK(oracle::to_q(a * b) == qa * qb);
    CHECK(oracle::to_q(-a) == -qa);
    CHECK(oracle::to_q(descartes::midpoint(a, b)) == (qa + qb) / 2);
    CHECK(((a < b) == (qa < qb)));
    CHECK(((a == b) == (qa == qb)));
    CHECK(oracle::to_q(a.div_pow2(5)) == qa / 32);
  }
}

TEST_CASE("text round trip") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Dyadic a = random_dyadic(rng);
    CHECK(Dyadic::parse(a.to_string()) == a);
  }
  CHECK(Dyadic(BigInt(-3), 2).to_string() == "-3/2^2");
  CHECK(Dyadic(5).to_string() == "5");
  CHECK_THROWS(Dyadic::parse("3/7"));
  CHECK_THROWS(Dyadic::parse("abc"));
}

TEST_CASE("conversion to double") {
  CHECK(Dyadic(BigInt(3), 2).to_double() == 0.75);
  CHECK(Dyadic(BigInt(1), 2000).to_double() == 0.0);
  CHECK(Dyadic(BigInt(-1), 1074).to_double() == -std::ldexp(1.0, -1074));
  CHECK(Dyadic(BigInt(5), 3).log2_abs() == doctest::Approx(std::log2(5.0 / 8)));
  BigInt huge = 1;
  huge <<= 5000;
  CHECK(descartes::quotient_to_double(Dyadic(huge), Dyadic(huge * 4)) == 0.25);
  CHECK(std::isinf(Dyadic(huge).to_double()));
  CHECK_THROWS(descartes::quotient_to_double(Dyadic(1), Dyadic(0)));
}

TEST_CASE("intervals") {
  const DyadicInterval j = descartes::unit_interval();
  CHECK(j.lo() == Dyadic(-1));
  CHECK(j.width() == Dyadic(2));
  CHECK(j.left_half() == DyadicInterval(Dyadic(-1), Dyadic(0)));
  CHECK(j.right_half().left_half() == DyadicInterval(Dyadic(0), Dyadic(BigInt(1), 1)));
  CHECK(j.contains(Dyadic(0)));
  CHECK_FALSE(j.contains(Dyadic(1)));
  CHECK_THROWS(DyadicInterval(Dyadic(1), Dyadic(1)));
  CHECK_THROWS(DyadicInterval(Dyadic(2), Dyadic(1)));
}

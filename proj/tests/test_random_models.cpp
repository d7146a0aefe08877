#include <doctest.h>

#include <cmath>
#include <map>

#include "descartes/errors.hpp"
#include "descartes/random_models.hpp"

using namespace descartes;

namespace {

// Upper 0.1% point of chi-square with k degrees of freedom, Wilson-Hilferty.
double chi2_critical(int k) {
  const double z = 3.090232;
  const double a = 2.0 / (9.0 * k);
  return k * std::pow(1 - a + z * std::sqrt(a), 3);
}

}  // namespace

TEST_CASE("names round trip") {
  for (auto k : {ModelKind::uniform, ModelKind::support, ModelKind::signs, ModelKind::exact_bitsize,
                 ModelKind::smoothed})
    CHECK(parse_model_kind(to_string(k)) == k);
  CHECK(to_string(ModelKind::exact_bitsize) == "exactbits");
  CHECK_THROWS_AS(parse_model_kind("gaussian"), InvalidModelError);
  CHECK(RandomModel::uniform(16, 32).describe() == "uniform(d=16,tau=32)");
}

TEST_CASE("sampling is a pure function of seed and index") {
  const auto m = RandomModel::uniform(20, 40);
  CHECK(sample(m, 5, 3) == sample(m, 5, 3));
  CHECK_FALSE(sample(m, 5, 3) == sample(m, 5, 4));
  CHECK_FALSE(sample(m, 5, 3) == sample(m, 6, 3));
  // Drawing other indices in between does not disturb a sample.
  const auto first = sample(m, 9, 10);
  for (int i = 0; i < 10; ++i) sample(m, 9, static_cast<std::uint64_t>(i));
  CHECK(sample(m, 9, 10) == first);
}

TEST_CASE("samples respect the model ranges") {
  for (std::uint64_t tau : {1u, 5u, 32u, 100u}) {
    const auto u = RandomModel::uniform(12, tau);
    const auto e = RandomModel::exact_bitsize(12, tau);
    BigInt top = 1;
    top <<= tau;
    for (std::uint64_t i = 0; i < 200; ++i) {
      const auto f = sample(u, 1, i);
      for (const auto& c : f.coeffs()) CHECK(abs(c) <= top);
      CHECK((f.is_zero() || bitsize_tau(f) <= tau_bound(u)));
      const auto g = sample(e, 1, i);
      REQUIRE(g.degree() == 12);
      for (const auto& c : g.coeffs()) {
        CHECK(abs(c) <= top - 1);
        CHECK(abs(c) * 2 >= top);
      }
    }
  }
}

TEST_CASE("support and sign patterns") {
  const auto s = RandomModel::with_support(10, 8, {0, 1, 4, 9, 10});
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto f = sample(s, 2, i);
    for (int k : {2, 3, 5, 6, 7, 8}) CHECK(sgn(f.coeff(static_cast<std::size_t>(k))) == 0);
  }
  CHECK_THROWS_AS(RandomModel::with_support(10, 8, {0, 1, 4, 10}), InvalidModelError);
  CHECK_THROWS_AS(RandomModel::with_support(10, 8, {0, 1, 9, 10, 11}), InvalidModelError);

  const std::vector<int> signs{1, -1, -1, 1, 1, -1};
  const auto m = RandomModel::with_signs(5, 6, signs);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto f = sample(m, 3, i);
    for (std::size_t k = 0; k < signs.size(); ++k) CHECK(sgn(f.coeff(k)) == signs[k]);
  }
  CHECK_THROWS_AS(RandomModel::with_signs(5, 6, {1, -1}), InvalidModelError);
  CHECK_THROWS_AS(RandomModel::with_signs(2, 6, {1, 0, 1}), InvalidModelError);
  CHECK(parse_signs("+-+") == std::vector<int>{1, -1, 1});
  CHECK(parse_signs("1,-1") == std::vector<int>{1, -1});
  CHECK(parse_support("0,1,5") == std::vector<int>{0, 1, 5});
  CHECK_THROWS(parse_signs("+x"));
  CHECK_THROWS_AS(RandomModel::uniform(0, 8), InvalidModelError);
}

TEST_CASE("uniform coefficients pass a chi-square test") {
  const std::uint64_t tau = 3;  // values -8..8
  const auto m = RandomModel::uniform(3, tau);
  std::map<long, int> counts;
  const int n = 6000;
  for (std::uint64_t i = 0; i < n / 4; ++i) {
    const auto f = sample(m, 77, i);
    for (std::size_t k = 0; k < 4; ++k) ++counts[f.coeff(k).get_si()];
  }
  const int cells = 17;
  CHECK(counts.size() == static_cast<std::size_t>(cells));
  const double expect = static_cast<double>(n) / cells;
  double chi2 = 0;
  for (const auto& [v, c] : counts) chi2 += (c - expect) * (c - expect) / expect;
  CHECK(chi2 < chi2_critical(cells - 1));
}

TEST_CASE("exact-bitsize coefficients pass a chi-square test") {
  const auto m = RandomModel::exact_bitsize(3, 3);  // +-4..+-7
  std::map<long, int> counts;
  const int n = 8000;
  for (std::uint64_t i = 0; i < n / 4; ++i) {
    const auto f = sample(m, 78, i);
    for (std::size_t k = 0; k < 4; ++k) ++counts[f.coeff(k).get_si()];
  }
  CHECK(counts.size() == 8);
  const double expect = n / 8.0;
  double chi2 = 0;
  for (const auto& [v, c] : counts) chi2 += (c - expect) * (c - expect) / expect;
  CHECK(chi2 < chi2_critical(7));
}

TEST_CASE("uniformity parameter") {
  CHECK(uniformity(RandomModel::uniform(8, 10)).value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(uniformity(RandomModel::uniform(8, 10)).exact);
  // Signs: weight 1/2^tau, u = ln((1 + 2^(tau+1)) / 2^tau) = ln(2 + 2^-tau).
  const auto s = uniformity(RandomModel::with_signs(3, 4, {1, 1, -1, 1}));
  CHECK(s.value == doctest::Approx(std::log(2 + 1.0 / 16)));
  const auto e = uniformity(RandomModel::exact_bitsize(3, 4));
  CHECK(e.value == doctest::Approx(std::log(2 + 1.0 / 16)));
  CHECK(uniformity(RandomModel::with_support(6, 4, {0, 1, 5, 6})).value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("smoothed model") {
  const IntPolynomial base{5, 0, -3, 1};
  const auto m = RandomModel::smoothed(base, BigInt(4), RandomModel::uniform(3, 2));
  CHECK(m.kind == ModelKind::smoothed);
  CHECK_FALSE(uniformity(m).exact);
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto f = sample(m, 4, i);
    const auto r = f - base;
    for (const auto& c : r.coeffs()) {
      CHECK(mpz_divisible_ui_p(c.get_mpz_t(), 4) != 0);
      CHECK(abs(c) <= 16);
    }
  }
  CHECK_THROWS_AS(RandomModel::smoothed(base, BigInt(0), RandomModel::uniform(3, 2)), InvalidModelError);
  CHECK_THROWS_AS(RandomModel::smoothed(IntPolynomial{1, 2, 3, 4, 5}, BigInt(1), RandomModel::uniform(3, 2)),
                  InvalidModelError);
}

#include "descartes/dyadic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace descartes {

namespace {

// Trailing zero bits of a nonzero integer.
std::uint64_t trailing_zeros(const BigInt& v) { return mpz_scan1(v.get_mpz_t(), 0); }

BigInt shl(const BigInt& v, std::uint64_t k) {
  BigInt out;
  mpz_mul_2exp(out.get_mpz_t(), v.get_mpz_t(), k);
  return out;
}

// Brings both operands to the larger exponent.
std::pair<BigInt, BigInt> aligned(const Dyadic& a, const Dyadic& b, std::uint64_t& exp) {
  exp = std::max(a.exp(), b.exp());
  return {shl(a.num(), exp - a.exp()), shl(b.num(), exp - b.exp())};
}

}  // namespace

Dyadic::Dyadic(BigInt num, std::uint64_t exp) : num_(std::move(num)), exp_(exp) {
  if (sgn(num_) == 0) {
    exp_ = 0;
    return;
  }
  const std::uint64_t strip = std::min(exp_, trailing_zeros(num_));
  if (strip > 0) {
    mpz_fdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), strip);
    exp_ -= strip;
  }
}

Dyadic Dyadic::pow2_scaled(BigInt m, std::int64_t k) {
  if (k >= 0) return Dyadic(shl(m, static_cast<std::uint64_t>(k)), 0);
  return Dyadic(std::move(m), static_cast<std::uint64_t>(-k));
}

Dyadic Dyadic::div_pow2(std::uint64_t k) const { return Dyadic(num_, exp_ + k); }

double Dyadic::to_double() const {
  if (is_zero()) return 0.0;
  long e = 0;
  const double mant = mpz_get_d_2exp(&e, num_.get_mpz_t());
  const long long total = static_cast<long long>(e) - static_cast<long long>(exp_);
  if (total > std::numeric_limits<int>::max()) return std::copysign(HUGE_VAL, mant);
  if (total < std::numeric_limits<int>::min()) return std::copysign(0.0, mant);
  return std::ldexp(mant, static_cast<int>(total));
}

double Dyadic::log2_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  long e = 0;
  const double mant = mpz_get_d_2exp(&e, num_.get_mpz_t());
  return std::log2(std::fabs(mant)) + static_cast<double>(e) - static_cast<double>(exp_);
}

std::string Dyadic::to_string() const {
  std::string s = num_.get_str();
  if (exp_ != 0) s += "/2^" + std::to_string(exp_);
  return s;
}

Dyadic Dyadic::parse(const std::string& text) {
  const auto slash = text.find('/');
  BigInt num;
  if (num.set_str(text.substr(0, slash), 10) != 0)
    throw std::invalid_argument("malformed dyadic: " + text);
  if (slash == std::string::npos) return Dyadic(num);
  const std::string rest = text.substr(slash + 1);
  if (rest.rfind("2^", 0) != 0 || rest.size() == 2)
    throw std::invalid_argument("malformed dyadic: " + text);
  std::size_t used = 0;
  const unsigned long long exp = std::stoull(rest.substr(2), &used);
  if (used != rest.size() - 2) throw std::invalid_argument("malformed dyadic: " + text);
  return Dyadic(num, exp);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  std::uint64_t exp = 0;
  auto [x, y] = aligned(a, b, exp);
  return Dyadic(BigInt(x + y), exp);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
  std::uint64_t exp = 0;
  auto [x, y] = aligned(a, b, exp);
  return Dyadic(BigInt(x - y), exp);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(BigInt(a.num_ * b.num_), a.exp_ + b.exp_);
}

Dyadic operator-(const Dyadic& a) {
  Dyadic out;
  out.num_ = -a.num_;
  out.exp_ = a.exp_;
  return out;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  std::uint64_t exp = 0;
  auto [x, y] = aligned(a, b, exp);
  const int c = cmp(x, y);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Dyadic midpoint(const Dyadic& a, const Dyadic& b) { return (a + b).div_pow2(1); }

double quotient_to_double(const Dyadic& a, const Dyadic& b) {
  if (b.is_zero()) throw std::domain_error("division by zero dyadic");
  if (a.is_zero()) return 0.0;
  long ea = 0;
  long eb = 0;
  const double ma = mpz_get_d_2exp(&ea, a.num().get_mpz_t());
  const double mb = mpz_get_d_2exp(&eb, b.num().get_mpz_t());
  const long long shift = (static_cast<long long>(ea) - static_cast<long long>(a.exp())) -
                          (static_cast<long long>(eb) - static_cast<long long>(b.exp()));
  const double q = ma / mb;
  if (shift > std::numeric_limits<int>::max()) return std::copysign(HUGE_VAL, q);
  if (shift < std::numeric_limits<int>::min()) return std::copysign(0.0, q);
  return std::ldexp(q, static_cast<int>(shift));
}

DyadicInterval::DyadicInterval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (!(lo_ < hi_))
    throw std::invalid_argument("empty interval (" + lo_.to_string() + ", " + hi_.to_string() + ")");
}

DyadicInterval unit_interval() { return {Dyadic(-1), Dyadic(1)}; }

}  // namespace descartes

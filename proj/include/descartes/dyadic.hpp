#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace descartes {

using BigInt = mpz_class;

/// Exact binary rational num / 2^exp.
///
/// Always normalized: either exp == 0 or num is odd, and zero is (0, 0).
/// Values are immutable after construction.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(BigInt num, std::uint64_t exp = 0);  // NOLINT(google-explicit-constructor)
  Dyadic(long value) : Dyadic(BigInt(value)) {}  // NOLINT(google-explicit-constructor)

  /// m * 2^k for any sign of k.
  static Dyadic pow2_scaled(BigInt m, std::int64_t k);

  const BigInt& num() const noexcept { return num_; }
  std::uint64_t exp() const noexcept { return exp_; }

  int sign() const noexcept { return sgn(num_); }
  bool is_zero() const noexcept { return sgn(num_) == 0; }

  Dyadic abs() const { return sign() < 0 ? -*this : *this; }
  /// Exact division by 2^k.
  Dyadic div_pow2(std::uint64_t k) const;

  /// Nearest double (may under- or overflow to 0 / inf).
  double to_double() const;
  /// lg|x|; -inf for zero.
  double log2_abs() const;

  /// "num/2^exp"; plain "num" when exp == 0.
  std::string to_string() const;
  /// Parses the to_string() form.
  static Dyadic parse(const std::string& text);

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a);

  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);
  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }

 private:
  BigInt num_{0};
  std::uint64_t exp_ = 0;
};

/// Exact (a + b) / 2.
Dyadic midpoint(const Dyadic& a, const Dyadic& b);

/// a / b rounded to double without intermediate overflow; b must be nonzero.
double quotient_to_double(const Dyadic& a, const Dyadic& b);

/// Open interval (lo, hi) with dyadic endpoints, lo < hi.
class DyadicInterval {
 public:
  DyadicInterval(Dyadic lo, Dyadic hi);

  const Dyadic& lo() const noexcept { return lo_; }
  const Dyadic& hi() const noexcept { return hi_; }

  Dyadic width() const { return hi_ - lo_; }
  Dyadic midpoint() const { return descartes::midpoint(lo_, hi_); }
  DyadicInterval left_half() const { return {lo_, midpoint()}; }
  DyadicInterval right_half() const { return {midpoint(), hi_}; }

  bool contains(const Dyadic& x) const { return lo_ < x && x < hi_; }

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;

 private:
  Dyadic lo_;
  Dyadic hi_;
};

/// (-1, 1), the solver's initial interval.
DyadicInterval unit_interval();

}  // namespace descartes

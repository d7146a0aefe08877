#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <string>
#include <vector>

#include "descartes/dyadic.hpp"

namespace descartes {

/// Dense univariate polynomial with arbitrary-precision integer coefficients.
///
/// coeffs()[i] is the coefficient of X^i. Trailing zeros are trimmed on
/// construction, so the zero polynomial has an empty coefficient vector and
/// degree -1.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs);
  IntPolynomial(std::initializer_list<long> coeffs);

  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Coefficient of X^i, zero past the degree.
  BigInt coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }
  /// Throws ZeroPolynomialError on the zero polynomial.
  const BigInt& leading() const;

  /// Text form: c_0 c_1 ... c_d separated by single spaces ("0" for zero).
  std::string to_string() const;
  /// Parses whitespace-separated decimal coefficients c_0 ... c_d.
  static IntPolynomial parse(const std::string& text, std::size_t line = 0);

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const BigInt& s, const IntPolynomial& a);

 private:
  std::vector<BigInt> coeffs_;
};

/// Reads one polynomial per line. Blank lines and lines starting with '#'
/// are skipped; ParseError carries the 1-based line number.
std::vector<IntPolynomial> read_polynomials(std::istream& in);

/// Throws ZeroPolynomialError if f is zero.
void require_nonzero(const IntPolynomial& f);

// Evaluation ----------------------------------------------------------------

/// Exact f(x) by Horner over the integers with denominator 2^(d * x.exp).
Dyadic evaluate(const IntPolynomial& f, const Dyadic& x);

IntPolynomial derivative(const IntPolynomial& f);

// Size measures -------------------------------------------------------------

BigInt one_norm(const IntPolynomial& f);

/// ceil(lg |c|), with 0 for c = 0 and for |c| = 1. |c| <= 2^bitsize(c).
std::uint64_t bitsize(const BigInt& c);

/// Maximum coefficient bitsize. Throws ZeroPolynomialError.
std::uint64_t bitsize_tau(const IntPolynomial& f);

// Transforms ----------------------------------------------------------------

/// X^d f(1/X): coefficient reversal, trimmed when f(0) = 0.
IntPolynomial reciprocal(const IntPolynomial& f);

/// 2^(dk) f(X / 2^k). Roots are multiplied by 2^k; k may be negative, in
/// which case the result is f(2^|k| X).
IntPolynomial homothety(const IntPolynomial& f, std::int64_t k);

/// f(X + c), computed by the quadratic Horner-style shift.
IntPolynomial taylor_shift(const IntPolynomial& f, const BigInt& c);

/// f(r X).
IntPolynomial scale_variable(const IntPolynomial& f, const BigInt& r);

/// Divides out the largest power of two dividing every coefficient.
IntPolynomial strip_power_of_two(const IntPolynomial& f);

// Sign variations -----------------------------------------------------------

/// Sign changes in (c_0, ..., c_d) with zeros deleted.
std::size_t var_count(const IntPolynomial& f);

/// Integer multiple (by a positive power of two) of f(lo + wid(J) t): the
/// image of f on J rescaled to [0, 1].
IntPolynomial interval_image(const IntPolynomial& f, const DyadicInterval& J);

/// Integer multiple (by a positive power of two) of (X+1)^d f((aX+b)/(X+1))
/// for J = (a, b).
IntPolynomial mobius_transform(const IntPolynomial& f, const DyadicInterval& J);

/// var(f, J): sign variations of the Möbius transform of f onto J.
std::size_t var_in_interval(const IntPolynomial& f, const DyadicInterval& J);

// Gcd and square-free part ---------------------------------------------------

/// Gcd of the coefficients (non-negative; 0 for the zero polynomial).
BigInt content(const IntPolynomial& f);

/// f / content(f) with positive leading coefficient.
IntPolynomial primitive_part(const IntPolynomial& f);

/// Primitive gcd with positive leading coefficient, by the primitive
/// remainder sequence. gcd(0, 0) = 0.
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);

/// Exact quotient a / b over the integers; throws std::domain_error if b
/// does not divide a.
IntPolynomial exact_quotient(const IntPolynomial& a, const IntPolynomial& b);

/// Primitive square-free part f / gcd(f, f') with positive leading
/// coefficient. Throws ZeroPolynomialError.
IntPolynomial square_free_part(const IntPolynomial& f);

}  // namespace descartes

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "descartes/polynomial.hpp"

namespace descartes {

enum class ModelKind { uniform, support, signs, exact_bitsize, smoothed };

std::string to_string(ModelKind kind);
/// Accepts uniform|support|signs|exactbits|smoothed.
ModelKind parse_model_kind(const std::string& name);

/// A distribution over integer polynomials of degree at most `degree` with
/// independent coefficients.
///
///   uniform   c_i uniform on [-2^tau, 2^tau]
///   support   uniform on [-2^tau, 2^tau] for i in A, zero elsewhere
///   signs     c_i uniform on s_i [1, 2^tau]
///   exactbits c_i uniform on [-2^tau+1, -2^(tau-1)] u [2^(tau-1), 2^tau-1]
///   smoothed  base + sigma * (sample of the perturbation model)
struct RandomModel {
  ModelKind kind = ModelKind::uniform;
  int degree = 0;
  std::uint64_t tau = 0;
  std::vector<int> support;  // sorted, distinct
  std::vector<int> signs;    // +-1, one per coefficient
  IntPolynomial base;
  BigInt sigma = 0;
  std::shared_ptr<const RandomModel> perturbation;

  static RandomModel uniform(int degree, std::uint64_t tau);
  static RandomModel with_support(int degree, std::uint64_t tau, std::vector<int> support);
  static RandomModel with_signs(int degree, std::uint64_t tau, std::vector<int> signs);
  static RandomModel exact_bitsize(int degree, std::uint64_t tau);
  static RandomModel smoothed(IntPolynomial base, BigInt sigma, RandomModel perturbation);

  /// Throws InvalidModelError.
  void validate() const;
  /// Compact description, e.g. "uniform(d=16,tau=32)".
  std::string describe() const;
};

/// Deterministic function of (model, seed, index). Coefficient i draws from
/// its own mt19937_64 stream keyed by (seed, index, i), so samples do not
/// depend on evaluation order.
IntPolynomial sample(const RandomModel& model, std::uint64_t seed, std::uint64_t index);

/// tau(model): every sample has bitsize_tau <= tau_bound.
std::uint64_t tau_bound(const RandomModel& model);

/// u(model) = ln(w (1 + 2^(tau+1))), w the largest point mass of
/// c_0, c_1, c_{d-1}, c_d. For smoothed models only an upper bound is known.
struct Uniformity {
  double value = 0.0;
  bool exact = true;
};
Uniformity uniformity(const RandomModel& model);

/// Parses "+-+..." (or "1,-1,...") into a sign vector.
std::vector<int> parse_signs(const std::string& text);
/// Parses "0,1,5,9,10".
std::vector<int> parse_support(const std::string& text);

}  // namespace descartes

#pragma once

#include <cstddef>

#include "descartes/dyadic.hpp"
#include "descartes/polynomial.hpp"

namespace descartes {

/// Evaluates cond(f, x) = ||f||_1 / max{|f(x)|, |f'(x)|/d} at dyadic points.
///
/// f(x), f'(x) and f''(x) are evaluated exactly; only the final ratios are
/// rounded. `degree_context` is the d of the ambient space P_d and must be
/// at least deg f (it defaults to deg f).
class ConditionEvaluator {
 public:
  explicit ConditionEvaluator(IntPolynomial f, int degree_context = -1);

  struct Sample {
    double value;    // |f(x)| / ||f||_1
    double slope;    // |f'(x)| / (d ||f||_1)
    double bend;     // |f''(x)| / (d ||f||_1)
    double inverse;  // 1 / cond(f, x) = max(value, slope)
  };

  /// 1 / cond(f, x), in [0, 1] on [-1, 1].
  double inverse_cond(const Dyadic& x) const;
  double cond(const Dyadic& x) const;
  Sample sample(const Dyadic& x) const;

  int degree() const noexcept { return d_; }
  const IntPolynomial& polynomial() const noexcept { return f_; }
  /// sum i(i-1)|f_i| / ||f||_1: bound on |f''| / ||f||_1 over [-1, 1].
  double second_derivative_bound() const noexcept { return b2_; }
  /// sum i(i-1)(i-2)|f_i| / (d ||f||_1): bound on |f'''| / (d ||f||_1).
  double third_derivative_bound() const noexcept { return b3_; }

 private:
  IntPolynomial f_;
  IntPolynomial df_;
  IntPolynomial ddf_;
  int d_;
  Dyadic norm_;
  double b2_ = 0.0;
  double b3_ = 0.0;
};

/// cond(f, x) for x in [-1, 1]; +inf iff f(x) = f'(x) = 0.
/// Throws ZeroPolynomialError, std::domain_error for x outside [-1, 1].
double local_cond(const IntPolynomial& f, const Dyadic& x, int degree_context = -1);

/// Certified enclosure of cond_R(f) = max over [-1, 1] of cond(f, x).
struct CondBracket {
  double lower = 0.0;  // max of cond over the evaluated grid
  double upper = 0.0;  // +inf when no certificate was obtained
  std::size_t grid_size = 0;
  double delta = 0.0;  // finest grid spacing used
  /// upper / lower <= 1 + rel_tol was reached (or cond_R = inf was hit
  /// exactly on the grid).
  bool achieved = false;

  bool finite() const;
  double lg_upper() const;
};

struct BracketOptions {
  double rel_tol = 0.5;
  std::size_t max_grid = std::size_t{1} << 22;
  /// Refinement stops after this many halvings of the initial spacing.
  std::size_t max_levels = 96;
};

/// Brackets cond_R(f) by evaluating cond on the dyadic grid -1 + k 2^-l,
/// starting from spacing 2^-l <= 1/(4d) and halving cells whose certified
/// lower bound on 1/cond is not yet within the tolerance.
///
/// A cell [x0, x1] of width delta is certified from its endpoint samples
/// with three Lipschitz envelopes: the global d-Lipschitz bound on 1/cond,
/// and local slope bounds for |f| / ||f||_1 and |f'| / (d ||f||_1) obtained
/// from the endpoint derivatives plus the global bounds on f'' and f'''.
CondBracket global_cond_bracket(const IntPolynomial& f, const BracketOptions& options = {},
                                int degree_context = -1);

/// Lower bound 1/(12 d U) on the eps-real separation, valid for every
/// eps < 1/(e d U) where U >= cond_R(f).
/// Throws UnboundedConditionError if U is not finite.
double separation_lower_bound(int degree, double cond_upper);
double separation_lower_bound(const IntPolynomial& f, const CondBracket& bracket,
                              int degree_context = -1);

/// The eps = 1/(e d U) at which the separation bound applies.
double separation_epsilon(int degree, double cond_upper);

}  // namespace descartes

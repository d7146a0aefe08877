#include "descartes/condition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "descartes/errors.hpp"

namespace descartes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative slack covering the rounding of exact values to double and the
// handful of double operations in an envelope.
constexpr double kSlack = 0x1p-45;

double abs_ratio(const Dyadic& a, const Dyadic& b) { return std::fabs(quotient_to_double(a, b)); }

double weighted_norm(const IntPolynomial& f, int order) {
  BigInt s = 0;
  const auto& c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (static_cast<int>(i) < order) continue;
    BigInt w = 1;
    for (int k = 0; k < order; ++k) w *= static_cast<unsigned long>(i - k);
    s += abs(c[i]) * w;
  }
  return s.get_d();
}

int resolve_degree(const IntPolynomial& f, int degree_context) {
  if (degree_context < 0) return f.degree();
  if (degree_context < f.degree()) throw std::invalid_argument("degree context below degree");
  return degree_context;
}

// Lower bound on min over a cell of a function with endpoint values a, b
// and slope bound s (absolute values), cell width w.
double envelope(double a, double b, double s, double w) {
  const double cross = 0.5 * (a + b - s * w);
  const double guarded = cross - kSlack * (a + b + s * w);
  return std::max(0.0, std::min({a, b, guarded}));
}

struct GridPoint {
  Dyadic x;
  ConditionEvaluator::Sample s;
};

struct Cell {
  std::size_t left;   // indices into the point store
  std::size_t right;
  std::uint64_t level;  // width 2^-level
};

}  // namespace

ConditionEvaluator::ConditionEvaluator(IntPolynomial f, int degree_context)
    : f_(std::move(f)), df_(derivative(f_)), ddf_(derivative(df_)) {
  require_nonzero(f_);
  d_ = resolve_degree(f_, degree_context);
  norm_ = Dyadic(one_norm(f_));
  const double n = norm_.to_double();
  b2_ = weighted_norm(f_, 2) / n;
  b3_ = d_ > 0 ? weighted_norm(f_, 3) / (n * d_) : 0.0;
}

ConditionEvaluator::Sample ConditionEvaluator::sample(const Dyadic& x) const {
  Sample s{};
  const Dyadic fx = evaluate(f_, x);
  s.value = abs_ratio(fx, norm_);
  if (d_ > 0) {
    const Dyadic dnorm = norm_ * Dyadic(static_cast<long>(d_));
    s.slope = abs_ratio(evaluate(df_, x), dnorm);
    s.bend = abs_ratio(evaluate(ddf_, x), dnorm);
  }
  s.inverse = std::max(s.value, s.slope);
  return s;
}

double ConditionEvaluator::inverse_cond(const Dyadic& x) const { return sample(x).inverse; }

double ConditionEvaluator::cond(const Dyadic& x) const {
  const Dyadic fx = evaluate(f_, x).abs();
  if (d_ == 0) return quotient_to_double(norm_, fx);
  const Dyadic dfx = evaluate(df_, x).abs();
  const Dyadic dd = Dyadic(static_cast<long>(d_));
  if (fx.is_zero() && dfx.is_zero()) return kInf;
  // max{|f|, |f'|/d} compared exactly as d|f| vs |f'|.
  if (fx * dd >= dfx) return quotient_to_double(norm_, fx);
  return quotient_to_double(norm_ * dd, dfx);
}

double local_cond(const IntPolynomial& f, const Dyadic& x, int degree_context) {
  if (x < Dyadic(-1) || Dyadic(1) < x) throw std::domain_error("cond evaluated outside [-1, 1]");
  return ConditionEvaluator(f, degree_context).cond(x);
}

bool CondBracket::finite() const { return std::isfinite(upper); }

double CondBracket::lg_upper() const { return std::log2(upper); }

CondBracket global_cond_bracket(const IntPolynomial& f, const BracketOptions& options,
                                int degree_context) {
  if (!(options.rel_tol > 0)) throw std::invalid_argument("rel_tol must be positive");
  const ConditionEvaluator eval(f, degree_context);
  const int d = eval.degree();

  std::uint64_t level0 = 2;
  while ((std::uint64_t{1} << level0) < 4 * static_cast<std::uint64_t>(std::max(d, 1))) ++level0;

  std::vector<GridPoint> points;
  std::vector<Cell> frontier;
  const std::uint64_t n0 = std::uint64_t{1} << (level0 + 1);
  points.reserve(n0 + 1);
  for (std::uint64_t k = 0; k <= n0; ++k) {
    Dyadic x = Dyadic(BigInt(static_cast<unsigned long>(k)), level0) - Dyadic(1);
    const auto s = eval.sample(x);
    points.push_back({std::move(x), s});
    if (k > 0) frontier.push_back({k - 1, k, level0});
  }

  CondBracket bracket;
  double vmin = kInf;
  for (const auto& p : points) vmin = std::min(vmin, p.s.inverse);
  double settled = kInf;  // min certified bound over cells that left the frontier
  std::uint64_t finest = level0;

  const double b2 = eval.second_derivative_bound();
  const double b3 = eval.third_derivative_bound();
  auto certify = [&](const Cell& c) {
    const auto& a = points[c.left].s;
    const auto& b = points[c.right].s;
    const double w = std::ldexp(1.0, -static_cast<int>(c.level));
    const double crude = envelope(a.inverse, b.inverse, d, w);
    // Slope of |f|/||f||: |f'|/||f|| = d * slope, plus drift of f' inside the cell.
    const double s0 = d * std::max(a.slope, b.slope) + 0.5 * w * b2;
    const double s1 = std::max(a.bend, b.bend) + 0.5 * w * b3;
    const double on_value = envelope(a.value, b.value, s0 * (1 + kSlack), w);
    const double on_slope = d > 0 ? envelope(a.slope, b.slope, s1 * (1 + kSlack), w) : 0.0;
    return std::max({crude, on_value, on_slope});
  };

  while (true) {
    const double target = vmin / (1.0 + options.rel_tol);
    std::vector<Cell> open;
    double frontier_min = kInf;
    for (const auto& c : frontier) {
      const double bound = certify(c);
      if (vmin > 0 && bound >= target)
        settled = std::min(settled, bound);
      else {
        open.push_back(c);
        frontier_min = std::min(frontier_min, bound);
      }
    }
    const double certified = std::min(settled, frontier_min);
    bracket.upper = certified > 0 ? 1.0 / certified : kInf;
    bracket.lower = vmin > 0 ? 1.0 / vmin : kInf;
    bracket.delta = std::ldexp(1.0, -static_cast<int>(finest));
    bracket.grid_size = points.size();

    if (vmin == 0) {  // cond(f, x) = inf at a grid point: cond_R = inf exactly
      bracket.upper = kInf;
      bracket.achieved = true;
      return bracket;
    }
    if (open.empty()) {
      bracket.achieved = true;
      return bracket;
    }
    const auto deepest = std::max_element(open.begin(), open.end(), [](const Cell& a, const Cell& b) {
                           return a.level < b.level;
                         })->level;
    if (points.size() + open.size() > options.max_grid || deepest >= level0 + options.max_levels) {
      bracket.achieved = false;
      return bracket;
    }

    frontier.clear();
    for (const auto& c : open) {
      Dyadic mid = midpoint(points[c.left].x, points[c.right].x);
      const auto s = eval.sample(mid);
      vmin = std::min(vmin, s.inverse);
      points.push_back({std::move(mid), s});
      const std::size_t m = points.size() - 1;
      frontier.push_back({c.left, m, c.level + 1});
      frontier.push_back({m, c.right, c.level + 1});
      finest = std::max(finest, c.level + 1);
    }
  }
}

double separation_lower_bound(int degree, double cond_upper) {
  if (!std::isfinite(cond_upper)) throw UnboundedConditionError();
  return 1.0 / (12.0 * std::max(degree, 1) * cond_upper);
}

double separation_lower_bound(const IntPolynomial& f, const CondBracket& bracket,
                              int degree_context) {
  return separation_lower_bound(resolve_degree(f, degree_context), bracket.upper);
}

double separation_epsilon(int degree, double cond_upper) {
  if (!std::isfinite(cond_upper)) throw UnboundedConditionError();
  return 1.0 / (std::numbers::e * std::max(degree, 1) * cond_upper);
}

}  // namespace descartes

#include "descartes/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <limits>

#include "descartes/errors.hpp"

namespace descartes {

namespace {

double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

bool exact_in_double(const Dyadic& x, double d) {
  if (x.is_zero()) return true;
  if (!std::isnormal(d)) return false;
  const mpz_srcptr n = x.num().get_mpz_t();
  return mpz_sizeinbase(n, 2) - mpz_scan1(n, 0) <= std::numeric_limits<double>::digits;
}

double lower(const Dyadic& x) {
  const double d = x.to_double();
  return exact_in_double(x, d) ? d : down(d);
}
double upper(const Dyadic& x) {
  const double d = x.to_double();
  return exact_in_double(x, d) ? d : up(d);
}

// Outward-rounded enclosure of 1/x for dyadic x != 0.
std::pair<double, double> reciprocal_enclosure(const Dyadic& x) {
  const double r = quotient_to_double(Dyadic(1), x);
  return {down(down(r)), up(up(r))};
}

// Real-line position used for sorting: pre-image value for direct roots,
// reciprocal otherwise.
double position(const ExactRoot& r) { return r.approximate(); }
double position(const IsolatingInterval& i) {
  const auto [lo, hi] = i.approximate_bounds();
  if (std::isinf(lo)) return hi;
  if (std::isinf(hi)) return lo;
  return 0.5 * (lo + hi);
}

struct Pending {
  DyadicInterval interval;
  IntPolynomial image;  // positive multiple of f(lo + wid * t)
  std::size_t depth;
  std::ptrdiff_t parent;
};

}  // namespace

std::size_t SubdivisionTrace::max_width() const {
  return width_per_depth.empty() ? 0
                                 : *std::max_element(width_per_depth.begin(), width_per_depth.end());
}

std::pair<double, double> IsolatingInterval::approximate_bounds() const {
  const Dyadic& lo = interval.lo();
  const Dyadic& hi = interval.hi();
  if (!inverted) return {lower(lo), upper(hi)};
  // Pre-image (lo, hi) lies on one side of zero; image is (1/hi, 1/lo).
  const double inf = std::numeric_limits<double>::infinity();
  const double a = hi.is_zero() ? -inf : reciprocal_enclosure(hi).first;
  const double b = lo.is_zero() ? inf : reciprocal_enclosure(lo).second;
  return {a, b};
}

double ExactRoot::approximate() const {
  return inverted ? quotient_to_double(Dyadic(1), value) : value.to_double();
}

IsolationResult isolate_interval(const IntPolynomial& f, const DyadicInterval& J0) {
  require_nonzero(f);
  const auto start = std::chrono::steady_clock::now();

  IsolationResult result;
  SubdivisionTrace& trace = result.trace;
  trace.square_free = square_free_part(f);
  const IntPolynomial& g = trace.square_free;

  std::deque<Pending> queue;
  queue.push_back({J0, interval_image(g, J0), 0, -1});
  while (!queue.empty()) {
    Pending node = std::move(queue.front());
    queue.pop_front();

    const std::size_t v = var_count(taylor_shift(reciprocal(node.image), BigInt(1)));
    const auto index = static_cast<std::ptrdiff_t>(trace.nodes.size());
    trace.nodes.push_back({node.interval, v, node.depth, node.parent});
    if (trace.width_per_depth.size() <= node.depth) trace.width_per_depth.resize(node.depth + 1, 0);
    ++trace.width_per_depth[node.depth];

    if (v == 0) continue;
    if (v == 1) {
      result.intervals.push_back({node.interval, false});
      continue;
    }
    const Dyadic m = node.interval.midpoint();
    if (evaluate(g, m).is_zero()) result.exact_roots.push_back({m, false});
    // Left half: 2^d g(t/2); right half: 2^d g((t+1)/2).
    IntPolynomial left = strip_power_of_two(homothety(node.image, 1));
    IntPolynomial right = strip_power_of_two(taylor_shift(left, BigInt(1)));
    queue.push_back({node.interval.left_half(), std::move(left), node.depth + 1, index});
    queue.push_back({node.interval.right_half(), std::move(right), node.depth + 1, index});
  }

  trace.node_count = trace.nodes.size();
  trace.depth = trace.width_per_depth.size() - 1;
  std::sort(result.intervals.begin(), result.intervals.end(),
            [](const auto& a, const auto& b) { return a.interval.lo() < b.interval.lo(); });
  std::sort(result.exact_roots.begin(), result.exact_roots.end(),
            [](const auto& a, const auto& b) { return a.value < b.value; });
  trace.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

IsolationResult isolate_unit(const IntPolynomial& f) { return isolate_interval(f, unit_interval()); }

IsolationResult isolate_all(const IntPolynomial& f) {
  IsolationResult result = isolate_unit(f);
  const IntPolynomial& g = result.trace.square_free;

  for (long endpoint : {-1L, 1L})
    if (evaluate(g, Dyadic(endpoint)).is_zero()) result.exact_roots.push_back({Dyadic(endpoint), false});

  // R(g) never vanishes at 0 (its constant term is lc(g)), so the two
  // halves cover every root of R(g) in (-1, 1).
  const IntPolynomial rg = reciprocal(g);
  for (const DyadicInterval& half : {DyadicInterval(Dyadic(-1), Dyadic(0)),
                                    DyadicInterval(Dyadic(0), Dyadic(1))}) {
    IsolationResult outer = isolate_interval(rg, half);
    for (auto& iv : outer.intervals) result.intervals.push_back({iv.interval, true});
    for (auto& r : outer.exact_roots) result.exact_roots.push_back({r.value, true});
    result.outer_traces.push_back(std::move(outer.trace));
  }

  std::sort(result.intervals.begin(), result.intervals.end(),
            [](const auto& a, const auto& b) { return position(a) < position(b); });
  std::sort(result.exact_roots.begin(), result.exact_roots.end(),
            [](const auto& a, const auto& b) { return position(a) < position(b); });
  return result;
}

}  // namespace descartes

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "descartes/dyadic.hpp"
#include "descartes/polynomial.hpp"

namespace descartes {

/// One processed node of the subdivision tree.
struct NodeRecord {
  DyadicInterval interval;
  std::size_t var = 0;
  std::size_t depth = 0;
  /// Index of the parent in SubdivisionTrace::nodes, -1 for the root.
  std::ptrdiff_t parent = -1;
};

/// Size statistics of one Descartes run, in FIFO processing order.
struct SubdivisionTrace {
  std::size_t node_count = 0;
  std::size_t depth = 0;
  std::vector<std::size_t> width_per_depth;
  std::vector<NodeRecord> nodes;
  double wall_time = 0.0;  // seconds
  /// The square-free polynomial the subdivision actually ran on.
  IntPolynomial square_free;

  std::size_t max_width() const;
};

/// An isolating interval. When `inverted` is set the interval is the
/// pre-image under x -> 1/x: the root lies in (1/hi, 1/lo), with 1/0
/// read as the matching infinity.
struct IsolatingInterval {
  DyadicInterval interval;
  bool inverted = false;

  /// Outward-rounded double bounds of the actual root interval.
  std::pair<double, double> approximate_bounds() const;
};

/// A root hit exactly by the endpoint or midpoint tests. When `inverted`
/// is set the root is 1/value.
struct ExactRoot {
  Dyadic value;
  bool inverted = false;

  double approximate() const;
};

struct IsolationResult {
  std::vector<IsolatingInterval> intervals;
  std::vector<ExactRoot> exact_roots;
  /// Subdivision of (-1, 1).
  SubdivisionTrace trace;
  /// Subdivisions of (-1, 0) and (0, 1) for the reciprocal polynomial
  /// (isolate_all only).
  std::vector<SubdivisionTrace> outer_traces;

  std::size_t root_count() const { return intervals.size() + exact_roots.size(); }
};

/// Descartes subdivision of J0 for the square-free part of f, FIFO queue.
/// Roots on the boundary of J0 are not reported.
IsolationResult isolate_interval(const IntPolynomial& f, const DyadicInterval& J0);

/// Real roots of f in (-1, 1).
IsolationResult isolate_unit(const IntPolynomial& f);

/// All real roots of f: (-1, 1) directly, +-1 by exact evaluation, and the
/// rest through the reciprocal polynomial on (-1, 0) and (0, 1).
/// Results are ordered by position on the real line.
IsolationResult isolate_all(const IntPolynomial& f);

}  // namespace descartes

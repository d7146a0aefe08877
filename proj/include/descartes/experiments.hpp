#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "descartes/condition.hpp"
#include "descartes/random_models.hpp"

namespace descartes {

/// Which measurements a trial performs.
struct TrialMeasures {
  bool solve = false;       // subdivision tree
  bool condition = false;   // certified cond_R bracket
  bool local_at_zero = false;
  bool roots = false;       // rho bound and oracle count
};

/// One sampled polynomial and what was measured on it. Measurements run on
/// the square-free part (identical to f for square-free samples) with the
/// model degree as the ambient degree.
struct TrialRecord {
  std::size_t trial_index = 0;
  int d = 0;
  std::string model;
  std::optional<std::size_t> node_count;
  std::optional<std::size_t> depth;
  std::optional<std::size_t> max_width;
  std::optional<double> cond_lower;
  std::optional<double> cond_upper;
  std::optional<bool> cond_certified;
  std::optional<double> cond_at_zero;
  std::optional<double> rho_bound;
  std::optional<std::size_t> rho_min;
  std::optional<std::size_t> rho_max;
  /// ceil(lg(12 d cond_upper)) + 2, when cond_upper is finite.
  std::optional<std::size_t> depth_bound;
  /// node_count / (max(1, rho)^2 max(1, lg cond_upper) lg^2 d).
  std::optional<double> instance_ratio;
  double wall_time = 0.0;
};

/// Nearest-rank order statistics of one column.
struct ColumnSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double min = 0.0;
  double median = 0.0;
  double q90 = 0.0;
  double q99 = 0.0;
  double max = 0.0;
};

ColumnSummary summarize(std::vector<double> values);
/// Nearest-rank quantile of a non-empty sorted sample: element ceil(p n) - 1.
double nearest_rank(const std::vector<double>& sorted, double p);

struct DegreeSummary {
  int d = 0;
  std::map<std::string, ColumnSummary> columns;
  /// Reference growth curve (lg^3 d for step counts).
  double theory = 0.0;
};

/// Empirical survival P(X >= t) against a theoretical upper bound.
struct CurvePoint {
  double t = 0.0;
  double empirical = 0.0;
  double theoretical = 0.0;
  bool pass = true;
};

struct ExperimentReport {
  std::string kind;
  std::vector<std::string> models;
  std::vector<int> degrees;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<TrialRecord> rows;  // sorted by (d, trial_index)
  std::vector<DegreeSummary> per_degree;
  std::vector<CurvePoint> curve;
  std::vector<CurvePoint> local_curve;
  std::map<std::string, double> metrics;
  std::vector<std::string> notes;
  bool pass = true;
  bool include_timing = false;
};

struct ExperimentOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  BracketOptions bracket;
  bool include_timing = false;
};

using ModelFamily = std::function<RandomModel(int d)>;

/// Runs trial_index = 0..trials-1 of one model over `threads` workers and
/// returns rows in index order. Row i depends only on (model, seed, i).
std::vector<TrialRecord> run_trials(const RandomModel& model, const TrialMeasures& measures,
                                    const ExperimentOptions& options);

TrialRecord run_trial(const RandomModel& model, std::uint64_t seed, std::size_t index,
                      const TrialMeasures& measures, const BracketOptions& bracket = {});

/// Step counts versus degree. pass: measured depth <= depth_bound on every
/// trial with a finite bracket. metrics["growth_ratio"] is
/// mean node_count at the last degree over the first.
ExperimentReport run_steps_scaling(const ModelFamily& family, const std::vector<int>& degrees,
                                   const ExperimentOptions& options);

/// Tail of cond_R (certified lower bracket) against min(1, 32 d^4 e^(2u) / t),
/// and of cond(f, 0) against min(1, 16 d^3 e^(2u) / t^2). An empty t_grid
/// means t = 2, 4, ..., 2^(tau+1) (local curve stops at 2^tau).
ExperimentReport run_cond_tail(const RandomModel& model, std::vector<double> t_grid,
                               const ExperimentOptions& options);

/// Tail of varrho (upper end of the ambiguity range) against
/// min(1, 44 d^2 (2N+1) e^u e^(-t/(2N+1))) for t = 1..tau(2N+1), plus the
/// ensemble comparison mean varrho <= mean rho_upper_bound.
ExperimentReport run_rho_check(const RandomModel& model, const ExperimentOptions& options);

/// Distribution of node_count / (rho^2 lg cond_upper lg^2 d); pass when the
/// 99th percentile is below `constant`.
ExperimentReport run_instance_bound(const RandomModel& model, const ExperimentOptions& options,
                                    double constant = 64.0);

/// Fixed CSV header, one line per row.
void write_csv(std::ostream& out, const ExperimentReport& report);
std::string csv_header(bool include_timing);

}  // namespace descartes

#include "descartes/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <thread>

#include "descartes/errors.hpp"
#include "descartes/region_roots.hpp"
#include "descartes/solver.hpp"

namespace descartes {

namespace {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
std::string cell(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, double>)
    return format_double(*v);
  else if constexpr (std::is_same_v<T, bool>)
    return *v ? "1" : "0";
  else
    return std::to_string(*v);
}

template <typename Get>
std::vector<double> column(const std::vector<TrialRecord>& rows, Get get) {
  std::vector<double> out;
  for (const auto& r : rows)
    if (auto v = get(r)) out.push_back(static_cast<double>(*v));
  return out;
}

double lg(double x) { return std::log2(x); }

DegreeSummary summarize_degree(int d, const std::vector<TrialRecord>& rows, bool timing) {
  DegreeSummary s;
  s.d = d;
  auto add = [&](const char* name, std::vector<double> values) {
    if (!values.empty()) s.columns[name] = summarize(std::move(values));
  };
  add("node_count", column(rows, [](const TrialRecord& r) { return r.node_count; }));
  add("depth", column(rows, [](const TrialRecord& r) { return r.depth; }));
  add("max_width", column(rows, [](const TrialRecord& r) { return r.max_width; }));
  add("cond_lower", column(rows, [](const TrialRecord& r) { return r.cond_lower; }));
  add("rho_max", column(rows, [](const TrialRecord& r) { return r.rho_max; }));
  add("rho_bound", column(rows, [](const TrialRecord& r) -> std::optional<double> {
        if (r.rho_bound && std::isfinite(*r.rho_bound)) return r.rho_bound;
        return std::nullopt;
      }));
  add("instance_ratio", column(rows, [](const TrialRecord& r) { return r.instance_ratio; }));
  if (timing)
    add("wall_time", column(rows, [](const TrialRecord& r) { return std::optional<double>(r.wall_time); }));
  const double l = lg(std::max(d, 2));
  s.theory = l * l * l;
  return s;
}

}  // namespace

double nearest_rank(const std::vector<double>& sorted, double p) {
  const auto n = sorted.size();
  auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  return sorted[rank - 1];
}

ColumnSummary summarize(std::vector<double> values) {
  ColumnSummary s;
  s.count = values.size();
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.max = values.back();
  s.median = nearest_rank(values, 0.5);
  s.q90 = nearest_rank(values, 0.9);
  s.q99 = nearest_rank(values, 0.99);
  return s;
}

TrialRecord run_trial(const RandomModel& model, std::uint64_t seed, std::size_t index,
                      const TrialMeasures& measures, const BracketOptions& bracket_options) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.trial_index = index;
  rec.d = model.degree;
  rec.model = model.describe();

  const IntPolynomial f = sample(model, seed, index);
  if (f.is_zero()) return rec;
  const IntPolynomial g = square_free_part(f);
  const int ctx = g.degree() == f.degree() ? std::max(model.degree, g.degree()) : g.degree();

  if (measures.solve) {
    const IsolationResult res = isolate_unit(g);
    rec.node_count = res.trace.node_count;
    rec.depth = res.trace.depth;
    rec.max_width = res.trace.max_width();
  }
  if (measures.condition) {
    const CondBracket b = global_cond_bracket(g, bracket_options, ctx);
    rec.cond_lower = b.lower;
    rec.cond_upper = b.upper;
    rec.cond_certified = b.achieved;
    if (b.finite())
      rec.depth_bound = static_cast<std::size_t>(std::ceil(lg(12.0 * std::max(ctx, 1) * b.upper))) + 2;
  }
  if (measures.local_at_zero) rec.cond_at_zero = ConditionEvaluator(g, ctx).cond(Dyadic(0));
  if (measures.roots) {
    const int rctx = std::max(2, ctx);
    rec.rho_bound = rho_upper_bound(g, rctx);
    try {
      const CountRange range = count_roots_in_omega(g, rctx);
      rec.rho_min = range.min;
      rec.rho_max = range.max;
    } catch (const NoConvergenceError&) {
      // Left empty; reported as an oracle failure.
    }
  }
  if (rec.node_count && rec.cond_upper && rec.rho_max) {
    const double rho = std::max<double>(1.0, static_cast<double>(*rec.rho_max));
    const double lgc = std::max(1.0, lg(*rec.cond_upper));
    const double lgd = lg(std::max(model.degree, 2));
    rec.instance_ratio = static_cast<double>(*rec.node_count) / (rho * rho * lgc * lgd * lgd);
  }
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::vector<TrialRecord> run_trials(const RandomModel& model, const TrialMeasures& measures,
                                    const ExperimentOptions& options) {
  model.validate();
  std::vector<TrialRecord> rows(options.trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < options.trials; i = next++)
      rows[i] = run_trial(model, options.seed, i, measures, options.bracket);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(options.trials)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  return rows;
}

ExperimentReport run_steps_scaling(const ModelFamily& family, const std::vector<int>& degrees,
                                   const ExperimentOptions& options) {
  ExperimentReport report;
  report.kind = "steps";
  report.degrees = degrees;
  report.trials = options.trials;
  report.seed = options.seed;
  report.include_timing = options.include_timing;

  std::size_t violations = 0;
  std::size_t unbounded = 0;
  for (int d : degrees) {
    const RandomModel model = family(d);
    report.models.push_back(model.describe());
    const double tau_needed = 4 * std::log2(d) + 2 * uniformity(model).value + 8;
    if (static_cast<double>(tau_bound(model)) < tau_needed)
      report.notes.push_back("d = " + std::to_string(d) + ": tau below 4 lg d + 2u + 8 = " +
                             format_double(tau_needed) + "; expected-steps hypothesis not met");
    auto rows = run_trials(model, {.solve = true, .condition = true}, options);
    for (const auto& r : rows) {
      if (!r.depth) continue;
      if (!r.depth_bound)
        ++unbounded;
      else if (*r.depth > *r.depth_bound)
        ++violations;
    }
    report.per_degree.push_back(summarize_degree(d, rows, options.include_timing));
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  }
  if (!report.per_degree.empty()) {
    const auto& first = report.per_degree.front().columns["node_count"];
    const auto& last = report.per_degree.back().columns["node_count"];
    report.metrics["growth_ratio"] = last.mean / first.mean;
  }
  report.metrics["depth_violations"] = static_cast<double>(violations);
  report.metrics["unbounded_condition"] = static_cast<double>(unbounded);
  report.pass = violations == 0;
  return report;
}

ExperimentReport run_cond_tail(const RandomModel& model, std::vector<double> t_grid,
                               const ExperimentOptions& options) {
  ExperimentReport report;
  report.kind = "cond-tail";
  report.models = {model.describe()};
  report.degrees = {model.degree};
  report.trials = options.trials;
  report.seed = options.seed;
  report.include_timing = options.include_timing;

  const double d = model.degree;
  const Uniformity u = uniformity(model);
  const std::uint64_t tau = tau_bound(model);
  const double t_max = std::ldexp(1.0, static_cast<int>(std::min<std::uint64_t>(tau + 1, 1000)));
  if (!u.exact) report.notes.push_back("uniformity is an upper bound");
  if (t_grid.empty())
    for (std::uint64_t k = 1; k <= tau + 1 && k <= 1000; ++k) t_grid.push_back(std::ldexp(1.0, static_cast<int>(k)));

  report.rows = run_trials(model, {.condition = true, .local_at_zero = true}, options);
  report.per_degree.push_back(summarize_degree(model.degree, report.rows, options.include_timing));
  const auto n = static_cast<double>(report.rows.size());

  const double global_scale = 32.0 * std::pow(d, 4) * std::exp(2 * u.value);
  const double local_scale = 16.0 * std::pow(d, 3) * std::exp(2 * u.value);
  for (double t : t_grid) {
    if (t <= 1.0 || t > t_max) {
      report.notes.push_back("t = " + format_double(t) + " outside (1, 2^(tau+1)], skipped");
      continue;
    }
    CurvePoint g;
    g.t = t;
    g.empirical = static_cast<double>(std::count_if(report.rows.begin(), report.rows.end(),
                                                    [&](const TrialRecord& r) { return r.cond_lower.value_or(0.0) >= t; })) /
                  n;
    g.theoretical = std::min(1.0, global_scale / t);
    g.pass = g.empirical <= g.theoretical;
    report.curve.push_back(g);
    if (t <= 0.5 * t_max) {
      CurvePoint l;
      l.t = t;
      l.empirical = static_cast<double>(std::count_if(report.rows.begin(), report.rows.end(),
                                                      [&](const TrialRecord& r) { return r.cond_at_zero.value_or(0.0) >= t; })) /
                    n;
      l.theoretical = std::min(1.0, local_scale / (t * t));
      l.pass = l.empirical <= l.theoretical;
      report.local_curve.push_back(l);
    }
  }
  report.pass = std::all_of(report.curve.begin(), report.curve.end(), [](const auto& p) { return p.pass; }) &&
                std::all_of(report.local_curve.begin(), report.local_curve.end(),
                            [](const auto& p) { return p.pass; });
  report.metrics["uniformity"] = u.value;
  report.metrics["certified_fraction"] =
      static_cast<double>(std::count_if(report.rows.begin(), report.rows.end(),
                                        [](const TrialRecord& r) { return r.cond_certified.value_or(false); })) /
      n;
  return report;
}

ExperimentReport run_rho_check(const RandomModel& model, const ExperimentOptions& options) {
  ExperimentReport report;
  report.kind = "rho";
  report.models = {model.describe()};
  report.degrees = {model.degree};
  report.trials = options.trials;
  report.seed = options.seed;
  report.include_timing = options.include_timing;

  const int d = std::max(2, model.degree);
  const Uniformity u = uniformity(model);
  const std::uint64_t tau = tau_bound(model);
  const int width = 2 * ceil_lg(d) + 1;
  if (static_cast<double>(tau) < 10.0 * std::log(std::numbers::e * d) + 2 * u.value)
    report.notes.push_back("tau below 10 ln(ed) + 2u; moment bound hypothesis not met");
  if (!u.exact) report.notes.push_back("uniformity is an upper bound");

  report.rows = run_trials(model, {.roots = true}, options);
  report.per_degree.push_back(summarize_degree(model.degree, report.rows, options.include_timing));

  std::vector<double> rho;
  std::vector<double> bound;
  std::size_t failures = 0;
  for (const auto& r : report.rows) {
    if (!r.rho_max) {
      ++failures;
      continue;
    }
    rho.push_back(static_cast<double>(*r.rho_max));
    if (r.rho_bound && std::isfinite(*r.rho_bound)) bound.push_back(*r.rho_bound);
  }
  const auto n = static_cast<double>(rho.size());
  const double scale = 44.0 * d * d * width * std::exp(u.value);
  for (std::uint64_t t = 1; t <= tau * static_cast<std::uint64_t>(width); ++t) {
    CurvePoint p;
    p.t = static_cast<double>(t);
    p.empirical = static_cast<double>(std::count_if(rho.begin(), rho.end(), [&](double r) { return r >= p.t; })) / n;
    p.theoretical = std::min(1.0, scale * std::exp(-p.t / width));
    p.pass = p.empirical <= p.theoretical;
    report.curve.push_back(p);
  }
  const double mean_rho = std::accumulate(rho.begin(), rho.end(), 0.0) / n;
  const double second = std::accumulate(rho.begin(), rho.end(), 0.0, [](double a, double r) { return a + r * r; }) / n;
  const double mean_bound = bound.empty() ? 0.0 : std::accumulate(bound.begin(), bound.end(), 0.0) / static_cast<double>(bound.size());
  const double lgd = lg(d);
  report.metrics["mean_rho"] = mean_rho;
  report.metrics["second_moment_rho"] = second;
  report.metrics["mean_rho_bound"] = mean_bound;
  report.metrics["fitted_C"] = mean_rho / (lgd * lgd);
  report.metrics["oracle_failures"] = static_cast<double>(failures);
  report.metrics["uniformity"] = u.value;
  report.pass = failures == 0 && mean_rho <= mean_bound &&
                std::all_of(report.curve.begin(), report.curve.end(), [](const auto& p) { return p.pass; });
  return report;
}

ExperimentReport run_instance_bound(const RandomModel& model, const ExperimentOptions& options,
                                    double constant) {
  ExperimentReport report;
  report.kind = "instance";
  report.models = {model.describe()};
  report.degrees = {model.degree};
  report.trials = options.trials;
  report.seed = options.seed;
  report.include_timing = options.include_timing;

  report.rows = run_trials(model, {.solve = true, .condition = true, .roots = true}, options);
  report.per_degree.push_back(summarize_degree(model.degree, report.rows, options.include_timing));
  std::vector<double> ratios = column(report.rows, [](const TrialRecord& r) { return r.instance_ratio; });
  const ColumnSummary s = summarize(ratios);
  report.metrics["constant"] = constant;
  report.metrics["q99_ratio"] = s.q99;
  report.metrics["max_ratio"] = s.max;
  report.metrics["mean_ratio"] = s.mean;
  report.metrics["missing_ratio"] = static_cast<double>(report.rows.size() - ratios.size());
  report.pass = !ratios.empty() && ratios.size() == report.rows.size() && s.q99 < constant;
  return report;
}

std::string csv_header(bool include_timing) {
  std::string h =
      "trial_index,d,model,node_count,depth,max_width,cond_lower,cond_upper,cond_certified,"
      "cond_at_zero,rho_bound,rho_min,rho_max,depth_bound,instance_ratio";
  if (include_timing) h += ",wall_time";
  return h;
}

void write_csv(std::ostream& out, const ExperimentReport& report) {
  out << csv_header(report.include_timing) << '\n';
  for (const auto& r : report.rows) {
    out << r.trial_index << ',' << r.d << ",\"" << r.model << "\"," << cell(r.node_count) << ','
        << cell(r.depth) << ',' << cell(r.max_width) << ',' << cell(r.cond_lower) << ','
        << cell(r.cond_upper) << ',' << cell(r.cond_certified) << ',' << cell(r.cond_at_zero) << ','
        << cell(r.rho_bound) << ',' << cell(r.rho_min) << ',' << cell(r.rho_max) << ','
        << cell(r.depth_bound) << ',' << cell(r.instance_ratio);
    if (report.include_timing) out << ',' << format_double(r.wall_time);
    out << '\n';
  }
}

}  // namespace descartes

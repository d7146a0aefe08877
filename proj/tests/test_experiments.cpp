#include <doctest.h>

#include <cmath>
#include <sstream>

#include "descartes/experiments.hpp"
#include "descartes/random_models.hpp"

using namespace descartes;

TEST_CASE("nearest-rank quantiles") {
  const std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  CHECK(nearest_rank(v, 0.5) == 5);
  CHECK(nearest_rank(v, 0.9) == 9);
  CHECK(nearest_rank(v, 0.99) == 10);
  CHECK(nearest_rank(v, 0.0) == 1);
  const ColumnSummary s = summarize({4, 1, 3, 2});
  CHECK(s.count == 4);
  CHECK(s.mean == 2.5);
  CHECK(s.min == 1);
  CHECK(s.median == 2);
  CHECK(s.max == 4);
  CHECK(summarize({}).count == 0);
}

TEST_CASE("trials do not depend on thread count") {
  const auto m = RandomModel::uniform(12, 16);
  TrialMeasures all{true, true, true, true};
  ExperimentOptions one;
  one.trials = 24;
  one.seed = 99;
  ExperimentOptions many = one;
  many.threads = 4;
  const auto a = run_trials(m, all, one);
  const auto b = run_trials(m, all, many);
  REQUIRE(a.size() == 24);
  REQUIRE(b.size() == 24);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].trial_index == i);
    CHECK(a[i].node_count == b[i].node_count);
    CHECK(a[i].cond_upper == b[i].cond_upper);
    CHECK(a[i].rho_bound == b[i].rho_bound);
    CHECK(a[i].rho_max == b[i].rho_max);
    CHECK(a[i].instance_ratio == b[i].instance_ratio);
  }
  const auto single = run_trial(m, 99, 7, all, one.bracket);
  CHECK(single.node_count == a[7].node_count);
  CHECK(single.depth_bound == a[7].depth_bound);
}

TEST_CASE("trial fields") {
  const auto m = RandomModel::uniform(16, 20);
  const auto r = run_trial(m, 3, 0, {true, true, false, false});
  REQUIRE(r.node_count);
  REQUIRE(r.cond_upper);
  CHECK(r.d == 16);
  CHECK(r.model == m.describe());
  CHECK_FALSE(r.rho_bound);
  if (std::isfinite(*r.cond_upper)) {
    REQUIRE(r.depth_bound);
    CHECK(*r.depth_bound == static_cast<std::size_t>(std::ceil(std::log2(12.0 * 16 * *r.cond_upper))) + 2);
    CHECK(*r.depth <= *r.depth_bound);
  }
}

TEST_CASE("CSV output is stable") {
  const auto m = RandomModel::uniform(8, 12);
  ExperimentOptions opts;
  opts.trials = 10;
  opts.seed = 5;
  const auto report = run_steps_scaling([](int d) { return RandomModel::uniform(d, 12); }, {8, 16}, opts);
  CHECK(report.rows.size() == 20);
  CHECK(report.per_degree.size() == 2);
  CHECK(report.metrics.count("growth_ratio") == 1);
  std::ostringstream a, b;
  write_csv(a, report);
  write_csv(b, run_steps_scaling([](int d) { return RandomModel::uniform(d, 12); }, {8, 16}, opts));
  CHECK(a.str() == b.str());
  std::istringstream lines(a.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == csv_header(false));
  CHECK(header.find("wall_time") == std::string::npos);
  CHECK(csv_header(true).find("wall_time") != std::string::npos);
  std::size_t n = 0;
  for (std::string line; std::getline(lines, line);) {
    ++n;
    CHECK(line.find("\"uniform(d=") != std::string::npos);
  }
  CHECK(n == 20);
}

TEST_CASE("tail experiments produce curves") {
  ExperimentOptions opts;
  opts.trials = 30;
  const auto tail = run_cond_tail(RandomModel::uniform(8, 16), {}, opts);
  CHECK(tail.curve.size() == 17);
  CHECK(tail.local_curve.size() == 16);
  for (const auto& p : tail.curve) {
    CHECK(p.empirical >= 0);
    CHECK(p.empirical <= 1);
    CHECK(p.theoretical <= 1);
  }
  for (std::size_t i = 1; i < tail.curve.size(); ++i) CHECK(tail.curve[i].empirical <= tail.curve[i - 1].empirical);

  const auto rho = run_rho_check(RandomModel::uniform(8, 8), opts);
  CHECK(rho.curve.size() == 8 * 7);
  CHECK(rho.metrics.at("mean_rho") <= rho.metrics.at("mean_rho_bound"));
  CHECK(rho.metrics.at("oracle_failures") == 0);

  const auto inst = run_instance_bound(RandomModel::uniform(16, 16), opts, 64);
  CHECK(inst.metrics.count("q99_ratio") == 1);
  CHECK(inst.pass == (inst.metrics.at("q99_ratio") < 64));
}

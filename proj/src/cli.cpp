#include "descartes/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "descartes/condition.hpp"
#include "descartes/errors.hpp"
#include "descartes/experiments.hpp"
#include "descartes/json_io.hpp"
#include "descartes/random_models.hpp"
#include "descartes/region_roots.hpp"
#include "descartes/solver.hpp"

namespace descartes::cli {

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 20240229;

struct PolySource {
  std::string coeffs;
  std::string input;
};

struct ModelFlags {
  std::string model = "uniform";
  int degree = 0;
  std::uint64_t bitsize = 32;
  std::string support;
  std::string signs;
  std::string sigma = "1";
  std::string base_poly;
  std::string perturbation = "uniform";
};

std::vector<IntPolynomial> load(const PolySource& src) {
  if (!src.coeffs.empty()) return {IntPolynomial::parse(src.coeffs)};
  std::ifstream in(src.input);
  if (!in) throw ParseError("cannot open " + src.input);
  auto polys = read_polynomials(in);
  if (polys.empty()) throw ParseError("no polynomial in " + src.input);
  return polys;
}

std::vector<int> cycle_signs(const std::vector<int>& pattern, int d) {
  if (pattern.empty()) throw InvalidModelError("--signs is required for the signs model");
  std::vector<int> out(static_cast<std::size_t>(d) + 1);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = pattern[i % pattern.size()];
  return out;
}

RandomModel build_model(const ModelFlags& m, int d) {
  const ModelKind kind = parse_model_kind(m.model);
  switch (kind) {
    case ModelKind::uniform:
      return RandomModel::uniform(d, m.bitsize);
    case ModelKind::support:
      if (m.support.empty()) throw InvalidModelError("--support is required for the support model");
      return RandomModel::with_support(d, m.bitsize, parse_support(m.support));
    case ModelKind::signs:
      return RandomModel::with_signs(d, m.bitsize, cycle_signs(parse_signs(m.signs), d));
    case ModelKind::exact_bitsize:
      return RandomModel::exact_bitsize(d, m.bitsize);
    case ModelKind::smoothed: {
      if (m.base_poly.empty()) throw InvalidModelError("--base-poly is required for the smoothed model");
      const IntPolynomial base = load({"", m.base_poly}).front();
      BigInt sigma;
      if (sigma.set_str(m.sigma, 10) != 0) throw InvalidModelError("bad --sigma '" + m.sigma + "'");
      ModelFlags inner = m;
      inner.model = m.perturbation;
      if (parse_model_kind(inner.model) == ModelKind::smoothed)
        throw InvalidModelError("perturbation model cannot be smoothed");
      return RandomModel::smoothed(base, sigma, build_model(inner, d));
    }
  }
  throw InvalidModelError("unknown model");
}

void add_model_flags(CLI::App* app, ModelFlags& m, bool with_degree) {
  app->add_option("--model", m.model, "uniform|support|signs|exactbits|smoothed")->capture_default_str();
  if (with_degree) app->add_option("--degree", m.degree, "Polynomial degree d")->required();
  app->add_option("--bitsize", m.bitsize, "Coefficient bitsize tau")->capture_default_str();
  app->add_option("--support", m.support, "Support set A, e.g. \"0,1,5,9,10\"");
  app->add_option("--signs", m.signs, "Sign pattern, e.g. \"+-+\" (repeated to length d+1)");
  app->add_option("--sigma", m.sigma, "Smoothed model: nonzero integer scale")->capture_default_str();
  app->add_option("--base-poly", m.base_poly, "Smoothed model: file holding the fixed polynomial");
  app->add_option("--perturbation", m.perturbation, "Smoothed model: random part model")->capture_default_str();
}

void add_poly_source(CLI::App* app, PolySource& src) {
  auto* c = app->add_option("--coeffs", src.coeffs, "Coefficients c_0 c_1 ... c_d (constant term first)");
  auto* i = app->add_option("--input", src.input, "File with one polynomial per line (c_0 ... c_d)");
  c->excludes(i);
  i->excludes(c);
}

// Writes to --out when given, otherwise to the provided stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ParseError("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

json analyze_one(const IntPolynomial& f, const BracketOptions& options) {
  require_nonzero(f);
  const int d = f.degree();
  json j{{"polynomial", f}, {"degree", d}, {"one_norm", one_norm(f).get_str()}, {"bitsize", bitsize_tau(f)}};
  const CondBracket b = global_cond_bracket(f, options);
  j["cond"] = bracket_to_json(b);
  double eps = 0.0;
  if (b.finite()) {
    j["separation_bound"] = separation_lower_bound(std::max(d, 1), b.upper);
    eps = separation_epsilon(std::max(d, 1), b.upper);
    j["epsilon"] = eps;
  } else {
    j["separation_bound"] = nullptr;
    j["epsilon"] = nullptr;
  }
  j["rho_bound"] = number_or_null(rho_upper_bound(f, std::max(2, d)));
  const CountRange range = count_roots_in_omega(f, std::max(2, d));
  j["rho_count"] = {{"min", range.min}, {"max", range.max}};
  j["separation"] = number_or_null(eps_real_separation(f, eps));
  return j;
}

std::vector<int> parse_degrees(const std::string& text) {
  std::vector<int> out;
  for (int v : parse_support(text)) {
    if (v < 1) throw InvalidModelError("degrees must be positive");
    out.push_back(v);
  }
  if (out.empty()) throw InvalidModelError("--degrees is empty");
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ParseError("bad --t-grid entry '" + tok + "'");
    }
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact real root isolation with the Descartes subdivision solver"};
  app.require_subcommand(1);
  std::string out_path;

  // isolate
  PolySource iso_src;
  bool unit_only = false;
  bool with_nodes = false;
  auto* iso = app.add_subcommand("isolate", "Isolate the real roots of integer polynomials");
  add_poly_source(iso, iso_src);
  iso->add_flag("--unit", unit_only, "Only roots in (-1, 1)");
  iso->add_flag("--nodes", with_nodes, "Include every subdivision node in the trace");
  iso->add_option("--out", out_path, "Output file (default stdout)");

  // analyze
  PolySource an_src;
  BracketOptions bracket;
  auto* an = app.add_subcommand("analyze", "Condition bracket, separation and root-count bounds");
  add_poly_source(an, an_src);
  an->add_option("--rel-tol", bracket.rel_tol, "Relative tolerance of the cond bracket")->capture_default_str();
  an->add_option("--max-grid", bracket.max_grid, "Evaluation budget of the cond bracket")->capture_default_str();
  an->add_option("--out", out_path, "Output file (default stdout)");

  // gen
  ModelFlags gen_model;
  std::uint64_t seed = kDefaultSeed;
  std::size_t count = 1;
  auto* gen = app.add_subcommand("gen", "Sample random bit polynomials");
  add_model_flags(gen, gen_model, true);
  gen->add_option("--seed", seed, "Random seed")->capture_default_str();
  gen->add_option("--count", count, "Number of polynomials")->capture_default_str();
  gen->add_option("--out", out_path, "Output file (default stdout)");

  // experiment
  ModelFlags exp_model;
  std::string kind;
  std::string degrees = "16,64";
  std::string t_grid;
  std::string out_dir;
  std::string format = "json";
  double constant = 64.0;
  ExperimentOptions exp_options;
  exp_options.seed = kDefaultSeed;
  auto* ex = app.add_subcommand("experiment", "Monte Carlo validation experiments");
  ex->add_option("kind", kind, "steps|cond-tail|rho|instance")
      ->required()
      ->check(CLI::IsMember({"steps", "cond-tail", "rho", "instance"}));
  add_model_flags(ex, exp_model, false);
  ex->add_option("--degrees", degrees, "Comma-separated degrees (first one used by single-degree kinds)")
      ->capture_default_str();
  ex->add_option("--trials", exp_options.trials, "Trials per degree")->capture_default_str();
  ex->add_option("--seed", exp_options.seed, "Random seed")->capture_default_str();
  ex->add_option("--threads", exp_options.threads, "Worker threads")->capture_default_str();
  ex->add_option("--t-grid", t_grid, "cond-tail thresholds, comma-separated");
  ex->add_option("--constant", constant, "instance: pass threshold for the 99th percentile")->capture_default_str();
  ex->add_option("--out-dir", out_dir, "Write <kind>.csv and <kind>.json here");
  ex->add_option("--format", format, "stdout format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  ex->add_flag("--timing", exp_options.include_timing, "Include wall-clock columns (not reproducible)");

  std::vector<const char*> argv{"descartes"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }

  try {
    if (iso->parsed()) {
      if (iso_src.coeffs.empty() && iso_src.input.empty()) throw ParseError("--coeffs or --input is required");
      const auto polys = load(iso_src);
      json results = json::array();
      for (const auto& f : polys)
        results.push_back(isolation_to_json(unit_only ? isolate_unit(f) : isolate_all(f), with_nodes));
      Sink sink(out_path, out);
      *sink << (polys.size() == 1 && !iso_src.coeffs.empty() ? results[0] : results).dump(2) << "\n";
    } else if (an->parsed()) {
      if (an_src.coeffs.empty() && an_src.input.empty()) throw ParseError("--coeffs or --input is required");
      const auto polys = load(an_src);
      json results = json::array();
      for (const auto& f : polys) results.push_back(analyze_one(f, bracket));
      Sink sink(out_path, out);
      *sink << (polys.size() == 1 && !an_src.coeffs.empty() ? results[0] : results).dump(2) << "\n";
    } else if (gen->parsed()) {
      const RandomModel model = build_model(gen_model, gen_model.degree);
      Sink sink(out_path, out);
      for (std::size_t i = 0; i < count; ++i) *sink << sample(model, seed, i).to_string() << "\n";
    } else if (ex->parsed()) {
      const std::vector<int> ds = parse_degrees(degrees);
      ExperimentReport report;
      if (kind == "steps") {
        build_model(exp_model, ds.front());  // validate flags up front
        report = run_steps_scaling([&](int d) { return build_model(exp_model, d); }, ds, exp_options);
      } else if (kind == "cond-tail") {
        report = run_cond_tail(build_model(exp_model, ds.front()), parse_grid(t_grid), exp_options);
      } else if (kind == "rho") {
        report = run_rho_check(build_model(exp_model, ds.front()), exp_options);
      } else {
        report = run_instance_bound(build_model(exp_model, ds.front()), exp_options, constant);
      }
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        const auto base = std::filesystem::path(out_dir) / kind;
        std::ofstream csv(base.string() + ".csv");
        write_csv(csv, report);
        std::ofstream summary(base.string() + ".json");
        summary << report_to_json(report).dump(2) << "\n";
        if (!csv || !summary) throw ParseError("cannot write into " + out_dir);
        out << json{{"pass", report.pass}, {"files", {base.string() + ".csv", base.string() + ".json"}}}.dump(2)
            << "\n";
      } else if (format == "csv") {
        write_csv(out, report);
      } else {
        out << report_to_json(report).dump(2) << "\n";
      }
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const InvalidModelError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return computation_error;
  }
  return ok;
}

}  // namespace descartes::cli

#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "descartes/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = descartes::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "descartes_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("isolate") {
  const Run r = run({"isolate", "--coeffs", "-1 0 4"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["intervals"].size() == 2);
  CHECK(j["trace"]["node_count"] == 3);
  CHECK_FALSE(j["trace"].contains("nodes"));

  const Run unit = run({"isolate", "--unit", "--nodes", "--coeffs=-2 0 1"});
  REQUIRE(unit.code == 0);
  const auto ju = nlohmann::json::parse(unit.out);
  CHECK(ju["intervals"].empty());
  CHECK(ju["trace"].contains("nodes"));

  const Run all = run({"isolate", "--coeffs=-2 0 1"});
  const auto ja = nlohmann::json::parse(all.out);
  REQUIRE(ja["intervals"].size() == 2);
  CHECK(ja["intervals"][0]["inverted"] == true);
}

TEST_CASE("isolate from a file") {
  const auto path = temp_dir() / "polys.txt";
  std::ofstream(path) << "# two polynomials\n-1 0 4\n\n0 -1 0 1\n";
  const auto out = temp_dir() / "iso.json";
  const Run r = run({"isolate", "--input", path.string(), "--out", out.string()});
  REQUIRE(r.code == 0);
  std::ifstream in(out);
  const auto j = nlohmann::json::parse(in);
  REQUIRE(j.size() == 2);
  CHECK(j[1]["exact_roots"].size() == 2);
}

TEST_CASE("analyze") {
  const Run r = run({"analyze", "--coeffs", "-1 0 4"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const double lo = j["cond"]["lower"];
  const double hi = j["cond"]["upper"];
  // max cond of 4x^2 - 1 is 5 / (4 (sqrt 2 - 1) / 2).
  const double truth = 5.0 / (2.0 * (std::sqrt(2.0) - 1.0));
  CHECK(lo <= truth);
  CHECK(truth <= hi);
  CHECK(j["rho_count"]["min"] == 2);
  CHECK(j["separation"] == 1.0);
}

TEST_CASE("gen") {
  const Run a = run({"gen", "--degree", "5", "--bitsize", "8", "--count", "3", "--seed", "4"});
  const Run b = run({"gen", "--degree", "5", "--bitsize", "8", "--count", "3", "--seed", "4"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  std::istringstream lines(a.out);
  int n = 0;
  for (std::string line; std::getline(lines, line);) {
    ++n;
    std::istringstream tok(line);
    int k = 0;
    for (long v; tok >> v; ++k) CHECK(std::abs(v) <= 256);
    CHECK(k <= 6);
  }
  CHECK(n == 3);
  const Run s = run({"gen", "--degree", "6", "--model", "signs", "--signs", "+-"});
  REQUIRE(s.code == 0);
  std::istringstream tok(s.out);
  int k = 0;
  for (long v; tok >> v; ++k) CHECK(((v > 0) == (k % 2 == 0)));
  CHECK(k == 7);
}

TEST_CASE("smoothed generation") {
  const auto base = temp_dir() / "base.txt";
  std::ofstream(base) << "1 0 0 -2\n";
  const Run r = run({"gen", "--degree", "3", "--model", "smoothed", "--base-poly", base.string(), "--sigma", "3",
                     "--bitsize", "2"});
  REQUIRE(r.code == 0);
  CHECK_FALSE(r.out.empty());
}

TEST_CASE("experiment") {
  const Run r = run({"experiment", "steps", "--degrees", "8,16", "--trials", "5", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("trial_index,", 0) == 0);
  const auto dir = temp_dir() / "exp";
  const Run f = run({"experiment", "rho", "--degrees", "8", "--trials", "5", "--bitsize", "8", "--out-dir",
                     dir.string()});
  REQUIRE(f.code == 0);
  CHECK(std::filesystem::exists(dir / "rho.csv"));
  CHECK(std::filesystem::exists(dir / "rho.json"));
  const Run j = run({"experiment", "cond-tail", "--degrees", "8", "--trials", "5", "--t-grid", "2,8,64"});
  REQUIRE(j.code == 0);
  CHECK(nlohmann::json::parse(j.out)["curve"].size() == 3);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"isolate"}).code == 1);
  CHECK(run({"isolate", "--coeffs", "1 two"}).code == 1);
  CHECK(run({"isolate", "--input", "/nonexistent/file"}).code == 1);
  CHECK(run({"gen", "--degree", "4", "--model", "bogus"}).code == 1);
  CHECK(run({"gen", "--degree", "4", "--model", "support", "--support", "0,1"}).code == 1);
  CHECK(run({"experiment", "nothing"}).code == 1);
  const Run zero = run({"isolate", "--coeffs", "0 0"});
  CHECK(zero.code == 2);
  CHECK(zero.err.find("zero polynomial") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("generated polynomials round-trip through isolate") {
  const std::vector<std::string> models{"uniform", "exactbits", "signs", "support"};
  for (int i = 0; i < 100; ++i) {
    const std::string model = models[static_cast<std::size_t>(i) % models.size()];
    const int d = 2 + i % 14;
    std::vector<std::string> args{"gen", "--model", model, "--degree", std::to_string(d), "--bitsize",
                                  std::to_string(1 + i % 40), "--seed", std::to_string(i), "--count", "2"};
    if (model == "signs") args.insert(args.end(), {"--signs", "+--"});
    if (model == "support") args.insert(args.end(), {"--support", "0,1," + std::to_string(d - 1) + "," + std::to_string(d)});
    const Run g = run(args);
    REQUIRE(g.code == 0);
    const auto path = temp_dir() / "roundtrip.txt";
    std::ofstream(path) << g.out;
    const Run iso = run({"isolate", "--input", path.string()});
    CHECK(iso.code == 0);
    CHECK(nlohmann::json::parse(iso.out).size() == 2);
  }
}

TEST_CASE("identical arguments give identical bytes") {
  const std::vector<std::string> gen{"gen", "--model", "uniform", "--degree", "8", "--bitsize", "16",
                                     "--seed", "7", "--count", "3"};
  CHECK(run(gen).out == run(gen).out);
  const std::vector<std::string> exp{"experiment", "instance", "--degrees", "16", "--trials", "6", "--format", "csv"};
  CHECK(run(exp).out == run(exp).out);
  const std::vector<std::string> ana{"analyze", "--coeffs", "3 -7 0 2 5"};
  CHECK(run(ana).out == run(ana).out);
}

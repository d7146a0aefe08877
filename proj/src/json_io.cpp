#include "descartes/json_io.hpp"

#include <cmath>

namespace descartes {

using nlohmann::json;

void to_json(json& j, const Dyadic& x) { j = json{{"num", x.num().get_str()}, {"exp", x.exp()}}; }

void from_json(const json& j, Dyadic& x) {
  BigInt num;
  if (num.set_str(j.at("num").get<std::string>(), 10) != 0)
    throw std::invalid_argument("malformed dyadic numerator");
  x = Dyadic(num, j.at("exp").get<std::uint64_t>());
}

void to_json(json& j, const IntPolynomial& f) {
  json coeffs = json::array();
  for (const auto& c : f.coeffs()) coeffs.push_back(c.get_str());
  j = json{{"coeffs", coeffs}};
}

void from_json(const json& j, IntPolynomial& f) {
  std::vector<BigInt> coeffs;
  for (const auto& c : j.at("coeffs")) {
    BigInt v;
    if (v.set_str(c.get<std::string>(), 10) != 0) throw std::invalid_argument("malformed coefficient");
    coeffs.push_back(v);
  }
  f = IntPolynomial(std::move(coeffs));
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json trace_to_json(const SubdivisionTrace& trace, bool with_nodes) {
  json j{{"node_count", trace.node_count},
         {"depth", trace.depth},
         {"width_per_depth", trace.width_per_depth},
         {"max_width", trace.max_width()},
         {"square_free", trace.square_free}};
  if (with_nodes) {
    json nodes = json::array();
    for (const auto& n : trace.nodes)
      nodes.push_back({{"lo", n.interval.lo()},
                       {"hi", n.interval.hi()},
                       {"var", n.var},
                       {"depth", n.depth},
                       {"parent", n.parent}});
    j["nodes"] = nodes;
  }
  return j;
}

json isolation_to_json(const IsolationResult& result, bool with_nodes) {
  json intervals = json::array();
  for (const auto& iv : result.intervals) {
    const auto [a, b] = iv.approximate_bounds();
    intervals.push_back({{"lo", iv.interval.lo()},
                         {"hi", iv.interval.hi()},
                         {"inverted", iv.inverted},
                         {"approx", {number_or_null(a), number_or_null(b)}}});
  }
  json roots = json::array();
  for (const auto& r : result.exact_roots)
    roots.push_back({{"value", r.value}, {"inverted", r.inverted}, {"approx", r.approximate()}});
  json j{{"intervals", intervals}, {"exact_roots", roots}, {"trace", trace_to_json(result.trace, with_nodes)}};
  if (!result.outer_traces.empty()) {
    json outer = json::array();
    for (const auto& t : result.outer_traces) outer.push_back(trace_to_json(t, with_nodes));
    j["outer_traces"] = outer;
  }
  return j;
}

json bracket_to_json(const CondBracket& b) {
  return json{{"lower", number_or_null(b.lower)},
              {"upper", number_or_null(b.upper)},
              {"lg_upper", number_or_null(b.lg_upper())},
              {"delta", b.delta},
              {"grid_size", b.grid_size},
              {"achieved", b.achieved}};
}

json report_to_json(const ExperimentReport& r) {
  json per_degree = json::array();
  for (const auto& s : r.per_degree) {
    json cols = json::object();
    for (const auto& [name, c] : s.columns)
      cols[name] = {{"count", c.count}, {"mean", number_or_null(c.mean)},     {"min", number_or_null(c.min)},
                    {"median", number_or_null(c.median)}, {"q90", number_or_null(c.q90)},
                    {"q99", number_or_null(c.q99)},       {"max", number_or_null(c.max)}};
    per_degree.push_back({{"d", s.d}, {"theory", s.theory}, {"columns", cols}});
  }
  auto curve = [](const std::vector<CurvePoint>& pts) {
    json out = json::array();
    for (const auto& p : pts)
      out.push_back({{"t", p.t}, {"empirical", p.empirical}, {"theoretical", p.theoretical}, {"pass", p.pass}});
    return out;
  };
  json metrics = json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = number_or_null(v);
  return json{{"kind", r.kind},
              {"config", {{"models", r.models}, {"degrees", r.degrees}, {"trials", r.trials}, {"seed", r.seed}}},
              {"per_degree", per_degree},
              {"curve", curve(r.curve)},
              {"local_curve", curve(r.local_curve)},
              {"metrics", metrics},
              {"notes", r.notes},
              {"pass", r.pass}};
}

}  // namespace descartes

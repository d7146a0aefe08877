#pragma once

#include <json.hpp>

#include "descartes/condition.hpp"
#include "descartes/dyadic.hpp"
#include "descartes/experiments.hpp"
#include "descartes/polynomial.hpp"
#include "descartes/region_roots.hpp"
#include "descartes/solver.hpp"

namespace descartes {

// {"num": "<decimal>", "exp": <int>}
void to_json(nlohmann::json& j, const Dyadic& x);
void from_json(const nlohmann::json& j, Dyadic& x);

// {"coeffs": ["<decimal>", ...]}
void to_json(nlohmann::json& j, const IntPolynomial& f);
void from_json(const nlohmann::json& j, IntPolynomial& f);

/// Finite doubles as numbers, infinities and NaN as null.
nlohmann::json number_or_null(double v);

/// {"intervals": [{"lo", "hi", "inverted", "approx"}], "exact_roots": [...],
///  "trace": {"node_count", "depth", "width_per_depth", ...}}
nlohmann::json isolation_to_json(const IsolationResult& result, bool with_nodes = false);
nlohmann::json trace_to_json(const SubdivisionTrace& trace, bool with_nodes = false);
nlohmann::json bracket_to_json(const CondBracket& bracket);
nlohmann::json report_to_json(const ExperimentReport& report);

}  // namespace descartes

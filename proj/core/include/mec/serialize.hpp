#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mec/bounds.hpp"
#include "mec/causality.hpp"
#include "mec/certify.hpp"
#include "mec/coupling.hpp"
#include "mec/greedy.hpp"

// JSON encodings. States are 1-based in every document. Keys keep a fixed
// order and reals carry at most 12 significant digits, so equal inputs give
// byte-identical output.
namespace mec::json {

using Json = nlohmann::ordered_json;

/// Shortest decimal that round-trips, capped at 12 significant digits.
double round_sig12(double x);

Json coupling_entries(const SparseCoupling& c);
Json trace_to_json(const GreedyTrace& trace);
/// Throws DomainError on a malformed document. Accepts the trace object
/// itself or any object holding it under "trace".
GreedyTrace trace_from_json(const Json& doc);

Json certificate_to_json(const Certificate& cert);
Json bound_report_to_json(const BoundReport& report);
Json direction_report_to_json(const DirectionReport& report);

/// {"marginals": [[...], ...]}
Json problem_to_json(const std::vector<Marginal>& marginals);

/// Parses a problem document: a JSON object with "marginals", or CSV with
/// one marginal per line. Throws DimensionError on ragged rows and
/// DomainError on anything unparsable.
std::vector<Marginal> parse_problem(const std::string& text);

/// CSV of non-negative reals, one row per line, blank lines and lines
/// starting with '#' ignored.
std::vector<std::vector<double>> parse_csv_matrix(const std::string& text);

std::string dump(const Json& doc);

}  // namespace mec::json

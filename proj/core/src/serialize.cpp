#include "mec/serialize.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <string_view>

#include "mec/errors.hpp"

namespace mec::json {

double round_sig12(double x) {
  if (!std::isfinite(x)) return x;
  if (x == 0.0) return 0.0;
  // The nearest 12-digit decimal lies within half an ulp whenever a shorter
  // round-tripping decimal exists, so this never perturbs such values.
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  double out = x;
  std::from_chars(buf, res.ptr, out);
  return out;
}

namespace {

Json real(double x) { return round_sig12(x); }

Json reals(std::span<const double> v) {
  Json arr = Json::array();
  for (double x : v) arr.push_back(real(x));
  return arr;
}

Json one_based(const IndexTuple& t) {
  Json arr = Json::array();
  for (std::size_t i : t) arr.push_back(i + 1);
  return arr;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view field) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
    throw DomainError("malformed number '" + std::string(field) + "'");
  }
  return v;
}

std::vector<Marginal> to_marginals(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw DomainError("problem: no marginals");
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) {
      throw DimensionError("dimension mismatch: marginals have lengths " +
                           std::to_string(rows.front().size()) + " and " +
                           std::to_string(r.size()));
    }
  }
  std::vector<Marginal> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.emplace_back(r);
  return out;
}

}  // namespace

Json coupling_entries(const SparseCoupling& c) {
  Json arr = Json::array();
  for (const auto& [tuple, mass] : c.assignment_order()) {
    Json e;
    e["indices"] = one_based(tuple);
    e["mass"] = real(mass);
    arr.push_back(std::move(e));
  }
  return arr;
}

Json trace_to_json(const GreedyTrace& trace) {
  Json doc;
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    Json j;
    j["iteration"] = s.iteration + 1;
    j["indices"] = one_based(s.tuple);
    j["mass"] = real(s.mass);
    Json sat = Json::array();
    for (const auto& as : s.saturated) sat.push_back({as.axis + 1, as.state + 1});
    j["saturated"] = std::move(sat);
    steps.push_back(std::move(j));
  }
  doc["steps"] = std::move(steps);
  if (trace.phase_boundary) doc["phase_boundary"] = *trace.phase_boundary;
  return doc;
}

GreedyTrace trace_from_json(const Json& doc) {
  const Json& t = doc.contains("trace") ? doc.at("trace") : doc;
  if (!t.is_object() || !t.contains("steps") || !t.at("steps").is_array()) {
    throw DomainError("trace: expected an object with a \"steps\" array");
  }
  GreedyTrace trace;
  std::size_t arity = 0;
  for (const auto& js : t.at("steps")) {
    if (!js.is_object() || !js.contains("indices") || !js.contains("mass") ||
        !js.at("indices").is_array() || !js.at("mass").is_number()) {
      throw DomainError("trace: step needs \"indices\" and \"mass\"");
    }
    GreedyStep step;
    step.iteration = trace.steps.size();
    for (const auto& ix : js.at("indices")) {
      if (!ix.is_number_integer() || ix.get<long long>() < 1) {
        throw DomainError("trace: indices must be integers >= 1");
      }
      step.tuple.push_back(ix.get<std::size_t>() - 1);
    }
    if (trace.steps.empty()) arity = step.tuple.size();
    if (step.tuple.size() != arity || arity == 0) {
      throw DimensionError("trace: inconsistent tuple arity");
    }
    step.mass = js.at("mass").get<double>();
    if (!(step.mass >= 0.0)) throw DomainError("trace: negative mass");
    if (js.contains("saturated")) {
      for (const auto& pair : js.at("saturated")) {
        if (!pair.is_array() || pair.size() != 2) {
          throw DomainError("trace: saturated entries are [axis, state] pairs");
        }
        step.saturated.push_back({pair[0].get<std::size_t>() - 1,
                                  pair[1].get<std::size_t>() - 1});
      }
    }
    trace.steps.push_back(std::move(step));
  }
  if (t.contains("phase_boundary")) {
    trace.phase_boundary = t.at("phase_boundary").get<std::size_t>();
  }
  return trace;
}

Json certificate_to_json(const Certificate& cert) {
  Json doc;
  Json u = Json::array();
  for (const auto& uk : cert.u) u.push_back(reals(uk));
  doc["u"] = std::move(u);
  doc["residual_norm"] = real(cert.residual_norm);
  doc["max_reconstruction_error"] = real(cert.max_reconstruction_error);
  doc["max_product_form_error"] = real(cert.max_product_form_error);
  doc["last_one_property"] = cert.last_one_property;
  doc["certified"] = cert.certified;
  if (!cert.failure_reason.empty()) doc["failure_reason"] = cert.failure_reason;
  return doc;
}

Json bound_report_to_json(const BoundReport& r) {
  Json doc;
  doc["m"] = r.m;
  doc["n"] = r.p_min.size();
  Json sorted = Json::array();
  for (const auto& s : r.sorted_marginals) sorted.push_back(reals(s.probs()));
  doc["sorted_marginals"] = std::move(sorted);
  doc["p_min"] = reals(r.p_min.masses());
  Json res = Json::array();
  for (const auto& l : r.residuals) res.push_back(reals(l.masses()));
  doc["residuals"] = std::move(res);
  doc["T"] = real(r.T);
  doc["h_l"] = reals(r.h_l);
  doc["phase1_entropy"] = real(r.phase1_entropy);
  doc["lower_bound"] = real(r.lower_bound);
  doc["slack"] = real(r.slack);
  doc["upper_bound"] = real(r.upper_bound);
  if (r.achieved) doc["achieved"] = real(*r.achieved);
  if (r.exact_optimum) doc["exact_optimum"] = real(*r.exact_optimum);
  if (r.absolute_upper_bound) {
    doc["absolute_upper_bound"] = real(*r.absolute_upper_bound);
  }
  if (r.tightness) doc["tightness"] = real(*r.tightness);
  return doc;
}

Json direction_report_to_json(const DirectionReport& r) {
  Json doc;
  doc["H_X"] = real(r.h_x);
  doc["H_Y"] = real(r.h_y);
  doc["H_exo_XtoY"] = real(r.h_exo_x_to_y);
  doc["H_exo_YtoX"] = real(r.h_exo_y_to_x);
  doc["score_XtoY"] = real(r.score_x_to_y);
  doc["score_YtoX"] = real(r.score_y_to_x);
  doc["margin"] = real(r.margin);
  doc["verdict"] = to_string(r.verdict);
  doc["diagnostics"] = r.diagnostics;
  return doc;
}

Json problem_to_json(const std::vector<Marginal>& marginals) {
  Json doc;
  Json arr = Json::array();
  for (const auto& p : marginals) arr.push_back(reals(p.probs()));
  doc["marginals"] = std::move(arr);
  return doc;
}

std::vector<std::vector<double>> parse_csv_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = body.find(',', start);
      row.push_back(parse_real(body.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Marginal> parse_problem(const std::string& text) {
  const std::string_view body = trim(text);
  if (!body.empty() && body.front() == '{') {
    Json doc;
    try {
      doc = Json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw DomainError(std::string("problem: invalid JSON: ") + e.what());
    }
    if (!doc.contains("marginals") || !doc.at("marginals").is_array()) {
      throw DomainError("problem: expected a \"marginals\" array");
    }
    std::vector<std::vector<double>> rows;
    for (const auto& jr : doc.at("marginals")) {
      if (!jr.is_array()) throw DomainError("problem: marginal is not an array");
      std::vector<double> row;
      for (const auto& v : jr) {
        if (!v.is_number()) throw DomainError("problem: non-numeric entry");
        row.push_back(v.get<double>());
      }
      rows.push_back(std::move(row));
    }
    return to_marginals(rows);
  }
  return to_marginals(parse_csv_matrix(text));
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace mec::json

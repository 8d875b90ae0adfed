// mec: command-line front end for the minimum entropy coupling library.
//
// Exit codes: 0 success, 2 input error, 3 certification failure,
// 4 size cap exceeded, 1 anything else.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mec/bounds.hpp"
#include "mec/causality.hpp"
#include "mec/certify.hpp"
#include "mec/errors.hpp"
#include "mec/generate.hpp"
#include "mec/greedy.hpp"
#include "mec/oracle.hpp"
#include "mec/serialize.hpp"
#include "mec/tolerances.hpp"

namespace {

using mec::json::Json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCertification = 3;
constexpr int kExitSizeCap = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw mec::DomainError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

mec::Solver solver_from_flag(int alg) {
  return alg == 2 ? mec::Solver::kTwoPhase : mec::Solver::kGreedy;
}

const char* solver_name(mec::Solver s) {
  return s == mec::Solver::kTwoPhase ? "two_phase" : "greedy";
}

void emit(const Json& doc) { std::cout << mec::json::dump(doc); }

int cmd_couple(const std::string& input, int alg, bool with_trace) {
  const auto marginals = mec::json::parse_problem(read_file(input));
  const auto solver = solver_from_flag(alg);
  const auto result = mec::solve(marginals, solver);

  Json doc;
  doc["solver"] = solver_name(solver);
  doc["entries"] = mec::json::coupling_entries(result.coupling);
  doc["entropy_bits"] = mec::json::round_sig12(result.entropy());
  doc["steps"] = result.trace.assignment_count();
  if (result.trace.phase_boundary) {
    doc["phase_boundary"] = *result.trace.phase_boundary;
  }
  if (with_trace) doc["trace"] = mec::json::trace_to_json(result.trace);
  emit(doc);
  return kExitOk;
}

int cmd_certify(const std::string& input, int alg, const std::string& trace_in,
                bool back_substitution) {
  const auto marginals = mec::json::parse_problem(read_file(input));
  const std::size_t n = mec::require_common_length(marginals);
  const auto method = back_substitution ? mec::CertifyMethod::kBackSubstitution
                                        : mec::CertifyMethod::kLeastSquares;

  mec::GreedyTrace trace;
  if (trace_in.empty()) {
    trace = mec::solve(marginals, solver_from_flag(alg)).trace;
  } else {
    Json doc;
    try {
      doc = Json::parse(read_file(trace_in));
    } catch (const nlohmann::json::exception& e) {
      throw mec::DomainError(std::string("trace: invalid JSON: ") + e.what());
    }
    trace = mec::json::trace_from_json(doc);
  }

  Json out;
  bool feasible = false;
  double marginal_error = 0.0;
  mec::Certificate cert;
  try {
    const auto coupling = mec::coupling_from_trace(
        trace, std::vector<std::size_t>(marginals.size(), n));
    marginal_error = mec::max_marginal_error(coupling, marginals);
    feasible = marginal_error <= mec::kEpsMarg;
    cert = mec::evaluate_certificate(coupling, trace, method);
  } catch (const mec::Error& e) {
    // A trace that cannot even form a coupling certifies nothing.
    cert.failure_reason = e.what();
  }
  if (!feasible) {
    cert.certified = false;
    if (cert.failure_reason.empty()) {
      cert.failure_reason = "coupling does not reproduce the input marginals";
    }
  }
  const bool certified = feasible && cert.certified;

  out["local_optimum_certified"] = certified;
  out["feasible"] = feasible;
  out["max_marginal_error"] = mec::json::round_sig12(marginal_error);
  out["certificate"] = mec::json::certificate_to_json(cert);
  emit(out);
  return certified ? kExitOk : kExitCertification;
}

int cmd_bound(const std::string& input, int alg, bool oracle,
              std::size_t n_cap) {
  const auto marginals = mec::json::parse_problem(read_file(input));
  const auto solver = solver_from_flag(alg);
  const double achieved = mec::solve(marginals, solver).entropy();
  auto report = mec::bound_report(marginals, achieved);
  if (oracle) {
    if (marginals.size() != 2) {
      throw mec::DimensionError("--oracle needs exactly two marginals");
    }
    report.attach_exact_optimum(
        mec::exact_min_entropy_2var(marginals[0], marginals[1], n_cap).entropy);
  }
  Json doc;
  doc["solver"] = solver_name(solver);
  doc["report"] = mec::json::bound_report_to_json(report);
  emit(doc);
  return kExitOk;
}

std::vector<std::pair<long long, long long>> parse_samples(
    const std::string& text) {
  std::vector<std::pair<long long, long long>> out;
  for (const auto& row : mec::json::parse_csv_matrix(text)) {
    if (row.size() != 2) {
      throw mec::DimensionError("samples: each line must hold 'x,y'");
    }
    for (double v : row) {
      if (v != std::floor(v)) {
        throw mec::DomainError("samples: labels must be integers");
      }
    }
    out.emplace_back(static_cast<long long>(row[0]),
                     static_cast<long long>(row[1]));
  }
  return out;
}

int cmd_infer(const std::string& input, double margin, bool samples, int alg) {
  const std::string text = read_file(input);
  const auto obs = samples ? mec::JointObservation::from_samples(parse_samples(text))
                           : mec::JointObservation::from_matrix(
                                 mec::json::parse_csv_matrix(text));
  for (const auto& w : obs.warnings()) std::cerr << "warning: " << w << "\n";
  const auto report = mec::infer_direction(obs, margin, solver_from_flag(alg));
  emit(mec::json::direction_report_to_json(report));
  return kExitOk;
}

int cmd_generate_family(std::size_t n, double alpha) {
  const auto fam = mec::special_family(n, alpha);
  Json doc = mec::json::problem_to_json({fam.uniform, fam.skewed});
  doc["family"] = {{"n", n},
                   {"alpha", mec::json::round_sig12(alpha)},
                   {"predicted_greedy_entropy",
                    mec::json::round_sig12(fam.predicted_greedy_entropy)},
                   {"predicted_H2", mec::json::round_sig12(fam.predicted_h2)}};
  emit(doc);
  return kExitOk;
}

int cmd_generate_random(std::size_t m, std::size_t n, double concentration,
                        std::uint64_t seed) {
  const auto marginals =
      mec::random_dirichlet_marginals(m, n, concentration, seed);
  Json doc = mec::json::problem_to_json(marginals);
  doc["seed"] = seed;
  emit(doc);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum entropy coupling toolkit"};
  app.require_subcommand(1);

  std::string input;
  int alg = 1;
  bool with_trace = false;
  auto* couple = app.add_subcommand("couple", "Greedy coupling of the marginals");
  couple->add_option("input", input, "Problem file (JSON or CSV)")->required();
  couple->add_option("--alg", alg, "1: greedy, 2: two-phase")
      ->check(CLI::IsMember({1, 2}));
  couple->add_flag("--trace", with_trace, "Include the full assignment trace");

  std::string trace_in;
  bool back_substitution = false;
  auto* certify = app.add_subcommand(
      "certify", "Certify the greedy output as a local optimum");
  certify->add_option("input", input, "Problem file (JSON or CSV)")->required();
  certify->add_option("--alg", alg, "1: greedy, 2: two-phase")
      ->check(CLI::IsMember({1, 2}));
  certify->add_option("--trace-in", trace_in,
                      "Certify this trace instead of running a solver");
  certify->add_flag("--back-substitution", back_substitution,
                    "Solve G u = a through its last-1 pivots");

  bool oracle = false;
  std::size_t n_cap = mec::kDefaultOracleCap;
  int bound_alg = 2;
  auto* bound = app.add_subcommand("bound", "Approximation bound report");
  bound->add_option("input", input, "Problem file (JSON or CSV)")->required();
  bound->add_option("--alg", bound_alg, "1: greedy, 2: two-phase")
      ->check(CLI::IsMember({1, 2}));
  bound->add_flag("--oracle", oracle,
                  "Add the exact optimum (two marginals, small n)");
  bound->add_option("--n-cap", n_cap, "Largest n the oracle accepts");

  double margin = 0.0;
  bool samples = false;
  int infer_alg = 2;
  auto* infer = app.add_subcommand("infer", "Entropic causal direction test");
  infer->add_option("input", input, "Joint CSV matrix, or x,y samples")
      ->required();
  infer->add_option("--margin", margin, "Required score gap in bits")
      ->check(CLI::NonNegativeNumber);
  infer->add_flag("--samples", samples, "Input holds one x,y sample per line");
  infer->add_option("--alg", infer_alg, "1: greedy, 2: two-phase")
      ->check(CLI::IsMember({1, 2}));

  auto* generate = app.add_subcommand("generate", "Emit problem files");
  generate->require_subcommand(1);
  std::size_t gen_n = 4;
  double alpha = 1.5;
  auto* family = generate->add_subcommand(
      "family", "Uniform versus two-level marginal pair");
  family->add_option("--n", gen_n, "Even number of states");
  family->add_option("--alpha", alpha, "Skew parameter in (1, 2)");
  std::size_t gen_m = 2;
  double concentration = 1.0;
  std::uint64_t seed = 0;
  auto* random = generate->add_subcommand(
      "random", "Symmetric Dirichlet marginals");
  random->add_option("--m", gen_m, "Number of marginals");
  random->add_option("--n", gen_n, "Number of states");
  random->add_option("--concentration", concentration, "Dirichlet parameter");
  random->add_option("--seed", seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*couple) return cmd_couple(input, alg, with_trace);
    if (*certify) return cmd_certify(input, alg, trace_in, back_substitution);
    if (*bound) return cmd_bound(input, bound_alg, oracle, n_cap);
    if (*infer) return cmd_infer(input, margin, samples, infer_alg);
    if (*family) return cmd_generate_family(gen_n, alpha);
    if (*random) return cmd_generate_random(gen_m, gen_n, concentration, seed);
  } catch (const mec::SizeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSizeCap;
  } catch (const mec::CertificationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCertification;
  } catch (const mec::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return kExitInput;
}

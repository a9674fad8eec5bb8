#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qng/cmaes.hpp"
#include "qng/loss.hpp"
#include "qng/targets.hpp"
#include "qng/threshold.hpp"

namespace qng::cli {

struct SweepConfig {
  std::string parameter;  // theta, n, alpha, r, phis[0], phis[1]
  double start = 0.0;
  double stop = 0.0;
  int steps = 2;
  std::string measure = "threshold";  // or loss-tolerance
};

struct RunConfig {
  std::string command;  // threshold, loss-tolerance, sweep, verify
  TargetSpec target;
  std::string kind = "both";  // passive, gaussian, both
  CmaesConfig optimizer = default_gaussian_optimizer();
  EscalationConfig escalation;
  GridConfig grid;
  LossConfig loss;
  std::optional<SweepConfig> sweep;
  double xi_max = kDefaultXiMax;
  std::uint64_t seed = 1;
  std::string output;  // empty: stdout, no sidecar
  std::string format = "csv";
  std::string suite;  // verify only
  int jobs = 1;

  bool wants_passive() const { return kind != "gaussian"; }
  bool wants_gaussian() const { return kind != "passive"; }
};

// Throws InvalidConfig naming the offending key.
RunConfig parse_config(const nlohmann::json& j, const std::string& command);
nlohmann::json to_json(const RunConfig& c);

struct ResultRow {
  std::optional<double> sweep_value;
  std::optional<double> threshold_passive;
  std::optional<double> threshold_gaussian;
  std::optional<bool> gaussian_converged;
  std::optional<double> eta_min_passive;
  std::optional<double> eta_min_gaussian;
  std::optional<bool> monotone_verified;
  long wall_time_ms = 0;
};

struct RunOutput {
  std::vector<std::string> columns;
  std::vector<ResultRow> rows;
  bool not_converged = false;
  nlohmann::json sidecar;
};

// Columns for a command, in output order.
std::vector<std::string> columns_for(const RunConfig& c);

// threshold, loss-tolerance and sweep.
RunOutput run(const RunConfig& c);

std::string format_csv(const RunOutput& out);
std::string format_json(const RunOutput& out);

nlohmann::json to_json(const ThresholdResult& t);
nlohmann::json to_json(const LossResult& l);
nlohmann::json to_json(const TargetSpec& s);

// Command-line entry point; returns the process exit code.
int main(int argc, char** argv);

}  // namespace qng::cli

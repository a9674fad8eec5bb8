#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qng/loss.hpp"
#include "qng/targets.hpp"
#include "qng/threshold.hpp"

namespace qng::verify {

struct Check {
  std::string id;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  int jobs = 1;
  std::ostream* progress = nullptr;  // per-step log, may be null
};

const std::vector<std::string>& suites();

// oracles, figures-fast or figures-full; InvalidConfig for anything else.
std::vector<Check> run_suite(const std::string& suite, const Options& options);

// The individual oracle checks run by the "oracles" suite.
std::vector<Check> oracle_checks(const Options& options);

// Acceptance criteria 1..10. Thresholds are cached across criteria.
class Acceptance {
 public:
  explicit Acceptance(Options options) : options_(options) {}
  Check criterion(int n);

  const ThresholdResult& passive(const std::string& key, const TargetSpec& spec);
  const ThresholdResult& gaussian(const std::string& key, const TargetSpec& spec);

 private:
  Check c1();
  Check c2();
  Check c3();
  Check c4();
  Check c5();
  Check c6();
  Check c7();
  Check c8();
  Check c9();
  Check c10();

  Options options_;
  std::map<std::string, ThresholdResult> passive_;
  std::map<std::string, ThresholdResult> gaussian_;
};

void print_table(std::ostream& os, const std::vector<Check>& checks);

// max_r |cos(theta) sech r + sin(theta) sech r tanh r|^2
double tmsv_lower_bound(double theta);

}  // namespace qng::verify

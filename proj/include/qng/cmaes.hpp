#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qng {

struct CmaesConfig {
  int dim = 0;
  int population = 0;  // 0 selects 4 + floor(3 ln dim)
  double sigma0 = 0.3;
  long max_evals = 20000;  // per restart
  double tol_fun = 1e-8;
  double tol_x = 1e-9;
  std::uint64_t seed = 1;
  int restarts = 0;  // additional runs after the first
  int stagnation_generations = 60;
  double stagnation_tol = 1e-6;
  std::optional<double> target;  // stop once best_f >= target
  int jobs = 1;

  int lambda() const;
  void validate() const;
};

enum class StopReason { tol_fun, tol_x, max_evals, stagnation, target_reached };
std::string to_string(StopReason r);

// Smooth map from an unbounded search coordinate to a parameter.
struct CoordinateMap {
  enum class Kind { identity, periodic, cosine };
  Kind kind = Kind::identity;
  double lo = 0.0;
  double hi = 1.0;

  static CoordinateMap identity() { return {Kind::identity, 0.0, 1.0}; }
  // lo + ((x - lo) mod (hi - lo))
  static CoordinateMap periodic(double lo, double hi) { return {Kind::periodic, lo, hi}; }
  // lo + (hi - lo)(1 - cos x)/2
  static CoordinateMap cosine(double lo, double hi) { return {Kind::cosine, lo, hi}; }

  double operator()(double x) const;
  // Search-space interval used to draw random initial means.
  std::pair<double, double> init_range() const;
};

struct OptRun {
  Eigen::VectorXd best_x;  // mapped coordinates
  Eigen::VectorXd best_z;  // search coordinates
  double best_f = -std::numeric_limits<double>::infinity();
  long evals = 0;
  StopReason stop_reason = StopReason::max_evals;
  std::vector<double> best_trace;  // best-ever value per generation
  int restart = 0;                 // which restart produced best_f
  std::vector<double> restart_best;
};

using Objective = std::function<double(const Eigen::VectorXd&)>;

// Maximizes objective(map(z)). `z0` seeds the first run's mean; later restarts
// (and the first when z0 is empty) draw random means from each map's init_range.
OptRun maximize(const Objective& objective, const CmaesConfig& config,
                const std::vector<CoordinateMap>& maps, const Eigen::VectorXd& z0 = {});

// mt19937_64 output is fixed by the standard; the transforms below are explicit
// so that samples do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }  // [0, 1)
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace qng

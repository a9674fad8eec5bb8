#include "qng/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "qng/errors.hpp"
#include "qng/verify.hpp"

namespace qng::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kCommands = {"threshold", "loss-tolerance", "sweep", "verify"};

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw InvalidConfig((where.empty() ? std::string("config") : where) + ": must be an object");
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) throw InvalidConfig((where.empty() ? k : where + "." + k) + ": unknown key");
  }
}

template <class T>
T get(const json& j, const std::string& key, const std::string& path) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvalidConfig(path + ": wrong type");
  }
}

template <class T>
void read(const json& j, const std::string& key, const std::string& where, T& out) {
  if (j.contains(key)) out = get<T>(j, key, where.empty() ? key : where + "." + key);
}

TargetSpec parse_target(const json& j) {
  check_keys(j, "target", {"family", "theta", "n", "alpha", "r", "phis", "m", "cutoff"});
  if (!j.contains("family")) throw InvalidConfig("target.family: missing");
  TargetSpec s;
  try {
    s.family = family_from_string(get<std::string>(j, "family", "target.family"));
  } catch (const InvalidConfig& e) {
    throw InvalidConfig(std::string("target.family: ") + e.what());
  }
  read(j, "theta", "target", s.theta);
  read(j, "n", "target", s.n);
  read(j, "alpha", "target", s.alpha);
  read(j, "r", "target", s.r);
  read(j, "phis", "target", s.phis);
  read(j, "m", "target", s.m);
  if (j.contains("cutoff")) s.cutoff = get<int>(j, "cutoff", "target.cutoff");
  if (s.family == TargetFamily::photon_subtracted && s.phis.empty()) s.phis.assign(std::max(s.m, 0), 0.0);
  try {
    validate(s);
  } catch (const InvalidConfig& e) {
    throw InvalidConfig(std::string("target.") + e.what());
  }
  return s;
}

template <class F>
void prefixed(const std::string& prefix, F&& f) {
  try {
    f();
  } catch (const InvalidConfig& e) {
    const std::string msg = e.what();
    throw InvalidConfig(msg.rfind(prefix, 0) == 0 ? msg : prefix + "." + msg);
  }
}

void set_target_parameter(TargetSpec& s, const std::string& name, double v) {
  if (name == "theta") s.theta = v;
  else if (name == "n") s.n = static_cast<int>(std::lround(v));
  else if (name == "alpha") s.alpha = v;
  else if (name == "r") s.r = v;
  else if (name == "phis[0]" || name == "phis[1]") {
    const std::size_t i = name == "phis[0]" ? 0 : 1;
    if (s.phis.size() <= i) throw InvalidConfig("sweep.parameter: target has no " + name);
    s.phis[i] = v;
  } else {
    throw InvalidConfig("sweep.parameter: '" + name + "' is not a target field");
  }
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

template <class F>
void parallel_for(int count, int jobs, F&& f) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (int i; (i = next++) < count;) {
        try {
          f(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct PointResult {
  ResultRow row;
  json meta;
};

PointResult run_point(const RunConfig& c, const TargetSpec& spec, int jobs) {
  const auto t0 = std::chrono::steady_clock::now();
  PointResult out;
  out.meta["target"] = to_json(spec);
  const TwoModeState target = make_target(spec);
  out.meta["target_cutoff"] = target.basis().cutoff;
  const bool loss = c.command == "loss-tolerance" || (c.sweep && c.sweep->measure == "loss-tolerance");

  std::optional<ThresholdResult> tp, tg;
  if (c.wants_passive()) {
    GridConfig g = c.grid;
    g.jobs = jobs;
    tp = passive_threshold(target, g);
    out.meta["passive"] = to_json(*tp);
  }
  if (c.wants_gaussian()) {
    CmaesConfig opt = c.optimizer;
    opt.seed = c.seed;
    opt.jobs = jobs;
    tg = gaussian_threshold(target, opt, c.escalation, c.xi_max);
    out.meta["gaussian"] = to_json(*tg);
  }
  if (loss) {
    LossConfig lc = c.loss;
    lc.jobs = jobs;
    bool monotone = true;
    if (tp) {
      const LossResult l = min_transmission(target, *tp, lc);
      out.row.eta_min_passive = l.eta_min;
      monotone = monotone && l.monotone_verified;
      out.meta["loss_passive"] = to_json(l);
    }
    if (tg) {
      const LossResult l = min_transmission(target, *tg, lc);
      out.row.eta_min_gaussian = l.eta_min;
      monotone = monotone && l.monotone_verified;
      out.meta["loss_gaussian"] = to_json(l);
    }
    out.row.monotone_verified = monotone;
  } else {
    if (tp) out.row.threshold_passive = tp->value;
    if (tg) out.row.threshold_gaussian = tg->value;
  }
  if (tg) out.row.gaussian_converged = tg->converged;
  out.row.wall_time_ms = static_cast<long>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count());
  out.meta["wall_time_ms"] = out.row.wall_time_ms;
  return out;
}

json params_json(const std::variant<PassiveParams, EntanglingParams>& p) {
  if (const auto* q = std::get_if<PassiveParams>(&p)) return {{"phi1", q->phi1}, {"theta", q->theta}};
  const auto& e = std::get<EntanglingParams>(p);
  return {{"phi1", e.phi1}, {"phi2", e.phi2}, {"tau1", e.tau1}, {"phi", e.phi}, {"xi", e.xi}, {"tau2", e.tau2}};
}

json cell(const ResultRow& r, const std::string& col) {
  auto opt = [](const auto& v) -> json { return v ? json(*v) : json(nullptr); };
  if (col == "sweep_value") return opt(r.sweep_value);
  if (col == "threshold_passive") return opt(r.threshold_passive);
  if (col == "threshold_gaussian") return opt(r.threshold_gaussian);
  if (col == "gaussian_converged") return opt(r.gaussian_converged);
  if (col == "eta_min_passive") return opt(r.eta_min_passive);
  if (col == "eta_min_gaussian") return opt(r.eta_min_gaussian);
  if (col == "monotone_verified") return opt(r.monotone_verified);
  return nullptr;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

}  // namespace

json to_json(const TargetSpec& s) {
  json j = {{"family", to_string(s.family)}};
  switch (s.family) {
    case TargetFamily::fock_pair:
    case TargetFamily::noon_like:
      j["theta"] = s.theta;
      j["n"] = s.n;
      break;
    case TargetFamily::hybrid1:
    case TargetFamily::hybrid2:
      j["theta"] = s.theta;
      j["alpha"] = s.alpha;
      break;
    case TargetFamily::photon_subtracted:
      j["m"] = s.m;
      j["phis"] = s.phis;
      j["r"] = s.r;
      break;
  }
  if (s.cutoff) j["cutoff"] = *s.cutoff;
  return j;
}

json to_json(const ThresholdResult& t) {
  json j = {{"kind", to_string(t.kind)},
            {"value", t.value},
            {"converged", t.converged},
            {"evaluations", t.evaluations},
            {"best_params", params_json(t.best_params)}};
  json trace = json::array();
  for (const auto& s : t.cutoff_trace)
    trace.push_back({{"cutoff", s.cutoff},
                     {"value", s.value},
                     {"evaluations", s.evaluations},
                     {"restart_best", s.restart_best},
                     {"stop_reason", s.stop_reason}});
  j["cutoff_trace"] = trace;
  return j;
}

json to_json(const LossResult& l) {
  json curve = json::array();
  for (auto [eta, f] : l.fidelity_curve) curve.push_back({eta, f});
  return {{"eta_min", l.eta_min},
          {"threshold", l.threshold_used.value},
          {"monotone_verified", l.monotone_verified},
          {"no_margin", l.no_margin},
          {"fidelity_curve", curve}};
}

RunConfig parse_config(const json& j, const std::string& command) {
  check_keys(j, "", {"command", "target", "kind", "optimizer", "escalation", "grid", "loss", "sweep", "xi_max", "seed",
                     "output", "format", "suite", "jobs"});
  RunConfig c;
  c.command = command;
  if (j.contains("command")) {
    const auto cmd = get<std::string>(j, "command", "command");
    if (!command.empty() && cmd != command) throw InvalidConfig("command: '" + cmd + "' conflicts with '" + command + "'");
    c.command = cmd;
  }
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end())
    throw InvalidConfig("command: unknown command '" + c.command + "'");

  read(j, "kind", "", c.kind);
  if (c.kind != "passive" && c.kind != "gaussian" && c.kind != "both")
    throw InvalidConfig("kind: must be passive, gaussian or both");
  read(j, "xi_max", "", c.xi_max);
  if (!(c.xi_max > 0) || !std::isfinite(c.xi_max)) throw InvalidConfig("xi_max: must be positive");
  read(j, "seed", "", c.seed);
  read(j, "output", "", c.output);
  read(j, "format", "", c.format);
  if (c.format != "csv" && c.format != "json") throw InvalidConfig("format: must be csv or json");
  read(j, "suite", "", c.suite);
  read(j, "jobs", "", c.jobs);
  if (c.jobs < 1) throw InvalidConfig("jobs: must be >= 1");

  if (j.contains("optimizer")) {
    const json& o = j["optimizer"];
    check_keys(o, "optimizer", {"population", "sigma0", "max_evals", "tol_fun", "tol_x", "restarts",
                                "stagnation_generations", "stagnation_tol"});
    read(o, "population", "optimizer", c.optimizer.population);
    read(o, "sigma0", "optimizer", c.optimizer.sigma0);
    read(o, "max_evals", "optimizer", c.optimizer.max_evals);
    read(o, "tol_fun", "optimizer", c.optimizer.tol_fun);
    read(o, "tol_x", "optimizer", c.optimizer.tol_x);
    read(o, "restarts", "optimizer", c.optimizer.restarts);
    read(o, "stagnation_generations", "optimizer", c.optimizer.stagnation_generations);
    read(o, "stagnation_tol", "optimizer", c.optimizer.stagnation_tol);
  }
  c.optimizer.validate();
  if (j.contains("escalation")) {
    const json& e = j["escalation"];
    check_keys(e, "escalation", {"start_cutoff", "step", "max_cutoff", "tol", "support_weight"});
    read(e, "start_cutoff", "escalation", c.escalation.start_cutoff);
    read(e, "step", "escalation", c.escalation.step);
    read(e, "max_cutoff", "escalation", c.escalation.max_cutoff);
    read(e, "tol", "escalation", c.escalation.tol);
    read(e, "support_weight", "escalation", c.escalation.support_weight);
  }
  c.escalation.validate();
  if (j.contains("grid")) {
    const json& g = j["grid"];
    check_keys(g, "grid", {"phi_steps", "theta_steps", "refine_tol"});
    read(g, "phi_steps", "grid", c.grid.phi_steps);
    read(g, "theta_steps", "grid", c.grid.theta_steps);
    read(g, "refine_tol", "grid", c.grid.refine_tol);
  }
  c.grid.validate();
  if (j.contains("loss")) {
    const json& l = j["loss"];
    check_keys(l, "loss", {"tol", "grid_points"});
    read(l, "tol", "loss", c.loss.tol);
    read(l, "grid_points", "loss", c.loss.grid_points);
    if (!(c.loss.tol > 0)) throw InvalidConfig("loss.tol: must be positive");
    if (c.loss.grid_points < 2) throw InvalidConfig("loss.grid_points: must be >= 2");
  }

  if (c.command == "verify") {
    if (c.suite.empty()) throw InvalidConfig("suite: required for verify");
    return c;
  }
  if (!j.contains("target")) throw InvalidConfig("target: missing");
  c.target = parse_target(j["target"]);

  if (c.command == "sweep") {
    if (!j.contains("sweep")) throw InvalidConfig("sweep: missing");
    const json& s = j["sweep"];
    check_keys(s, "sweep", {"parameter", "start", "stop", "steps", "measure"});
    SweepConfig sw;
    if (!s.contains("parameter")) throw InvalidConfig("sweep.parameter: missing");
    read(s, "parameter", "sweep", sw.parameter);
    read(s, "start", "sweep", sw.start);
    read(s, "stop", "sweep", sw.stop);
    read(s, "steps", "sweep", sw.steps);
    read(s, "measure", "sweep", sw.measure);
    if (sw.steps < 2) throw InvalidConfig("sweep.steps: must be >= 2");
    if (sw.measure != "threshold" && sw.measure != "loss-tolerance")
      throw InvalidConfig("sweep.measure: must be threshold or loss-tolerance");
    TargetSpec probe = c.target;
    set_target_parameter(probe, sw.parameter, sw.start);
    prefixed("target", [&] { validate(probe); });
    set_target_parameter(probe, sw.parameter, sw.stop);
    prefixed("target", [&] { validate(probe); });
    c.sweep = sw;
  } else if (j.contains("sweep")) {
    throw InvalidConfig("sweep: only valid for the sweep command");
  }
  return c;
}

json to_json(const RunConfig& c) {
  json j = {{"command", c.command},
            {"kind", c.kind},
            {"xi_max", c.xi_max},
            {"seed", c.seed},
            {"format", c.format},
            {"jobs", c.jobs}};
  if (c.command != "verify") j["target"] = to_json(c.target);
  if (!c.output.empty()) j["output"] = c.output;
  if (!c.suite.empty()) j["suite"] = c.suite;
  j["optimizer"] = {{"population", c.optimizer.population},
                    {"sigma0", c.optimizer.sigma0},
                    {"max_evals", c.optimizer.max_evals},
                    {"tol_fun", c.optimizer.tol_fun},
                    {"tol_x", c.optimizer.tol_x},
                    {"restarts", c.optimizer.restarts},
                    {"stagnation_generations", c.optimizer.stagnation_generations},
                    {"stagnation_tol", c.optimizer.stagnation_tol}};
  j["escalation"] = {{"start_cutoff", c.escalation.start_cutoff},
                     {"step", c.escalation.step},
                     {"max_cutoff", c.escalation.max_cutoff},
                     {"tol", c.escalation.tol},
                     {"support_weight", c.escalation.support_weight}};
  j["grid"] = {{"phi_steps", c.grid.phi_steps}, {"theta_steps", c.grid.theta_steps}, {"refine_tol", c.grid.refine_tol}};
  j["loss"] = {{"tol", c.loss.tol}, {"grid_points", c.loss.grid_points}};
  if (c.sweep)
    j["sweep"] = {{"parameter", c.sweep->parameter},
                  {"start", c.sweep->start},
                  {"stop", c.sweep->stop},
                  {"steps", c.sweep->steps},
                  {"measure", c.sweep->measure}};
  return j;
}

std::vector<std::string> columns_for(const RunConfig& c) {
  std::vector<std::string> cols;
  if (c.command == "sweep") cols.push_back("sweep_value");
  const bool loss = c.command == "loss-tolerance" || (c.sweep && c.sweep->measure == "loss-tolerance");
  if (loss) {
    if (c.wants_passive()) cols.push_back("eta_min_passive");
    if (c.wants_gaussian()) cols.push_back("eta_min_gaussian");
    if (c.wants_gaussian()) cols.push_back("gaussian_converged");
    cols.push_back("monotone_verified");
  } else {
    if (c.wants_passive()) cols.push_back("threshold_passive");
    if (c.wants_gaussian()) cols.push_back("threshold_gaussian");
    if (c.wants_gaussian()) cols.push_back("gaussian_converged");
  }
  return cols;
}

RunOutput run(const RunConfig& c) {
  if (c.command == "verify") throw InvalidConfig("command: verify has no tabular output");
  RunOutput out;
  out.columns = columns_for(c);

  std::vector<TargetSpec> specs;
  std::vector<double> xs;
  if (c.sweep) {
    for (int i = 0; i < c.sweep->steps; ++i) {
      const double x = c.sweep->start + (c.sweep->stop - c.sweep->start) * i / (c.sweep->steps - 1);
      TargetSpec s = c.target;
      set_target_parameter(s, c.sweep->parameter, x);
      specs.push_back(s);
      xs.push_back(x);
    }
  } else {
    specs.push_back(c.target);
  }

  const int n = static_cast<int>(specs.size());
  std::vector<PointResult> points(n);
  const int outer = std::min(c.jobs, n);
  const int inner = outer > 1 ? 1 : c.jobs;
  parallel_for(n, outer, [&](int i) {
    points[i] = run_point(c, specs[i], inner);
    if (c.sweep) points[i].row.sweep_value = xs[i];
  });

  json meta_rows = json::array();
  for (auto& p : points) {
    if (p.row.gaussian_converged && !*p.row.gaussian_converged) out.not_converged = true;
    if (p.row.sweep_value) p.meta["sweep_value"] = *p.row.sweep_value;
    meta_rows.push_back(std::move(p.meta));
    out.rows.push_back(p.row);
  }
  out.sidecar = {{"version", QNG_VERSION},
                 {"config", to_json(c)},
                 {"seed", c.seed},
                 {"columns", out.columns},
                 {"rows", meta_rows}};
  return out;
}

std::string format_csv(const RunOutput& out) {
  std::ostringstream os;
  for (std::size_t i = 0; i < out.columns.size(); ++i) os << (i ? "," : "") << out.columns[i];
  os << "\r\n";
  for (const ResultRow& r : out.rows) {
    for (std::size_t i = 0; i < out.columns.size(); ++i) {
      if (i) os << ',';
      const json v = cell(r, out.columns[i]);
      if (v.is_boolean()) os << (v.get<bool>() ? "true" : "false");
      else if (v.is_number()) os << num(v.get<double>());
    }
    os << "\r\n";
  }
  return os.str();
}

std::string format_json(const RunOutput& out) {
  json arr = json::array();
  for (const ResultRow& r : out.rows) {
    json o = json::object();
    for (const auto& col : out.columns) o[col] = cell(r, col);
    arr.push_back(o);
  }
  return arr.dump(2) + "\n";
}

int main(int argc, char** argv) {
  CLI::App app{"Certify non-Gaussian entanglement thresholds of two-mode states"};
  std::string command, config_path, out_path, format, suite;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  app.add_option("command", command, "threshold, loss-tolerance, sweep or verify")
      ->required()
      ->check(CLI::IsMember(kCommands));
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--seed", seed, "optimizer seed");
  app.add_option("--out", out_path, "output path (stdout when absent)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--suite", suite, "verify suite: oracles, figures-fast, figures-full");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    json j = json::object();
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw InvalidConfig("config: cannot open " + config_path);
      try {
        j = json::parse(f);
      } catch (const json::parse_error& e) {
        throw InvalidConfig(std::string("config: ") + e.what());
      }
    } else if (command != "verify") {
      throw InvalidConfig("config: --config is required for " + command);
    }
    if (!suite.empty()) j["suite"] = suite;
    RunConfig c = parse_config(j, command);
    if (seed) c.seed = *seed;
    if (!out_path.empty()) c.output = out_path;
    if (!format.empty()) c.format = format;
    if (jobs) c.jobs = *jobs;
    if (const char* env = std::getenv("QNG_CERTIFY_JOBS")) {
      try {
        c.jobs = std::stoi(env);
      } catch (const std::exception&) {
        throw InvalidConfig("QNG_CERTIFY_JOBS: not an integer");
      }
      if (c.jobs < 1) throw InvalidConfig("QNG_CERTIFY_JOBS: must be >= 1");
    }

    if (c.command == "verify") {
      verify::Options o;
      o.jobs = c.jobs;
      o.progress = &std::cerr;
      const auto checks = verify::run_suite(c.suite, o);
      verify::print_table(std::cout, checks);
      const bool ok = std::all_of(checks.begin(), checks.end(), [](const verify::Check& k) { return k.pass; });
      return ok ? 0 : 1;
    }

    const RunOutput out = run(c);
    const std::string text = c.format == "csv" ? format_csv(out) : format_json(out);
    if (c.output.empty()) {
      std::cout << text;
    } else {
      write_file(c.output, text);
      write_file(c.output + ".meta.json", out.sidecar.dump(2) + "\n");
    }
    if (out.not_converged) {
      std::cerr << "warning: Gaussian threshold not converged at the largest cutoff\n";
      return 2;
    }
    return 0;
  } catch (const InvalidConfig& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qng::cli

#include "moadagrad/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include <json.hpp>

#include "moadagrad/adagrad.hpp"
#include "moadagrad/descent.hpp"
#include "moadagrad/suite.hpp"

namespace moadagrad {

using nlohmann::json;

std::vector<std::string> solver_names() { return {"adagrad", "descent"}; }

void check_solver_name(const std::string& solver) {
  if (solver != "adagrad" && solver != "descent") {
    throw LookupError("unknown solver '" + solver + "' (expected adagrad or descent)");
  }
}

namespace {

const std::set<std::string> kKnownKeys = {
    "problems", "solvers", "seeds", "noise", "budget", "criticality_tol",
    "varsigma", "beta", "subproblem_tol", "profile", "write_trajectories", "noise_model"};

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

double positive_number(const json& j, const std::string& field) {
  if (!j.is_number()) field_error(field, "expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v) || v <= 0.0) field_error(field, "must be positive and finite");
  return v;
}

std::vector<std::string> string_list(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) field_error(field, "expected a non-empty array of strings");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) field_error(field, "expected a non-empty array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

std::vector<std::string> expand_problem_names(const std::vector<std::string>& names) {
  std::vector<std::string> expanded;
  auto add = [&](const std::vector<std::string>& group) {
    for (const auto& name : group) {
      if (std::find(expanded.begin(), expanded.end(), name) == expanded.end()) {
        expanded.push_back(name);
      }
    }
  };
  for (const auto& name : names) {
    if (name == "@benchmarks") {
      add(benchmark_names());
    } else if (name == "@paired") {
      add(paired_instance_names());
    } else if (name == "@regularized") {
      add(regularized_instance_names());
    } else if (name == "@noise_rows") {
      add(noise_table_rows());
    } else if (name == "@all") {
      for (const auto& entry : list_problems()) add({entry.name});
    } else if (!name.empty() && name[0] == '@') {
      throw LookupError("unknown problem group '" + name + "'");
    } else {
      catalog_entry(name);
      add({name});
    }
  }
  return expanded;
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : root.items()) {
    if (!kKnownKeys.count(key)) field_error(key, "unknown field");
  }

  ExperimentConfig c;
  if (!root.contains("problems")) field_error("problems", "required");
  try {
    c.problems = expand_problem_names(string_list(root["problems"], "problems"));
  } catch (const LookupError& e) {
    field_error("problems", e.what());
  }
  if (root.contains("solvers")) {
    c.solvers = string_list(root["solvers"], "solvers");
    for (const auto& s : c.solvers) {
      try {
        check_solver_name(s);
      } catch (const LookupError& e) {
        field_error("solvers", e.what());
      }
    }
  }
  if (root.contains("seeds")) {
    const json& j = root["seeds"];
    if (!j.is_array() || j.empty()) field_error("seeds", "expected a non-empty array of integers");
    c.seeds.clear();
    for (const auto& item : j) {
      if (!item.is_number_unsigned()) field_error("seeds", "expected non-negative integers");
      c.seeds.push_back(item.get<std::uint64_t>());
    }
  }
  if (root.contains("noise")) {
    const json& j = root["noise"];
    if (!j.is_array() || j.empty()) field_error("noise", "expected a non-empty array of numbers");
    c.noise.clear();
    for (const auto& item : j) {
      if (!item.is_number()) field_error("noise", "expected numbers");
      double rho = item.get<double>();
      if (!std::isfinite(rho) || rho < 0.0) field_error("noise", "levels must be >= 0");
      c.noise.push_back(rho);
    }
  }
  if (root.contains("noise_model")) {
    if (!root["noise_model"].is_string()) field_error("noise_model", "expected a string");
    try {
      c.noise_model = parse_noise_model(root["noise_model"].get<std::string>());
    } catch (const LookupError& e) {
      field_error("noise_model", e.what());
    }
  }
  if (root.contains("budget")) {
    const json& j = root["budget"];
    if (!j.is_number_unsigned() || j.get<std::uint64_t>() < 1) {
      field_error("budget", "expected a positive integer");
    }
    c.budget = j.get<std::size_t>();
  }
  if (root.contains("criticality_tol")) {
    c.criticality_tol = positive_number(root["criticality_tol"], "criticality_tol");
  }
  if (root.contains("varsigma")) {
    c.varsigma = positive_number(root["varsigma"], "varsigma");
    if (c.varsigma >= 1.0) field_error("varsigma", "must lie in (0, 1)");
  }
  if (root.contains("beta")) {
    c.beta = positive_number(root["beta"], "beta");
    if (c.beta >= 1.0) field_error("beta", "must lie in (0, 1)");
  }
  if (root.contains("subproblem_tol")) {
    c.subproblem_tol = positive_number(root["subproblem_tol"], "subproblem_tol");
  }
  if (root.contains("profile")) {
    const json& j = root["profile"];
    if (!j.is_object()) field_error("profile", "expected an object");
    for (const auto& [key, value] : j.items()) {
      if (key == "tau_max") {
        c.profile.tau_max = positive_number(value, "profile.tau_max");
      } else if (key == "points") {
        if (!value.is_number_unsigned() || value.get<int>() < 2) {
          field_error("profile.points", "expected an integer >= 2");
        }
        c.profile.points = value.get<int>();
      } else {
        field_error("profile." + key, "unknown field");
      }
    }
  }
  if (root.contains("write_trajectories")) {
    if (!root["write_trajectories"].is_boolean()) field_error("write_trajectories", "expected a boolean");
    c.write_trajectories = root["write_trajectories"].get<bool>();
  }
  return c;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_experiment_config(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::vector<Cell> experiment_cells(const ExperimentConfig& config) {
  std::vector<Cell> cells;
  for (const auto& problem : config.problems) {
    for (const auto& solver : config.solvers) {
      for (double rho : config.noise) {
        for (std::uint64_t seed : config.seeds) cells.push_back({problem, solver, seed, rho});
      }
    }
  }
  return cells;
}

std::uint64_t noise_seed(std::uint64_t seed) { return seed ^ 0x9E3779B97F4A7C15ULL; }

RunRecord run_cell(const Cell& cell, const ExperimentConfig& config, bool record_iterates) {
  check_solver_name(cell.solver);
  const CatalogEntry& entry = catalog_entry(cell.problem);
  MultiObjectiveProblem problem = entry.make();
  if (cell.noise > 0.0) problem = wrap_noisy(std::move(problem), {cell.noise, noise_seed(cell.seed), config.noise_model});
  const Eigen::VectorXd x0 = experiment_start(entry, cell.seed);

  RunRecord record;
  try {
    if (cell.solver == "adagrad") {
      AdagradConfig cfg;
      cfg.varsigma = config.varsigma;
      cfg.criticality_tol = config.criticality_tol;
      cfg.gradient_budget = config.budget;
      cfg.subproblem_tol = config.subproblem_tol;
      cfg.record_iterates = record_iterates;
      record = run_adagrad(problem, x0, cfg);
    } else {
      DescentConfig cfg;
      cfg.beta = config.beta;
      cfg.criticality_tol = config.criticality_tol;
      cfg.gradient_budget = config.budget;
      cfg.subproblem_tol = config.subproblem_tol;
      cfg.record_iterates = record_iterates;
      record = run_descent(problem, x0, cfg);
    }
  } catch (const Error& e) {
    record.problem = cell.problem;
    record.solver = cell.solver;
    record.n = problem.n();
    record.x0 = x0;
    record.final_x = x0;
    record.status = RunStatus::Failed;
    record.message = e.what();
    record.counters = problem.counters();
  }
  record.problem = cell.problem;
  record.seed = cell.seed;
  record.noise = cell.noise;
  return record;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& config) {
  const std::vector<Cell> cells = experiment_cells(config);
  std::vector<RunRecord> records(cells.size());
  const long count = static_cast<long>(cells.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    records[i] = run_cell(cells[i], config, config.write_trajectories);
  }
  return records;
}

std::string resolve_output_dir(const std::string& requested) {
  if (const char* env = std::getenv("MOADAGRAD_OUT_DIR"); env && *env) return env;
  if (requested.empty()) throw ConfigError("no output directory (pass --out or set MOADAGRAD_OUT_DIR)");
  return requested;
}

MultitaskResult run_multitask(const MultitaskOptions& options) {
  check_solver_name(options.solver);
  if (options.iterations < 1) throw InputError("multitask: iterations must be >= 1");
  auto data = std::make_shared<const Dataset>(
      generate_dataset(options.kind, options.samples, options.seed));
  MultiObjectiveProblem problem = as_problem(data, options.kernel);
  const Eigen::VectorXd x0 = problem.standard_start();

  MultitaskResult result;
  auto observe = [&](std::size_t k, const Eigen::VectorXd& x) {
    TaskAccuracy acc = accuracy(*data, Split::Test, x);
    result.test_accuracy.push_back(acc);
    if (result.best_min_accuracy.empty() || acc.min > result.best_accuracy) {
      result.best_accuracy = acc.min;
      result.best_iteration = k;
      result.gradient_evals_at_best = problem.counters().gradient_evals;
      result.objective_evals_at_best = problem.counters().objective_evals;
    }
    result.best_min_accuracy.push_back(result.best_accuracy);
  };

  if (options.solver == "adagrad") {
    AdagradConfig cfg;
    cfg.varsigma = options.varsigma;
    cfg.criticality_tol = options.criticality_tol;
    cfg.gradient_budget = options.iterations;
    cfg.record_iterates = false;
    cfg.observer = observe;
    result.record = run_adagrad(problem, x0, cfg);
  } else {
    DescentConfig cfg;
    cfg.beta = options.beta;
    cfg.criticality_tol = options.criticality_tol;
    cfg.gradient_budget = options.iterations;
    cfg.record_iterates = false;
    cfg.observer = observe;
    result.record = run_descent(problem, x0, cfg);
  }
  result.record.seed = options.seed;
  result.final_train_loss = losses(*data, Split::Train, result.record.final_x, options.kernel);
  return result;
}

}  // namespace moadagrad

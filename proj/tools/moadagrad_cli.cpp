#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "moadagrad/experiment.hpp"
#include "moadagrad/export.hpp"
#include "moadagrad/harness.hpp"
#include "moadagrad/suite.hpp"

namespace fs = std::filesystem;
using namespace moadagrad;

namespace {

std::string join(const fs::path& dir, const std::string& file) { return (dir / file).string(); }

void write_run(const RunRecord& record, const fs::path& dir) {
  const std::string stem = run_file_stem(record);
  write_text_file(join(dir, stem + ".csv"), trajectory_csv(record.trajectory));
  write_text_file(join(dir, stem + ".json"), summary_to_json(summarize(record, stem + ".csv")));
}

void print_run(const RunRecord& r) {
  std::printf("%s %s seed=%llu noise=%g status=%s gradient_evals=%zu objective_evals=%zu "
              "cost=%.10g omega=%.6e time=%.3fs\n",
              r.problem.c_str(), r.solver.c_str(), static_cast<unsigned long long>(r.seed),
              r.noise, to_string(r.status).c_str(), r.counters.gradient_evals,
              r.counters.objective_evals, budget_cost(r), r.final_omega, r.wall_time_seconds);
  if (!r.message.empty()) std::printf("  message: %s\n", r.message.c_str());
}

int cmd_list_problems() {
  std::printf("%-20s %4s %2s  %s\n", "name", "n", "m", "origin");
  for (const auto& e : list_problems()) {
    std::printf("%-20s %4d %2d  %s\n", e.name.c_str(), e.n, e.m, to_string(e.origin).c_str());
  }
  return 0;
}

struct SolveArgs {
  std::string problem, solver = "adagrad", out;
  std::uint64_t seed = 0;
  double noise = 0.0, tol = 1e-6, varsigma = 1e-2, beta = 0.1;
  std::size_t budget = 100000;
};

int cmd_solve(const SolveArgs& a) {
  ExperimentConfig config;
  config.budget = a.budget;
  config.criticality_tol = a.tol;
  config.varsigma = a.varsigma;
  config.beta = a.beta;
  if (a.noise < 0.0) throw InputError("--noise must be >= 0");
  check_solver_name(a.solver);
  catalog_entry(a.problem);
  const fs::path dir = resolve_output_dir(a.out);
  RunRecord record = run_cell({a.problem, a.solver, a.seed, a.noise}, config);
  write_run(record, dir);
  print_run(record);
  return record.status == RunStatus::Failed ? 1 : 0;
}

int cmd_profile(const std::string& config_path, const std::string& out) {
  const ExperimentConfig config = load_experiment_config(config_path);
  const fs::path dir = resolve_output_dir(out);
  const std::vector<RunRecord> records = run_experiment(config);

  std::vector<RunSummary> summaries;
  for (const auto& r : records) {
    std::string traj;
    if (config.write_trajectories) {
      traj = "trajectories/" + run_file_stem(r) + ".csv";
      write_text_file(join(dir, traj), trajectory_csv(r.trajectory));
    }
    summaries.push_back(summarize(r, traj));
  }
  write_text_file(join(dir, "summaries.json"), summaries_to_json(summaries));

  const ProfileTable table = performance_profile(
      cost_entries(records), make_tau_grid(config.profile.tau_max, config.profile.points));
  write_text_file(join(dir, "profile.csv"), profile_csv(table));
  write_text_file(join(dir, "ratios.csv"), ratio_csv(table));
  write_text_file(join(dir, "aggregate.csv"), aggregate_csv(aggregate_over_seeds(records)));

  bool has_reference = false, has_noisy = false;
  for (double rho : config.noise) (rho == 0.0 ? has_reference : has_noisy) = true;
  if (has_reference && has_noisy) {
    write_text_file(join(dir, "noise_table.csv"), noise_table_csv(noise_distance_table(records)));
  }

  std::size_t failed = 0;
  for (const auto& r : records) failed += r.status == RunStatus::Failed;
  std::printf("%zu runs (%zu failed), %zu instances\n", records.size(), failed,
              table.instances.size());
  for (std::size_t s = 0; s < table.solvers.size(); ++s) {
    std::printf("  %-8s solved %.4f\n", table.solvers[s].c_str(), table.solve_fraction[s]);
  }
  std::printf("results in %s\n", dir.string().c_str());
  return 0;
}

struct MultitaskArgs {
  std::string example = "quadrants", solver = "adagrad", kernel = "parallel", out;
  std::size_t iters = 1000, samples = 10000;
  std::uint64_t seed = 0;
};

int cmd_multitask(const MultitaskArgs& a) {
  MultitaskOptions options;
  options.kind = parse_example_kind(a.example);
  options.solver = a.solver;
  options.iterations = a.iters;
  options.samples = a.samples;
  options.seed = a.seed;
  options.kernel = a.kernel == "serial" ? Kernel::Serial : Kernel::Parallel;
  const fs::path dir = resolve_output_dir(a.out);
  const MultitaskResult result = run_multitask(options);

  std::string acc = "k,acc_task1,acc_task2,min_acc,best_min_acc\n";
  for (std::size_t k = 0; k < result.test_accuracy.size(); ++k) {
    const auto& t = result.test_accuracy[k];
    acc += std::to_string(k) + "," + format_double(t.task1) + "," + format_double(t.task2) + "," +
           format_double(t.min) + "," + format_double(result.best_min_accuracy[k]) + "\n";
  }
  const std::string stem = to_string(options.kind) + "__" + a.solver;
  write_text_file(join(dir, stem + "_accuracy.csv"), acc);
  write_run(result.record, dir);

  print_run(result.record);
  std::printf("best min test accuracy %.4f at iteration %zu (gradient_evals=%zu objective_evals=%zu)\n",
              result.best_accuracy, result.best_iteration, result.gradient_evals_at_best,
              result.objective_evals_at_best);
  std::printf("final train losses J1=%.6f J2=%.6f\n", result.final_train_loss.task1,
              result.final_train_loss.task2);
  return 0;
}

struct RateArgs {
  std::string record, out;
  double lmax = 0.0, gamma0 = 0.0, varsigma = 1e-2;
};

int cmd_rate_check(const RateArgs& a) {
  std::vector<TrajectoryPoint> trajectory;
  double varsigma = a.varsigma;
  if (fs::path(a.record).extension() == ".json") {
    const RunSummary s = summary_from_json(read_text_file(a.record));
    if (s.solver != "adagrad") throw InputError("rate-check expects an MO-Adagrad record");
    for (const auto& [key, value] : s.config) {
      if (key == "varsigma") varsigma = value;
    }
    if (s.trajectory_file.empty()) throw InputError("summary has no trajectory file");
    const fs::path traj = fs::path(a.record).parent_path() / s.trajectory_file;
    trajectory = parse_trajectory_csv(read_text_file(traj.string()));
  } else {
    trajectory = parse_trajectory_csv(read_text_file(a.record));
  }
  std::vector<double> omegas;
  for (const auto& p : trajectory) omegas.push_back(p.omega);
  const RateReport report = rate_check(omegas, a.lmax, a.gamma0, varsigma);

  if (!a.out.empty()) {
    std::string csv = "k,running_average,bound\n";
    for (std::size_t k = 0; k < report.bound.size(); ++k) {
      csv += std::to_string(k) + "," + format_double(report.running_average[k]) + "," +
             format_double(report.bound[k]) + "\n";
    }
    write_text_file(a.out, csv);
  }
  std::printf("theta %.10g\niterations %zu\nbound_holds %s\n", report.theta, omegas.size(),
              report.holds ? "true" : "false");
  if (report.first_violation) std::printf("first_violation %zu\n", *report.first_violation);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-objective Adagrad and Armijo descent toolkit"};
  app.require_subcommand(1);

  app.add_subcommand("list-problems", "List the problem catalog");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Run one solver on one problem");
  s->add_option("--problem", solve.problem, "Catalog name")->required();
  s->add_option("--solver", solve.solver, "adagrad or descent")->capture_default_str();
  s->add_option("--seed", solve.seed, "Start and noise seed")->capture_default_str();
  s->add_option("--noise", solve.noise, "Relative noise level rho")->capture_default_str();
  s->add_option("--budget", solve.budget, "Gradient evaluation budget")->capture_default_str();
  s->add_option("--tol", solve.tol, "Criticality tolerance on |g_s|")->capture_default_str();
  s->add_option("--varsigma", solve.varsigma)->capture_default_str();
  s->add_option("--beta", solve.beta)->capture_default_str();
  s->add_option("--out", solve.out, "Output directory");

  std::string config_path, profile_out;
  auto* p = app.add_subcommand("profile", "Run an experiment grid and its performance profile");
  p->add_option("--config", config_path, "JSON experiment config")->required();
  p->add_option("--out", profile_out, "Output directory");

  MultitaskArgs mt;
  auto* m = app.add_subcommand("multitask", "Train a two-task classifier");
  m->add_option("--example", mt.example, "quadrants or diagonals")->capture_default_str();
  m->add_option("--iters", mt.iters, "Iterations (gradient evaluations)")->capture_default_str();
  m->add_option("--solver", mt.solver, "adagrad or descent")->capture_default_str();
  m->add_option("--seed", mt.seed)->capture_default_str();
  m->add_option("--samples", mt.samples)->capture_default_str();
  m->add_option("--kernel", mt.kernel, "serial or parallel")
      ->check(CLI::IsMember({"serial", "parallel"}))
      ->capture_default_str();
  m->add_option("--out", mt.out, "Output directory");

  RateArgs rate;
  auto* r = app.add_subcommand("rate-check", "Check the running-average rate bound on a record");
  r->add_option("--record", rate.record, "Run summary JSON or trajectory CSV")->required();
  r->add_option("--lmax", rate.lmax, "Lipschitz constant L_max")->required();
  r->add_option("--gamma0", rate.gamma0, "Gamma0 = Phi(x0) - Phi_low")->required();
  r->add_option("--varsigma", rate.varsigma, "Used for CSV records")->capture_default_str();
  r->add_option("--out", rate.out, "Optional CSV of running average and bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (app.got_subcommand("list-problems")) return cmd_list_problems();
    if (s->parsed()) return cmd_solve(solve);
    if (p->parsed()) return cmd_profile(config_path, profile_out);
    if (m->parsed()) return cmd_multitask(mt);
    if (r->parsed()) return cmd_rate_check(rate);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}

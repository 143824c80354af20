// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "finite_diff.hpp"
#include "moadagrad/adagrad.hpp"
#include "moadagrad/descent.hpp"
#include "moadagrad/experiment.hpp"
#include "moadagrad/harness.hpp"
#include "moadagrad/min_norm.hpp"
#include "moadagrad/multitask.hpp"
#include "moadagrad/suite.hpp"

using namespace moadagrad;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Eigen::MatrixXd gaussian_matrix(std::mt19937_64& rng, int m, int n) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd G(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = normal(rng);
  return G;
}

// Independent two-gradient oracle: minimize |g2 + t (g1 - g2)|^2 over t in [0, 1].
double two_gradient_omega(const Eigen::MatrixXd& G) {
  using L = long double;
  const int n = static_cast<int>(G.cols());
  L dd = 0, gd = 0;
  for (int i = 0; i < n; ++i) {
    L d = static_cast<L>(G(0, i)) - G(1, i);
    dd += d * d;
    gd += static_cast<L>(G(1, i)) * d;
  }
  L t = dd > 0 ? std::clamp(-gd / dd, L(0), L(1)) : L(1);
  L omega = 0;
  for (int i = 0; i < n; ++i) {
    L v = static_cast<L>(G(1, i)) + t * (static_cast<L>(G(0, i)) - G(1, i));
    omega += v * v;
  }
  return static_cast<double>(omega);
}

MultiObjectiveProblem quad_pair() { return make_problem("QUADPAIR"); }

double distance_to_segment(const Eigen::VectorXd& x) {
  // Segment from (-1, 0) to (1, 0).
  double dx = std::max(0.0, std::abs(x[0]) - 1.0);
  return std::hypot(dx, x[1]);
}

Outcome criterion1() {
  auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  const int ns[] = {2, 5, 20};
  double worst_closed = 0, worst_iter = 0, worst_grid = 0;
  for (int t = 0; t < 1000; ++t) {
    Eigen::MatrixXd G = gaussian_matrix(rng, 2, ns[t % 3]);
    const double oracle = two_gradient_omega(G);
    worst_closed = std::max(worst_closed, std::abs(min_norm_element(G).omega - oracle));
    worst_iter = std::max(worst_iter, std::abs(min_norm_iterative(G, 1e-12).omega - oracle));
  }
  for (int t = 0; t < 200; ++t) {
    Eigen::MatrixXd G = gaussian_matrix(rng, 3, ns[t % 3]);
    worst_grid = std::max(worst_grid,
                          std::abs(min_norm_element(G).omega - brute_force_min_norm(G, 1e-3).omega));
  }
  const double elapsed = seconds_since(t0);
  Outcome o;
  o.pass = worst_closed <= 1e-10 && worst_iter <= 1e-10 && worst_grid <= 1e-4 && elapsed < 30;
  o.detail = fmt("m=2 max|dw| %.2e (iterative route %.2e), m=3 vs grid %.2e, %.1fs", worst_closed,
                 worst_iter, worst_grid, elapsed);
  return o;
}

Outcome criterion2() {
  auto t0 = Clock::now();
  const double tol = kDefaultSubproblemTol;
  double worst1 = 0, worst2 = 0;
  std::string worst_problem;
  for (const auto& entry : list_problems()) {
    auto p = entry.make();
    for (std::uint64_t s = 0; s < 100; ++s) {
      Eigen::MatrixXd G = p.jacobian(random_point(entry, 5000 + s));
      SubproblemSolution sub = min_norm_element(G, tol);
      const double omega = sub.g_s.squaredNorm();
      const double scale = 1.0 + omega;
      // |g_s|^2 = -max_j grad f_j . (-g_s)
      const double e1 = std::abs(omega + max_directional_derivative(G, -sub.g_s)) / scale;
      // h(-g_s) = max_j grad f_j . (-g_s) + |g_s|^2 / 2 = -omega / 2
      const double h = max_directional_derivative(G, -sub.g_s) + 0.5 * omega;
      const double e2 = std::abs(h + 0.5 * omega) / scale;
      if (std::max(e1, e2) > std::max(worst1, worst2)) worst_problem = entry.name;
      worst1 = std::max(worst1, e1);
      worst2 = std::max(worst2, e2);
    }
  }
  const double elapsed = seconds_since(t0);
  Outcome o;
  o.pass = worst1 <= 10 * tol && worst2 <= 10 * tol && elapsed < 30;
  o.detail = fmt("max rel. error %.2e / %.2e (limit %.0e, worst %s), %.1fs", worst1, worst2,
                 10 * tol, worst_problem.c_str(), elapsed);
  return o;
}

Outcome criterion3() {
  std::size_t runs = 0, offenders = 0;
  ExperimentConfig config;
  for (const auto& entry : list_problems()) {
    for (double rho : {0.0, 0.05, 0.25}) {
      for (std::uint64_t seed : {0, 1}) {
        RunRecord r = run_cell({entry.name, "adagrad", seed, rho}, config);
        ++runs;
        offenders += r.counters.objective_evals != 0;
      }
    }
  }
  for (auto kind : {ExampleKind::QuadrantsCircle, ExampleKind::DiagonalsCircle}) {
    MultitaskOptions o;
    o.kind = kind;
    o.iterations = 200;
    ++runs;
    offenders += run_multitask(o).record.counters.objective_evals != 0;
  }
  return {offenders == 0, fmt("%zu MO-Adagrad runs, %zu with objective evaluations", runs, offenders)};
}

Outcome criterion4() {
  const auto& entry = catalog_entry("QUADPAIR");
  const double L = 1.0, phi_low = 0.5;
  bool pass = true;
  double worst_ratio = 0, slowest = 0;
  std::size_t iterations = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto t0 = Clock::now();
    auto p = quad_pair();
    Eigen::VectorXd x0 = random_point(entry, seed);
    AdagradConfig cfg;
    cfg.gradient_budget = 10000;
    cfg.criticality_tol = std::numeric_limits<double>::denorm_min();
    cfg.record_iterates = false;
    RunRecord r = run_adagrad(p, x0, cfg);
    const double gamma0 = quad_pair().phi(x0) - phi_low;
    RateReport report = rate_check(r, L, gamma0, cfg.varsigma);
    slowest = std::max(slowest, seconds_since(t0));
    iterations += r.trajectory.size();
    pass = pass && report.holds && r.status != RunStatus::Failed;
    for (std::size_t k = 0; k < report.bound.size(); ++k) {
      worst_ratio = std::max(worst_ratio, report.running_average[k] / report.bound[k]);
    }
  }
  pass = pass && slowest < 10;
  return {pass, fmt("5 starts, %zu iterations, max avg/bound %.2e, slowest start %.2fs", iterations,
                    worst_ratio, slowest)};
}

Outcome criterion5() {
  const auto& entry = catalog_entry("QUADPAIR");
  double worst = -INFINITY;
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto p = quad_pair();
    Eigen::VectorXd x0 = seed == 0 ? Eigen::VectorXd(p.standard_start()) : random_point(entry, seed);
    AdagradConfig cfg;
    cfg.gradient_budget = 10000;
    RunRecord r = run_adagrad(p, x0, cfg);
    auto oracle = quad_pair();
    for (std::size_t k = 0; k < r.trajectory.size(); ++k) {
      const auto& pt = r.trajectory[k];
      const Eigen::VectorXd& next = k + 1 < r.trajectory.size() ? r.trajectory[k + 1].x : r.final_x;
      const double w = pt.step_param;
      const double step_sq = (next - pt.x).squaredNorm();
      const double excess = oracle.phi(next) - (oracle.phi(pt.x) - pt.omega / w + 0.5 * step_sq);
      worst = std::max(worst, excess);
      ++checked;
    }
  }
  return {worst <= 1e-9, fmt("%zu iterations, max excess %.2e (slack 1e-9)", checked, worst)};
}

Outcome criterion6() {
  bool pass = true;
  std::string detail;
  for (const std::string solver : {"adagrad", "descent"}) {
    auto p = quad_pair();
    RunRecord r;
    if (solver == "adagrad") {
      r = run_adagrad(p, Eigen::Vector2d(0, 1));
    } else {
      r = run_descent(p, Eigen::Vector2d(0, 1));
    }
    const double dist = distance_to_segment(r.final_x);
    const bool ok = r.status == RunStatus::Critical && std::sqrt(r.final_omega) <= 1e-6 &&
                    dist <= 1e-3 && r.counters.gradient_evals <= 100000;
    pass = pass && ok;
    detail += fmt("%s: |g_s| %.1e, dist %.1e, %zu grads; ", solver.c_str(), std::sqrt(r.final_omega),
                  dist, r.counters.gradient_evals);
  }
  return {pass, detail};
}

Outcome criterion7() {
  std::size_t steps = 0, violations = 0, runs = 0;
  for (const auto& entry : list_problems()) {
    for (std::uint64_t seed : {0, 1, 2}) {
      auto p = entry.make();
      DescentConfig cfg;
      cfg.gradient_budget = 5000;
      RunRecord r = run_descent(p, experiment_start(entry, seed), cfg);
      ++runs;
      auto oracle = entry.make();
      for (std::size_t k = 0; k < r.trajectory.size(); ++k) {
        const auto& pt = r.trajectory[k];
        const Eigen::VectorXd& next = k + 1 < r.trajectory.size() ? r.trajectory[k + 1].x : r.final_x;
        const Eigen::VectorXd f0 = oracle.evaluate(pt.x);
        const Eigen::VectorXd f1 = oracle.evaluate(next);
        const double beta = r.config_value("beta");
        for (Eigen::Index j = 0; j < f0.size(); ++j) {
          if (!(f1[j] <= f0[j] - beta * pt.step_param * pt.directional[j])) ++violations;
        }
        ++steps;
      }
    }
  }
  return {violations == 0 && steps > 0,
          fmt("%zu runs, %zu accepted steps re-evaluated, %zu violations", runs, steps, violations)};
}

Outcome criterion8() {
  auto t0 = Clock::now();
  // Reference g_eval counts per (example, solver).
  const std::map<std::pair<ExampleKind, std::string>, double> reference = {
      {{ExampleKind::QuadrantsCircle, "descent"}, 306},
      {{ExampleKind::QuadrantsCircle, "adagrad"}, 388},
      {{ExampleKind::DiagonalsCircle, "descent"}, 577},
      {{ExampleKind::DiagonalsCircle, "adagrad"}, 970}};
  bool pass = true;
  std::string detail;
  for (auto kind : {ExampleKind::QuadrantsCircle, ExampleKind::DiagonalsCircle}) {
    double wall[2] = {0, 0};
    for (int s = 0; s < 2; ++s) {
      MultitaskOptions o;
      o.kind = kind;
      o.solver = s == 0 ? "adagrad" : "descent";
      MultitaskResult r = run_multitask(o);
      wall[s] = r.record.wall_time_seconds;
      const double ref = reference.at({kind, o.solver});
      const double g = static_cast<double>(std::max<std::size_t>(r.gradient_evals_at_best, 1));
      const bool ok = r.best_accuracy >= 0.98 && g <= 5 * ref && g >= ref / 5 &&
                      r.record.counters.gradient_evals == 1000;
      pass = pass && ok;
      detail += fmt("%s/%s acc %.4f g_eval %zu; ", to_string(kind).c_str(), o.solver.c_str(),
                    r.best_accuracy, r.gradient_evals_at_best);
    }
    pass = pass && wall[0] <= wall[1];
    detail += fmt("time %.2fs vs %.2fs; ", wall[0], wall[1]);
  }
  const double elapsed = seconds_since(t0);
  pass = pass && elapsed < 300;
  return {pass, detail + fmt("%.1fs", elapsed)};
}

Outcome criterion9() {
  ExperimentConfig config;
  config.problems = noise_table_rows();
  config.seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  config.noise = {0.0, 0.05, 0.15, 0.25};
  auto rows = noise_distance_table(run_experiment(config));
  std::map<std::tuple<std::string, std::string, double>, double> dist;
  for (const auto& r : rows) dist[{r.problem, r.solver, r.noise}] = r.mean_distance;

  const double rc = dist.at({"ROSENBR-CUBE", "adagrad", 0.05});
  std::size_t cells = 0, wins = 0;
  for (const auto& problem : config.problems) {
    for (double rho : {0.05, 0.15, 0.25}) {
      ++cells;
      wins += dist.at({problem, "adagrad", rho}) <= dist.at({problem, "descent", rho});
    }
  }
  const bool pass = rc < 1.0 && rc <= 10 * 0.04 && 2 * wins >= cells;
  return {pass, fmt("ROSENBR-CUBE adagrad distance at 5%% %.2e; adagrad <= descent on %zu/%zu cells",
                    rc, wins, cells)};
}

Outcome criterion10() {
  // Hand-computed oracle: P1 (A 10, B 20), P2 (A 30, B 15), P3 (A 5, B fails).
  ProfileTable t = performance_profile({{"P1", "A", 10.0},
                                        {"P1", "B", 20.0},
                                        {"P2", "A", 30.0},
                                        {"P2", "B", 15.0},
                                        {"P3", "A", 5.0},
                                        {"P3", "B", std::nullopt}},
                                       {0.0, 0.25, 0.5, 1.0});
  const std::vector<double> expect_a = {2.0 / 3, 2.0 / 3, 1.0, 1.0};
  const std::vector<double> expect_b = {1.0 / 3, 1.0 / 3, 2.0 / 3, 2.0 / 3};
  const bool oracle_ok = t.curve[0] == expect_a && t.curve[1] == expect_b;

  ExperimentConfig config;
  config.problems = regularized_instance_names();
  auto records = run_experiment(config);
  ProfileTable reg = performance_profile(cost_entries(records), make_tau_grid(3.0, 31));
  const double fa = reg.solve_fraction[0], fd = reg.solve_fraction[1];
  return {oracle_ok && reg.solvers[0] == "adagrad" && fa >= fd - 0.1,
          fmt("oracle table %s; regularized solve fraction adagrad %.3f, descent %.3f",
              oracle_ok ? "exact" : "MISMATCH", fa, fd)};
}

Outcome criterion11() {
  double worst = 0;
  std::string worst_name;
  std::size_t checked = 0;
  for (const auto& entry : list_problems()) {
    auto p = entry.make();
    auto values = [&](const Eigen::VectorXd& x) { return p.evaluate(x); };
    for (std::uint64_t s = 0; s < 20; ++s) {
      Eigen::VectorXd x = random_point(entry, 9000 + s);
      double e = fd::worst_row_error(fd::central_jacobian(values, x), p.jacobian(x));
      if (e > worst) {
        worst = e;
        worst_name = entry.name;
      }
    }
    ++checked;
  }
  for (auto kind : {ExampleKind::QuadrantsCircle, ExampleKind::DiagonalsCircle}) {
    auto data = std::make_shared<const Dataset>(generate_dataset(kind, 10000, 0));
    auto p = as_problem(data);
    auto values = [&](const Eigen::VectorXd& x) { return p.evaluate(x); };
    std::mt19937_64 rng(77);
    std::normal_distribution<double> normal;
    for (int s = 0; s < 20; ++s) {
      Eigen::VectorXd x(p.n());
      for (auto& v : x) v = normal(rng);
      double e = fd::worst_row_error(fd::central_jacobian(values, x), p.jacobian(x));
      if (e > worst) {
        worst = e;
        worst_name = p.name();
      }
    }
    ++checked;
  }
  return {worst < 1e-5, fmt("%zu problems x 20 points, max rel. error %.2e (%s)", checked, worst,
                            worst_name.c_str())};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"subproblem oracle equivalence", criterion1},
      {"criticality identities", criterion2},
      {"MO-Adagrad never evaluates objectives", criterion3},
      {"running-average rate bound", criterion4},
      {"per-iteration descent inequality", criterion5},
      {"convergence to the Pareto segment", criterion6},
      {"Armijo condition re-checked from records", criterion7},
      {"multi-task accuracy and timing", criterion8},
      {"noise robustness distances", criterion9},
      {"performance profile oracle and solve fractions", criterion10},
      {"finite-difference gradient check", criterion11},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s [%zu] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

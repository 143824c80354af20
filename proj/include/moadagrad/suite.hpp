#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "moadagrad/problem.hpp"

namespace moadagrad {

/// Single smooth objective with analytic gradient.
struct ScalarProblem {
  std::string name;
  int n = 0;
  Eigen::VectorXd standard_start;
  /// Returns f(x); writes grad f(x) into `grad` when non-null.
  std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)> value_grad;
};

/// The hardcoded scalar subset: ARWHEAD, BROWNAL, CUBE, ROSENBR, VARDIM,
/// WAYSEA1, ZANGWIL2 (ARWHEAD, BROWNAL, VARDIM with n = 10).
ScalarProblem scalar_problem(const std::string& name);
std::vector<std::string> scalar_problem_names();

/// (p, |x|^2), started from p's standard start. Named "<p>+L2".
MultiObjectiveProblem make_regularized(const ScalarProblem& p);

/// (p1, p2) started from the average of both standard starts. Named "<p1>-<p2>".
MultiObjectiveProblem make_pair(const ScalarProblem& p1, const ScalarProblem& p2);

/// f_j(x) = |x - a_j|^2 / 2 for the rows a_j of `anchors`; every gradient
/// is 1-Lipschitz and the Pareto set is the convex hull of the anchors.
MultiObjectiveProblem make_quadratic_family(std::string name, const Eigen::MatrixXd& anchors,
                                            Eigen::VectorXd start);

/// Two-variable bi-objective benchmarks: Lovison3, Lovison4, MOP1, T1, T2.
MultiObjectiveProblem get_benchmark(const std::string& name);
std::vector<std::string> benchmark_names();

enum class ProblemOrigin { Benchmark, Regularized, Paired, Analytic };
std::string to_string(ProblemOrigin origin);

struct Box {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

struct CatalogEntry {
  std::string name;
  int n = 0;
  int m = 0;
  ProblemOrigin origin = ProblemOrigin::Analytic;
  /// Random starts (benchmarks) and random test points are drawn from here.
  Box box;
  /// Whether experiments draw the start from `box` instead of the standard start.
  bool random_starts = false;
  std::function<MultiObjectiveProblem()> make;
};

/// Every catalog instance in alphabetical order. Stable across calls.
const std::vector<CatalogEntry>& list_problems();
const CatalogEntry& catalog_entry(const std::string& name);
MultiObjectiveProblem make_problem(const std::string& name);

/// Uniform point in the entry's box from a std::mt19937_64 seeded with `seed`.
Eigen::VectorXd random_point(const CatalogEntry& entry, std::uint64_t seed);

/// Start used by experiments: random_point for benchmarks, else the standard start.
Eigen::VectorXd experiment_start(const CatalogEntry& entry, std::uint64_t seed);

/// Paired instances available in-repo for the mixed benchmark table.
std::vector<std::string> paired_instance_names();
/// Rows of the noise-distance table reproducible in-repo.
std::vector<std::string> noise_table_rows();
/// Regularized instances ("<p>+L2") for every scalar problem.
std::vector<std::string> regularized_instance_names();

}  // namespace moadagrad

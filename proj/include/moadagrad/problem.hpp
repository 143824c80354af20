#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "moadagrad/errors.hpp"

namespace moadagrad {

/// Oracle call counts for one run. Each call counts once regardless of m.
struct EvalCounters {
  std::size_t objective_evals = 0;
  std::size_t gradient_evals = 0;
};

/// Entrywise: every Jacobian entry gets its own factor (1 + rho * xi).
/// PerObjective: each gradient row is scaled by one factor, so gradient
/// directions are kept and zero stays in the hull exactly where it was.
/// Objective values always get one factor per entry.
enum class NoiseModel { Entrywise, PerObjective };

std::string to_string(NoiseModel model);
/// "entrywise" or "per_objective".
NoiseModel parse_noise_model(const std::string& text);

/// Relative Gaussian noise: an output a becomes a * (1 + rho * xi), xi ~ N(0, 1).
struct NoiseSpec {
  double rho = 0.0;
  std::uint64_t seed = 0;
  NoiseModel model = NoiseModel::Entrywise;
};

/// Pure value and Jacobian maps of f: R^n -> R^m. Jacobian rows are the gradients.
struct ObjectiveFunctions {
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> values;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jacobian;
};

/// A multi-objective problem plus the counters of the run it serves.
///
/// The objective maps are shared and immutable; counters and noise generator
/// state belong to the instance. Copying yields an independent instance that
/// starts from the same counter values and generator state, so a solver run
/// should own (or exclusively borrow) one instance.
class MultiObjectiveProblem {
 public:
  MultiObjectiveProblem(std::string name, int n, int m,
                        Eigen::VectorXd standard_start,
                        ObjectiveFunctions functions);

  const std::string& name() const { return name_; }
  int n() const { return n_; }
  int m() const { return m_; }
  const Eigen::VectorXd& standard_start() const { return standard_start_; }

  /// (f_1(x), ..., f_m(x)). Counts one objective evaluation.
  Eigen::VectorXd evaluate(const Eigen::VectorXd& x);

  /// m x n matrix whose row j is grad f_j(x). Counts one gradient evaluation.
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x);

  /// max_j f_j(x). Diagnostic only; counts one objective evaluation.
  double phi(const Eigen::VectorXd& x);

  const EvalCounters& counters() const { return counters_; }
  void reset_counters() { counters_ = {}; }

  bool noisy() const { return !noise_.empty(); }

  /// Noiseless view of the same objectives with fresh counters.
  MultiObjectiveProblem noiseless() const;

 private:
  friend MultiObjectiveProblem wrap_noisy(MultiObjectiveProblem problem,
                                          const NoiseSpec& spec);

  struct NoiseLayer {
    double rho;
    NoiseModel model;
    std::mt19937_64 engine;
    std::normal_distribution<double> normal;
  };

  void check_point(const Eigen::VectorXd& x) const;
  void perturb(double* data, std::size_t count);

  std::string name_;
  int n_;
  int m_;
  Eigen::VectorXd standard_start_;
  std::shared_ptr<const ObjectiveFunctions> functions_;
  EvalCounters counters_;
  std::vector<NoiseLayer> noise_;
};

/// Adds multiplicative relative noise to both objective values and Jacobians.
///
/// Draws are redrawn on every call, consumed from a std::mt19937_64 seeded
/// with `spec.seed`: the m objective entries for evaluate(); for jacobian()
/// the m*n entries in row-major order (Entrywise) or one draw per row
/// (PerObjective). rho == 0 is an exact
/// pass-through and consumes no draws. Counters carry over from `problem`.
MultiObjectiveProblem wrap_noisy(MultiObjectiveProblem problem,
                                 const NoiseSpec& spec);

}  // namespace moadagrad

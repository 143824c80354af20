#pragma once

#include <optional>

#include <Eigen/Dense>

#include "moadagrad/errors.hpp"

namespace moadagrad {

inline constexpr double kDefaultSubproblemTol = 1e-10;
inline constexpr int kDefaultSubproblemIterations = 100000;

/// Minimum-norm element of the convex hull of the rows of G.
///
/// lambda lies on the unit simplex, g_s = G^T lambda and omega = |g_s|^2 is
/// the criticality measure. Only g_s is unique; lambda may not be.
struct SubproblemSolution {
  Eigen::VectorXd lambda;
  Eigen::VectorXd g_s;
  double omega = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
};

/// The iterative solver hit its iteration cap before meeting the tolerance.
class SubproblemConvergenceError : public Error {
 public:
  SubproblemConvergenceError(const std::string& what, SubproblemSolution best)
      : Error(what), best_(std::move(best)) {}
  const SubproblemSolution& best() const { return best_; }

 private:
  SubproblemSolution best_;
};

/// Solves min |sum_j lambda_j g_j|^2 over the unit simplex.
///
/// m = 1 and m = 2 are solved in closed form. For m >= 3 this runs projected
/// gradient on the simplex with step 1/(2 sigma_max(G G^T)) from the uniform
/// weights, polished by an active-set solve on the current support. The
/// result satisfies the KKT conditions within `tol` relative to (1 + omega).
/// G = 0 returns uniform weights with g_s = 0.
SubproblemSolution min_norm_element(const Eigen::MatrixXd& G,
                                    double tol = kDefaultSubproblemTol,
                                    int max_iterations = kDefaultSubproblemIterations);

/// The iterative route of min_norm_element, usable for any m (including
/// m = 2, where it serves as a cross-check of the closed form).
/// `initial_lambda` defaults to the uniform weights.
SubproblemSolution min_norm_iterative(const Eigen::MatrixXd& G, double tol,
                                      int max_iterations = kDefaultSubproblemIterations,
                                      const Eigen::VectorXd* initial_lambda = nullptr);

/// Closed form for two gradients.
SubproblemSolution min_norm_two(const Eigen::VectorXd& g1, const Eigen::VectorXd& g2);

/// Exhaustive scan of the simplex grid with spacing `grid_step` (m <= 4).
/// Test oracle; cost grows like (1/grid_step)^(m-1).
SubproblemSolution brute_force_min_norm(const Eigen::MatrixXd& G, double grid_step);

/// Normalized complementarity residual of lambda for the min-norm problem:
///   [max_j max(0, w - g_j.g_s) + sum_j lambda_j |g_j.g_s - w|] / (1 + w)
/// with g_s = G^T lambda and w = |g_s|^2. Zero exactly at a solution.
double kkt_residual(const Eigen::MatrixXd& G, const Eigen::VectorXd& lambda);

/// Euclidean projection onto {lambda >= 0, sum lambda = 1}.
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v);

/// The unit common descent direction -g_s / |g_s|, when omega > 0.
std::optional<Eigen::VectorXd> normalized_direction(const SubproblemSolution& s);

/// max_j g_j . d over the rows of G.
double max_directional_derivative(const Eigen::MatrixXd& G, const Eigen::VectorXd& d);

}  // namespace moadagrad

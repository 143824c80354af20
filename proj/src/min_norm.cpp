#include "moadagrad/min_norm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace moadagrad {

namespace {

// Inner products and combinations are carried in extended precision: g_s is
// usually a heavy cancellation of much larger gradients.
using Real = long double;
using MatL = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using VecL = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

void require_finite(const Eigen::MatrixXd& G) {
  if (G.rows() < 1 || G.cols() < 1) {
    throw InputError("min-norm subproblem: G must have at least one row and column");
  }
  if (!G.allFinite()) throw InputError("min-norm subproblem: G has non-finite entries");
}

void require_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw InputError("min-norm subproblem: tolerance must be positive");
  }
}

VecL combine(const Eigen::MatrixXd& G, const VecL& lambda) {
  VecL gs = VecL::Zero(G.cols());
  for (Eigen::Index j = 0; j < G.rows(); ++j) {
    if (lambda[j] == 0) continue;
    for (Eigen::Index c = 0; c < G.cols(); ++c) {
      gs[c] += lambda[j] * static_cast<Real>(G(j, c));
    }
  }
  return gs;
}

Real residual_from(const Eigen::MatrixXd& G, const VecL& lambda, const VecL& gs) {
  Real w = gs.squaredNorm();
  Real worst = 0, slack = 0;
  for (Eigen::Index j = 0; j < G.rows(); ++j) {
    Real dot = 0;
    for (Eigen::Index c = 0; c < G.cols(); ++c) dot += static_cast<Real>(G(j, c)) * gs[c];
    worst = std::max(worst, w - dot);
    slack += lambda[j] * std::abs(dot - w);
  }
  return (worst + slack) / (1 + w);
}

// Residual from the Gram matrix of G / scale, expressed in the units of G.
Real residual_gram(const MatL& Q, Real scale2, const VecL& lambda) {
  VecL q = Q * lambda;
  Real w = lambda.dot(q);
  Real worst = 0, slack = 0;
  for (Eigen::Index j = 0; j < Q.rows(); ++j) {
    worst = std::max(worst, w - q[j]);
    slack += lambda[j] * std::abs(q[j] - w);
  }
  return scale2 * (worst + slack) / (1 + scale2 * w);
}

SubproblemSolution finish(const Eigen::MatrixXd& G, VecL lambda, int iterations) {
  for (Eigen::Index j = 0; j < lambda.size(); ++j) {
    if (lambda[j] < 0) lambda[j] = 0;
  }
  lambda /= lambda.sum();
  VecL gs = combine(G, lambda);
  SubproblemSolution out;
  out.lambda = lambda.cast<double>();
  out.g_s = gs.cast<double>();
  out.omega = static_cast<double>(out.g_s.cast<Real>().squaredNorm());
  out.kkt_residual = static_cast<double>(residual_from(G, lambda, gs));
  out.iterations = iterations;
  return out;
}

SubproblemSolution uniform_zero(const Eigen::MatrixXd& G) {
  SubproblemSolution out;
  out.lambda = Eigen::VectorXd::Constant(G.rows(), 1.0 / G.rows());
  out.g_s = Eigen::VectorXd::Zero(G.cols());
  return out;
}

VecL project_simplex_l(const VecL& v) {
  const Eigen::Index m = v.size();
  std::vector<Real> u(v.data(), v.data() + m);
  std::sort(u.begin(), u.end(), std::greater<>());
  Real cumulative = 0, theta = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    cumulative += u[i];
    Real t = (cumulative - 1) / static_cast<Real>(i + 1);
    if (u[i] - t > 0) theta = t;
  }
  VecL out(m);
  for (Eigen::Index i = 0; i < m; ++i) out[i] = std::max<Real>(v[i] - theta, 0);
  return out;
}

// Primal active-set refinement started from the support of `start`.
// Returns nothing when it cannot settle within a few passes.
std::optional<VecL> polish(const MatL& Q, const VecL& start) {
  const Eigen::Index m = Q.rows();
  VecL lam = start;
  std::vector<bool> in_support(m);
  for (Eigen::Index j = 0; j < m; ++j) in_support[j] = lam[j] > 0;
  const Real zero_tol = 64 * std::numeric_limits<Real>::epsilon() *
                        std::max<Real>(Q.diagonal().maxCoeff(), 1e-300L);

  for (Eigen::Index pass = 0; pass < 4 * m; ++pass) {
    std::vector<Eigen::Index> S;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (in_support[j]) S.push_back(j);
    }
    const auto k = static_cast<Eigen::Index>(S.size());
    if (k == 0) return std::nullopt;
    MatL K = MatL::Zero(k + 1, k + 1);
    VecL rhs = VecL::Zero(k + 1);
    for (Eigen::Index a = 0; a < k; ++a) {
      for (Eigen::Index b = 0; b < k; ++b) K(a, b) = 2 * Q(S[a], S[b]);
      K(a, k) = 1;
      K(k, a) = 1;
    }
    rhs[k] = 1;
    VecL sol = K.completeOrthogonalDecomposition().solve(rhs);

    VecL mu = VecL::Zero(m);
    for (Eigen::Index a = 0; a < k; ++a) mu[S[a]] = sol[a];

    if (sol.head(k).minCoeff() >= 0) {
      lam = mu / mu.sum();
      VecL q = Q * lam;
      Real w = lam.dot(q);
      Eigen::Index entering = -1;
      Real worst = zero_tol;
      for (Eigen::Index j = 0; j < m; ++j) {
        if (!in_support[j] && w - q[j] > worst) {
          worst = w - q[j];
          entering = j;
        }
      }
      if (entering < 0) return lam;
      in_support[entering] = true;
      continue;
    }

    // Move toward mu until the first weight hits zero, then drop it.
    Real tau = 1;
    for (Eigen::Index j : S) {
      if (mu[j] < lam[j] && mu[j] < 0) tau = std::min(tau, lam[j] / (lam[j] - mu[j]));
    }
    lam += tau * (mu - lam);
    bool dropped = false;
    for (Eigen::Index j : S) {
      if (lam[j] <= 0 || (mu[j] < 0 && lam[j] <= zero_tol)) {
        lam[j] = 0;
        in_support[j] = false;
        dropped = true;
      }
    }
    if (!dropped) return std::nullopt;
    lam /= lam.sum();
  }
  return std::nullopt;
}

}  // namespace

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v) {
  if (v.size() < 1) throw InputError("project_to_simplex: empty vector");
  return project_simplex_l(v.cast<Real>()).cast<double>();
}

SubproblemSolution min_norm_two(const Eigen::VectorXd& g1, const Eigen::VectorXd& g2) {
  if (g1.size() != g2.size() || g1.size() < 1) {
    throw InputError("min_norm_two: gradients must have equal, positive length");
  }
  if (!g1.allFinite() || !g2.allFinite()) {
    throw InputError("min_norm_two: non-finite gradient");
  }
  VecL a = g1.cast<Real>(), b = g2.cast<Real>();
  VecL d = a - b;
  Real dd = d.squaredNorm();
  VecL lambda(2);
  lambda << 1, 0;
  if (dd > 0) {
    // Form the smaller weight directly so it keeps full relative precision.
    const Real l1 = std::clamp<Real>(-b.dot(d) / dd, 0, 1);
    const Real l2 = std::clamp<Real>(a.dot(d) / dd, 0, 1);
    if (l1 <= l2) {
      lambda << l1, 1 - l1;
    } else {
      lambda << 1 - l2, l2;
    }
  }

  Eigen::MatrixXd G(2, g1.size());
  G.row(0) = g1.transpose();
  G.row(1) = g2.transpose();
  return finish(G, lambda, 0);
}

SubproblemSolution min_norm_iterative(const Eigen::MatrixXd& G, double tol,
                                      int max_iterations,
                                      const Eigen::VectorXd* initial_lambda) {
  require_finite(G);
  require_tol(tol);
  if (max_iterations < 1) throw InputError("min-norm subproblem: iteration cap must be positive");
  const Eigen::Index m = G.rows();
  const double scale = G.cwiseAbs().maxCoeff();
  if (scale == 0.0) return uniform_zero(G);

  MatL Gs = (G / scale).cast<Real>();
  MatL Q = Gs * Gs.transpose();
  const Real scale2 = static_cast<Real>(scale) * scale;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Q.cast<double>(), Eigen::EigenvaluesOnly);
  const Real sigma = std::max<Real>(eig.eigenvalues().maxCoeff(), 1e-300L);
  const Real step = 1 / (2 * sigma);

  VecL lam;
  if (initial_lambda != nullptr) {
    if (initial_lambda->size() != m) throw InputError("min-norm subproblem: initial weights have wrong size");
    lam = project_simplex_l(initial_lambda->cast<Real>());
  } else {
    lam = VecL::Constant(m, Real(1) / m);
  }

  VecL best = lam;
  Real best_res = residual_gram(Q, scale2, lam);
  if (best_res <= tol) return finish(G, lam, 0);

  for (int it = 1; it <= max_iterations; ++it) {
    lam = project_simplex_l(lam - step * (2 * (Q * lam)));
    if (it % 10 != 1 && it != max_iterations) continue;

    Real res = residual_gram(Q, scale2, lam);
    if (res < best_res) {
      best_res = res;
      best = lam;
    }
    if (res <= tol) return finish(G, lam, it);
    if (auto candidate = polish(Q, lam)) {
      Real cres = residual_gram(Q, scale2, *candidate);
      if (cres < best_res) {
        best_res = cres;
        best = *candidate;
      }
      if (cres <= tol) return finish(G, *candidate, it);
    }
  }
  throw SubproblemConvergenceError(
      "min-norm subproblem: no convergence within " + std::to_string(max_iterations) +
          " iterations (best residual " + std::to_string(static_cast<double>(best_res)) + ")",
      finish(G, best, max_iterations));
}

SubproblemSolution min_norm_element(const Eigen::MatrixXd& G, double tol, int max_iterations) {
  require_finite(G);
  require_tol(tol);
  if (G.isZero(0.0)) return uniform_zero(G);
  if (G.rows() == 1) return finish(G, VecL::Ones(1), 0);
  if (G.rows() == 2) return min_norm_two(G.row(0).transpose(), G.row(1).transpose());
  return min_norm_iterative(G, tol, max_iterations);
}

SubproblemSolution brute_force_min_norm(const Eigen::MatrixXd& G, double grid_step) {
  require_finite(G);
  const Eigen::Index m = G.rows();
  if (m > 4) throw InputError("brute_force_min_norm: unsupported size m > 4");
  if (!(grid_step > 0.0) || grid_step > 0.1) {
    throw InputError("brute_force_min_norm: grid step must lie in (0, 0.1]");
  }
  const long divisions = static_cast<long>(std::ceil(1.0 / grid_step - 1e-9));
  MatL Q = G.cast<Real>() * G.cast<Real>().transpose();

  VecL lam = VecL::Zero(m), best = VecL::Zero(m);
  Real best_value = std::numeric_limits<Real>::infinity();
  int visited = 0;
  std::vector<long> counts(m, 0);
  // Enumerate compositions of `divisions` into m nonnegative parts.
  std::function<void(Eigen::Index, long)> scan = [&](Eigen::Index j, long remaining) {
    if (j == m - 1) {
      counts[j] = remaining;
      for (Eigen::Index i = 0; i < m; ++i) lam[i] = static_cast<Real>(counts[i]) / divisions;
      Real value = lam.dot(Q * lam);
      ++visited;
      if (value < best_value) {
        best_value = value;
        best = lam;
      }
      return;
    }
    for (long c = 0; c <= remaining; ++c) {
      counts[j] = c;
      scan(j + 1, remaining - c);
    }
  };
  scan(0, divisions);
  return finish(G, best, visited);
}

double kkt_residual(const Eigen::MatrixXd& G, const Eigen::VectorXd& lambda) {
  require_finite(G);
  if (lambda.size() != G.rows()) throw InputError("kkt_residual: lambda has wrong size");
  if (!lambda.allFinite() || lambda.minCoeff() < -1e-9 || std::abs(lambda.sum() - 1.0) > 1e-9) {
    throw InputError("kkt_residual: lambda is not on the unit simplex");
  }
  VecL lam = lambda.cast<Real>();
  return static_cast<double>(residual_from(G, lam, combine(G, lam)));
}

std::optional<Eigen::VectorXd> normalized_direction(const SubproblemSolution& s) {
  double norm = s.g_s.norm();
  if (!(norm > 0.0)) return std::nullopt;
  return Eigen::VectorXd(-s.g_s / norm);
}

double max_directional_derivative(const Eigen::MatrixXd& G, const Eigen::VectorXd& d) {
  if (G.cols() != d.size()) throw InputError("max_directional_derivative: dimension mismatch");
  VecL dl = d.cast<Real>();
  Real best = -std::numeric_limits<Real>::infinity();
  for (Eigen::Index j = 0; j < G.rows(); ++j) {
    best = std::max(best, G.row(j).cast<Real>().dot(dl.transpose()));
  }
  return static_cast<double>(best);
}

}  // namespace moadagrad

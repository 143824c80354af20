#include "moadagrad/problem.hpp"

#include <cmath>
#include <utility>

namespace moadagrad {

namespace {

std::size_t first_non_finite(const double* data, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::isfinite(data[i])) return i;
  }
  return count;
}

}  // namespace

MultiObjectiveProblem::MultiObjectiveProblem(std::string name, int n, int m,
                                             Eigen::VectorXd standard_start,
                                             ObjectiveFunctions functions)
    : name_(std::move(name)),
      n_(n),
      m_(m),
      standard_start_(std::move(standard_start)) {
  if (n_ < 1 || m_ < 1) {
    throw InputError("problem '" + name_ + "': n and m must be positive");
  }
  if (standard_start_.size() != n_) {
    throw InputError("problem '" + name_ + "': start has wrong dimension");
  }
  if (!functions.values || !functions.jacobian) {
    throw InputError("problem '" + name_ + "': missing oracle");
  }
  functions_ = std::make_shared<const ObjectiveFunctions>(std::move(functions));
}

void MultiObjectiveProblem::check_point(const Eigen::VectorXd& x) const {
  if (x.size() != n_) {
    throw InputError("problem '" + name_ + "': expected x of length " +
                     std::to_string(n_) + ", got " + std::to_string(x.size()));
  }
  if (!x.allFinite()) {
    throw InputError("problem '" + name_ + "': x has non-finite entries");
  }
}

std::string to_string(NoiseModel model) {
  return model == NoiseModel::Entrywise ? "entrywise" : "per_objective";
}

NoiseModel parse_noise_model(const std::string& text) {
  if (text == "entrywise") return NoiseModel::Entrywise;
  if (text == "per_objective") return NoiseModel::PerObjective;
  throw LookupError("unknown noise model '" + text + "' (expected entrywise or per_objective)");
}

void MultiObjectiveProblem::perturb(double* data, std::size_t count) {
  for (auto& layer : noise_) {
    for (std::size_t i = 0; i < count; ++i) {
      data[i] *= 1.0 + layer.rho * layer.normal(layer.engine);
    }
  }
}

Eigen::VectorXd MultiObjectiveProblem::evaluate(const Eigen::VectorXd& x) {
  check_point(x);
  ++counters_.objective_evals;
  Eigen::VectorXd f = functions_->values(x);
  if (f.size() != m_) {
    throw InputError("problem '" + name_ + "': oracle returned " +
                     std::to_string(f.size()) + " values, expected " +
                     std::to_string(m_));
  }
  auto bad = first_non_finite(f.data(), f.size());
  if (bad != static_cast<std::size_t>(f.size())) {
    throw NumericError("problem '" + name_ + "': objective " +
                           std::to_string(bad) + " is not finite",
                       bad);
  }
  perturb(f.data(), f.size());
  return f;
}

Eigen::MatrixXd MultiObjectiveProblem::jacobian(const Eigen::VectorXd& x) {
  check_point(x);
  ++counters_.gradient_evals;
  Eigen::MatrixXd g = functions_->jacobian(x);
  if (g.rows() != m_ || g.cols() != n_) {
    throw InputError("problem '" + name_ + "': oracle returned a " +
                     std::to_string(g.rows()) + "x" + std::to_string(g.cols()) +
                     " Jacobian");
  }
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (!std::isfinite(g(i, j))) {
        auto idx = static_cast<std::size_t>(i) * n_ + j;
        throw NumericError("problem '" + name_ + "': gradient entry (" +
                               std::to_string(i) + "," + std::to_string(j) +
                               ") is not finite",
                           idx);
      }
    }
  }
  for (auto& layer : noise_) {
    for (int i = 0; i < m_; ++i) {
      if (layer.model == NoiseModel::PerObjective) {
        g.row(i) *= 1.0 + layer.rho * layer.normal(layer.engine);
      } else {
        for (int j = 0; j < n_; ++j) g(i, j) *= 1.0 + layer.rho * layer.normal(layer.engine);
      }
    }
  }
  return g;
}

double MultiObjectiveProblem::phi(const Eigen::VectorXd& x) {
  return evaluate(x).maxCoeff();
}

MultiObjectiveProblem MultiObjectiveProblem::noiseless() const {
  MultiObjectiveProblem copy = *this;
  copy.noise_.clear();
  copy.reset_counters();
  return copy;
}

MultiObjectiveProblem wrap_noisy(MultiObjectiveProblem problem,
                                 const NoiseSpec& spec) {
  if (!(spec.rho >= 0.0) || !std::isfinite(spec.rho)) {
    throw InputError("noise level must be a finite value >= 0");
  }
  if (spec.rho > 0.0) {
    problem.noise_.push_back(
        {spec.rho, spec.model, std::mt19937_64(spec.seed), std::normal_distribution<double>(0.0, 1.0)});
  }
  return problem;
}

}  // namespace moadagrad

#pragma once

#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "moadagrad/multitask.hpp"

namespace moadagrad::kernels {

/// Sums (not means) of the per-sample losses and gradients over a set of rows.
struct LossSums {
  double loss1 = 0.0;
  double loss2 = 0.0;
  Eigen::VectorXd grad1;
  Eigen::VectorXd grad2;
};

/// Samples handled per OpenMP work item. Partial sums are combined in block
/// order, so results do not depend on the thread count.
inline constexpr std::size_t kBlockSize = 256;

/// Reference: one pass in row order.
LossSums accumulate_serial(const Dataset& data, std::span<const std::size_t> rows,
                           const Eigen::VectorXd& params, bool with_gradient);

/// Blocked OpenMP version with a fixed reduction order.
LossSums accumulate_parallel(const Dataset& data, std::span<const std::size_t> rows,
                             const Eigen::VectorXd& params, bool with_gradient);

}  // namespace moadagrad::kernels

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "moadagrad/problem.hpp"

namespace moadagrad {

/// QuadrantsCircle: Task 1 is the quadrant (4-class softmax), Task 2 the unit
/// circle (logistic). Features [1, x1, x2, x1^2, x2^2].
/// DiagonalsCircle: Task 1 is the diagonal pair of quadrants (logistic),
/// Task 2 the unit circle. Features [1, x1, x2, x1*x2, x1^2, x2^2] for both.
enum class ExampleKind { QuadrantsCircle, DiagonalsCircle };

std::string to_string(ExampleKind kind);
/// Accepts "quadrants" / "diagonals" (and the enum spellings).
ExampleKind parse_example_kind(const std::string& text);

enum class Split { Train, Test };

/// Loss and gradient kernels: the OpenMP one is the default, the serial one
/// is the reference it is tested against.
enum class Kernel { Serial, Parallel };

using FeatureMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using PointMatrix = Eigen::Matrix<double, Eigen::Dynamic, 2, Eigen::RowMajor>;

struct Dataset {
  ExampleKind kind = ExampleKind::QuadrantsCircle;
  std::uint64_t seed = 0;
  PointMatrix points;
  FeatureMatrix features;
  /// Quadrant 1..4 counterclockwise from (+,+), or diagonal label 0/1.
  std::vector<int> labels_task1;
  /// 1 iff strictly inside the unit circle.
  std::vector<int> labels_task2;
  /// Disjoint, sorted, covering all rows.
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;

  std::size_t size() const { return labels_task1.size(); }
  const std::vector<std::size_t>& indices(Split split) const {
    return split == Split::Train ? train : test;
  }
};

int feature_dim(ExampleKind kind);
/// 4 for the softmax task, 2 for a binary (logistic) task.
int task1_classes(ExampleKind kind);
/// Size of the Task 1 block: d*4 for softmax (W1 column-major, column k
/// holds the weights of class k), d for logistic. Task 2 follows with d entries.
int task1_block_size(ExampleKind kind);
int parameter_count(ExampleKind kind);

Eigen::VectorXd feature_row(ExampleKind kind, double x1, double x2);
/// Axis points count as right (x1 >= 0) and top (x2 >= 0).
int quadrant_label(double x1, double x2);
int circle_label(double x1, double x2);
/// 1 on quadrants 1 and 3 (x1 * x2 >= 0), else 0.
int diagonal_label(double x1, double x2);

/// N points uniform in [-2, 2]^2 from std::mt19937_64(seed); the same engine
/// then shuffles the indices and the first N/5 become the test split.
Dataset generate_dataset(ExampleKind kind, std::size_t N = 10000, std::uint64_t seed = 0);

/// Dataset over explicit points; labels follow from geometry.
Dataset dataset_from_points(ExampleKind kind, const PointMatrix& points,
                            const std::vector<bool>& is_test);

struct TaskLosses {
  double task1 = 0.0;
  double task2 = 0.0;
};

/// Mean cross-entropies over the split; probabilities clamped to [1e-12, 1 - 1e-12].
TaskLosses losses(const Dataset& data, Split split, const Eigen::VectorXd& params,
                  Kernel kernel = Kernel::Parallel);

/// 2 x P matrix: row 0 is grad J1 (zero outside the Task 1 block), row 1 is
/// grad J2 (zero outside the Task 2 block).
Eigen::MatrixXd loss_gradients(const Dataset& data, Split split, const Eigen::VectorXd& params,
                               Kernel kernel = Kernel::Parallel);

struct TaskAccuracy {
  double task1 = 0.0;
  double task2 = 0.0;
  double min = 0.0;
};

/// Argmax accuracy (ties to the lowest class) for softmax tasks; a logistic
/// task predicts 1 iff its logit is > 0.
TaskAccuracy accuracy(const Dataset& data, Split split, const Eigen::VectorXd& params);

/// Bi-objective training problem (J1, J2) on the train split, started at zero.
MultiObjectiveProblem as_problem(std::shared_ptr<const Dataset> data,
                                 Kernel kernel = Kernel::Parallel);

/// CSV with columns x1,x2,label1,label2,split (split is "train" or "test").
void write_dataset_csv(const Dataset& data, const std::string& path);
Dataset read_dataset_csv(const std::string& path, ExampleKind kind);

}  // namespace moadagrad

#include "moadagrad/multitask_kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace moadagrad::kernels {

namespace {

constexpr double kProbFloor = 1e-12;

double clamped_log(double p) { return std::log(std::clamp(p, kProbFloor, 1.0 - kProbFloor)); }

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

struct Layout {
  int d;
  int classes1;  // 4 (softmax) or 2 (logistic)
  int block1;
};

Layout layout_of(const Dataset& data) {
  return {feature_dim(data.kind), task1_classes(data.kind), task1_block_size(data.kind)};
}

void init(LossSums& acc, const Layout& l, bool with_gradient) {
  if (with_gradient) {
    acc.grad1 = Eigen::VectorXd::Zero(l.block1);
    acc.grad2 = Eigen::VectorXd::Zero(l.d);
  }
}

// Logistic contribution; returns the loss and adds (p - y) x into grad.
double logistic_sample(const double* x, int d, const double* w, int y, double* grad) {
  double z = 0.0;
  for (int i = 0; i < d; ++i) z += x[i] * w[i];
  double p = sigmoid(z);
  double loss = y == 1 ? -clamped_log(p) : -clamped_log(1.0 - p);
  if (grad) {
    double r = p - y;
    for (int i = 0; i < d; ++i) grad[i] += r * x[i];
  }
  return loss;
}

double softmax_sample(const double* x, int d, const double* W, int label, double* grad) {
  std::array<double, 4> z{};
  for (int k = 0; k < 4; ++k) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += x[i] * W[k * d + i];
    z[k] = s;
  }
  double zmax = *std::max_element(z.begin(), z.end());
  double denom = 0.0;
  for (int k = 0; k < 4; ++k) denom += std::exp(z[k] - zmax);
  const int y = label - 1;
  double loss = -clamped_log(std::exp(z[y] - zmax) / denom);
  if (grad) {
    for (int k = 0; k < 4; ++k) {
      double r = std::exp(z[k] - zmax) / denom - (k == y ? 1.0 : 0.0);
      for (int i = 0; i < d; ++i) grad[k * d + i] += r * x[i];
    }
  }
  return loss;
}

void add_sample(const Dataset& data, const Layout& l, std::size_t row, const double* params,
                bool with_gradient, LossSums& acc) {
  const double* x = data.features.data() + row * l.d;
  double* g1 = with_gradient ? acc.grad1.data() : nullptr;
  double* g2 = with_gradient ? acc.grad2.data() : nullptr;
  if (l.classes1 == 4) {
    acc.loss1 += softmax_sample(x, l.d, params, data.labels_task1[row], g1);
  } else {
    acc.loss1 += logistic_sample(x, l.d, params, data.labels_task1[row], g1);
  }
  acc.loss2 += logistic_sample(x, l.d, params + l.block1, data.labels_task2[row], g2);
}

void check(const Dataset& data, const Eigen::VectorXd& params) {
  if (params.size() != parameter_count(data.kind)) {
    throw InputError("multitask: expected " + std::to_string(parameter_count(data.kind)) +
                     " parameters, got " + std::to_string(params.size()));
  }
}

}  // namespace

LossSums accumulate_serial(const Dataset& data, std::span<const std::size_t> rows,
                           const Eigen::VectorXd& params, bool with_gradient) {
  check(data, params);
  const Layout l = layout_of(data);
  LossSums acc;
  init(acc, l, with_gradient);
  for (std::size_t row : rows) add_sample(data, l, row, params.data(), with_gradient, acc);
  return acc;
}

LossSums accumulate_parallel(const Dataset& data, std::span<const std::size_t> rows,
                             const Eigen::VectorXd& params, bool with_gradient) {
  check(data, params);
  const Layout l = layout_of(data);
  const std::size_t count = rows.size();
  const std::size_t blocks = (count + kBlockSize - 1) / kBlockSize;
  std::vector<LossSums> partial(blocks);

  const long nblocks = static_cast<long>(blocks);
#pragma omp parallel for schedule(static)
  for (long b = 0; b < nblocks; ++b) {
    LossSums& acc = partial[b];
    init(acc, l, with_gradient);
    const std::size_t begin = static_cast<std::size_t>(b) * kBlockSize;
    const std::size_t end = std::min(count, begin + kBlockSize);
    for (std::size_t r = begin; r < end; ++r) {
      add_sample(data, l, rows[r], params.data(), with_gradient, acc);
    }
  }

  LossSums total;
  init(total, l, with_gradient);
  for (const auto& acc : partial) {
    total.loss1 += acc.loss1;
    total.loss2 += acc.loss2;
    if (with_gradient) {
      total.grad1 += acc.grad1;
      total.grad2 += acc.grad2;
    }
  }
  return total;
}

}  // namespace moadagrad::kernels

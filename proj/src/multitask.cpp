#include "moadagrad/multitask.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "moadagrad/multitask_kernels.hpp"

namespace moadagrad {

namespace {

kernels::LossSums run_kernel(const Dataset& data, Split split, const Eigen::VectorXd& params,
                             Kernel kernel, bool with_gradient) {
  const auto& rows = data.indices(split);
  if (rows.empty()) throw InputError("multitask: empty split");
  std::span<const std::size_t> view(rows.data(), rows.size());
  return kernel == Kernel::Serial ? kernels::accumulate_serial(data, view, params, with_gradient)
                                  : kernels::accumulate_parallel(data, view, params, with_gradient);
}

void fill_labels_and_features(Dataset& data) {
  const std::size_t N = static_cast<std::size_t>(data.points.rows());
  const int d = feature_dim(data.kind);
  data.features.resize(static_cast<Eigen::Index>(N), d);
  data.labels_task1.resize(N);
  data.labels_task2.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double x1 = data.points(i, 0), x2 = data.points(i, 1);
    data.features.row(i) = feature_row(data.kind, x1, x2).transpose();
    data.labels_task1[i] = data.kind == ExampleKind::QuadrantsCircle ? quadrant_label(x1, x2)
                                                                      : diagonal_label(x1, x2);
    data.labels_task2[i] = circle_label(x1, x2);
  }
}

}  // namespace

std::string to_string(ExampleKind kind) {
  return kind == ExampleKind::QuadrantsCircle ? "quadrants" : "diagonals";
}

ExampleKind parse_example_kind(const std::string& text) {
  if (text == "quadrants" || text == "QuadrantsCircle") return ExampleKind::QuadrantsCircle;
  if (text == "diagonals" || text == "DiagonalsCircle") return ExampleKind::DiagonalsCircle;
  throw LookupError("unknown example '" + text + "' (valid: quadrants, diagonals)");
}

int feature_dim(ExampleKind kind) { return kind == ExampleKind::QuadrantsCircle ? 5 : 6; }

int task1_classes(ExampleKind kind) { return kind == ExampleKind::QuadrantsCircle ? 4 : 2; }

int task1_block_size(ExampleKind kind) {
  return task1_classes(kind) == 2 ? feature_dim(kind) : feature_dim(kind) * task1_classes(kind);
}

int parameter_count(ExampleKind kind) { return task1_block_size(kind) + feature_dim(kind); }

Eigen::VectorXd feature_row(ExampleKind kind, double x1, double x2) {
  Eigen::VectorXd f(feature_dim(kind));
  if (kind == ExampleKind::QuadrantsCircle) {
    f << 1.0, x1, x2, x1 * x1, x2 * x2;
  } else {
    f << 1.0, x1, x2, x1 * x2, x1 * x1, x2 * x2;
  }
  return f;
}

int quadrant_label(double x1, double x2) {
  const bool right = x1 >= 0.0, top = x2 >= 0.0;
  if (right && top) return 1;
  if (!right && top) return 2;
  if (!right && !top) return 3;
  return 4;
}

int circle_label(double x1, double x2) { return x1 * x1 + x2 * x2 < 1.0 ? 1 : 0; }

int diagonal_label(double x1, double x2) { return x1 * x2 >= 0.0 ? 1 : 0; }

Dataset generate_dataset(ExampleKind kind, std::size_t N, std::uint64_t seed) {
  if (N < 10) throw InputError("generate_dataset: N must be at least 10");
  Dataset data;
  data.kind = kind;
  data.seed = seed;
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  data.points.resize(static_cast<Eigen::Index>(N), 2);
  for (std::size_t i = 0; i < N; ++i) {
    data.points(i, 0) = coord(engine);
    data.points(i, 1) = coord(engine);
  }
  fill_labels_and_features(data);

  std::vector<std::size_t> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), engine);
  const std::size_t n_test = N / 5;
  data.test.assign(order.begin(), order.begin() + n_test);
  data.train.assign(order.begin() + n_test, order.end());
  std::sort(data.test.begin(), data.test.end());
  std::sort(data.train.begin(), data.train.end());
  return data;
}

Dataset dataset_from_points(ExampleKind kind, const PointMatrix& points,
                            const std::vector<bool>& is_test) {
  if (static_cast<std::size_t>(points.rows()) != is_test.size()) {
    throw InputError("dataset_from_points: split flags do not match the point count");
  }
  Dataset data;
  data.kind = kind;
  data.points = points;
  fill_labels_and_features(data);
  for (std::size_t i = 0; i < is_test.size(); ++i) (is_test[i] ? data.test : data.train).push_back(i);
  return data;
}

TaskLosses losses(const Dataset& data, Split split, const Eigen::VectorXd& params, Kernel kernel) {
  auto sums = run_kernel(data, split, params, kernel, false);
  const double count = static_cast<double>(data.indices(split).size());
  return {sums.loss1 / count, sums.loss2 / count};
}

Eigen::MatrixXd loss_gradients(const Dataset& data, Split split, const Eigen::VectorXd& params,
                               Kernel kernel) {
  auto sums = run_kernel(data, split, params, kernel, true);
  const double count = static_cast<double>(data.indices(split).size());
  const int block1 = task1_block_size(data.kind);
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(2, parameter_count(data.kind));
  G.row(0).head(block1) = sums.grad1.transpose() / count;
  G.row(1).tail(feature_dim(data.kind)) = sums.grad2.transpose() / count;
  return G;
}

TaskAccuracy accuracy(const Dataset& data, Split split, const Eigen::VectorXd& params) {
  if (params.size() != parameter_count(data.kind)) {
    throw InputError("accuracy: parameter vector has wrong size");
  }
  const auto& rows = data.indices(split);
  if (rows.empty()) throw InputError("accuracy: empty split");
  const int d = feature_dim(data.kind);
  const int block1 = task1_block_size(data.kind);
  const bool softmax = task1_classes(data.kind) == 4;
  const long count = static_cast<long>(rows.size());
  long hit1 = 0, hit2 = 0;

#pragma omp parallel for reduction(+ : hit1, hit2) schedule(static)
  for (long r = 0; r < count; ++r) {
    const std::size_t row = rows[r];
    Eigen::Map<const Eigen::VectorXd> x(data.features.data() + row * d, d);
    int predicted1;
    if (softmax) {
      int best = 0;
      double best_score = -std::numeric_limits<double>::infinity();
      for (int k = 0; k < 4; ++k) {
        double s = x.dot(params.segment(k * d, d));
        if (s > best_score) {
          best_score = s;
          best = k;
        }
      }
      predicted1 = best + 1;
    } else {
      predicted1 = x.dot(params.head(d)) > 0.0 ? 1 : 0;
    }
    int predicted2 = x.dot(params.segment(block1, d)) > 0.0 ? 1 : 0;
    hit1 += predicted1 == data.labels_task1[row];
    hit2 += predicted2 == data.labels_task2[row];
  }
  TaskAccuracy acc;
  acc.task1 = static_cast<double>(hit1) / count;
  acc.task2 = static_cast<double>(hit2) / count;
  acc.min = std::min(acc.task1, acc.task2);
  return acc;
}

MultiObjectiveProblem as_problem(std::shared_ptr<const Dataset> data, Kernel kernel) {
  if (!data) throw InputError("as_problem: null dataset");
  const int P = parameter_count(data->kind);
  ObjectiveFunctions fns;
  fns.values = [data, kernel](const Eigen::VectorXd& params) {
    TaskLosses l = losses(*data, Split::Train, params, kernel);
    Eigen::VectorXd v(2);
    v << l.task1, l.task2;
    return v;
  };
  fns.jacobian = [data, kernel](const Eigen::VectorXd& params) {
    return loss_gradients(*data, Split::Train, params, kernel);
  };
  std::string name = data->kind == ExampleKind::QuadrantsCircle ? "QuadrantsCircle" : "DiagonalsCircle";
  return MultiObjectiveProblem(name, P, 2, Eigen::VectorXd::Zero(P), std::move(fns));
}

void write_dataset_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  std::vector<bool> is_test(data.size(), false);
  for (std::size_t i : data.test) is_test[i] = true;
  out << "x1,x2,label1,label2,split\n";
  char buf[128];
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%d,%s\n", data.points(i, 0), data.points(i, 1),
                  data.labels_task1[i], data.labels_task2[i], is_test[i] ? "test" : "train");
    out << buf;
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

Dataset read_dataset_csv(const std::string& path, ExampleKind kind) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != "x1,x2,label1,label2,split") {
    throw IoError("'" + path + "': unexpected header");
  }
  std::vector<double> coords;
  std::vector<int> l1, l2;
  std::vector<bool> is_test;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string a, b, c, d, e;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c, ',') ||
        !std::getline(ss, d, ',') || !std::getline(ss, e)) {
      throw IoError("'" + path + "' line " + std::to_string(line_no) + ": expected 5 fields");
    }
    try {
      coords.push_back(std::stod(a));
      coords.push_back(std::stod(b));
      l1.push_back(std::stoi(c));
      l2.push_back(std::stoi(d));
    } catch (const std::exception&) {
      throw IoError("'" + path + "' line " + std::to_string(line_no) + ": malformed number");
    }
    if (e != "train" && e != "test") {
      throw IoError("'" + path + "' line " + std::to_string(line_no) + ": split must be train or test");
    }
    is_test.push_back(e == "test");
  }
  PointMatrix points(static_cast<Eigen::Index>(is_test.size()), 2);
  for (std::size_t i = 0; i < is_test.size(); ++i) {
    points(i, 0) = coords[2 * i];
    points(i, 1) = coords[2 * i + 1];
  }
  Dataset data = dataset_from_points(kind, points, is_test);
  data.labels_task1 = std::move(l1);
  data.labels_task2 = std::move(l2);
  return data;
}

}  // namespace moadagrad

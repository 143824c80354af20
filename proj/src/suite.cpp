#include "moadagrad/suite.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace moadagrad {

namespace {

using Eigen::VectorXd;

ScalarProblem rosenbr() {
  ScalarProblem p{"ROSENBR", 2, VectorXd(2), {}};
  p.standard_start << -1.2, 1.0;
  p.value_grad = [](const VectorXd& x, VectorXd* g) {
    double r = x[1] - x[0] * x[0];
    if (g) {
      g->resize(2);
      (*g)[0] = -400.0 * x[0] * r - 2.0 * (1.0 - x[0]);
      (*g)[1] = 200.0 * r;
    }
    return 100.0 * r * r + (1.0 - x[0]) * (1.0 - x[0]);
  };
  return p;
}

ScalarProblem cube() {
  ScalarProblem p{"CUBE", 2, VectorXd(2), {}};
  p.standard_start << -1.2, 1.0;
  p.value_grad = [](const VectorXd& x, VectorXd* g) {
    double r = x[1] - x[0] * x[0] * x[0];
    if (g) {
      g->resize(2);
      (*g)[0] = -600.0 * x[0] * x[0] * r - 2.0 * (1.0 - x[0]);
      (*g)[1] = 200.0 * r;
    }
    return 100.0 * r * r + (1.0 - x[0]) * (1.0 - x[0]);
  };
  return p;
}

// Wayburn-Seader 1.
ScalarProblem waysea1() {
  ScalarProblem p{"WAYSEA1", 2, VectorXd(2), {}};
  p.standard_start << -3.5, 3.5;
  p.value_grad = [](const VectorXd& x, VectorXd* g) {
    double r1 = std::pow(x[0], 6) + std::pow(x[1], 4) - 17.0;
    double r2 = 2.0 * x[0] + x[1] - 4.0;
    if (g) {
      g->resize(2);
      (*g)[0] = 12.0 * r1 * std::pow(x[0], 5) + 4.0 * r2;
      (*g)[1] = 8.0 * r1 * std::pow(x[1], 3) + 2.0 * r2;
    }
    return r1 * r1 + r2 * r2;
  };
  return p;
}

ScalarProblem zangwil2() {
  ScalarProblem p{"ZANGWIL2", 2, VectorXd(2), {}};
  p.standard_start << 3.0, 8.0;
  p.value_grad = [](const VectorXd& x, VectorXd* g) {
    if (g) {
      g->resize(2);
      (*g)[0] = (32.0 * x[0] - 8.0 * x[1] - 56.0) / 15.0;
      (*g)[1] = (32.0 * x[1] - 8.0 * x[0] - 256.0) / 15.0;
    }
    return (16.0 * x[0] * x[0] + 16.0 * x[1] * x[1] - 8.0 * x[0] * x[1] - 56.0 * x[0] -
            256.0 * x[1] + 991.0) /
           15.0;
  };
  return p;
}

ScalarProblem arwhead(int n) {
  ScalarProblem p{"ARWHEAD", n, VectorXd::Ones(n), {}};
  p.value_grad = [n](const VectorXd& x, VectorXd* g) {
    const double xn2 = x[n - 1] * x[n - 1];
    double f = 0.0;
    if (g) g->setZero(n);
    for (int i = 0; i < n - 1; ++i) {
      double q = x[i] * x[i] + xn2;
      f += -4.0 * x[i] + 3.0 + q * q;
      if (g) {
        (*g)[i] += -4.0 + 4.0 * q * x[i];
        (*g)[n - 1] += 4.0 * q * x[n - 1];
      }
    }
    return f;
  };
  return p;
}

ScalarProblem vardim(int n) {
  ScalarProblem p{"VARDIM", n, VectorXd(n), {}};
  for (int i = 0; i < n; ++i) p.standard_start[i] = 1.0 - static_cast<double>(i + 1) / n;
  p.value_grad = [n](const VectorXd& x, VectorXd* g) {
    double f = 0.0, s = 0.0;
    for (int i = 0; i < n; ++i) {
      double r = x[i] - 1.0;
      f += r * r;
      s += (i + 1) * r;
    }
    f += s * s + s * s * s * s;
    if (g) {
      g->resize(n);
      double ds = 2.0 * s + 4.0 * s * s * s;
      for (int i = 0; i < n; ++i) (*g)[i] = 2.0 * (x[i] - 1.0) + ds * (i + 1);
    }
    return f;
  };
  return p;
}

// Brown almost-linear.
ScalarProblem brownal(int n) {
  ScalarProblem p{"BROWNAL", n, VectorXd::Constant(n, 0.5), {}};
  p.value_grad = [n](const VectorXd& x, VectorXd* g) {
    const double sum = x.sum();
    double prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= x[i];
    double f = 0.0, rsum = 0.0;
    VectorXd r(n - 1);
    for (int i = 0; i < n - 1; ++i) {
      r[i] = x[i] + sum - (n + 1.0);
      f += r[i] * r[i];
      rsum += r[i];
    }
    f += (prod - 1.0) * (prod - 1.0);
    if (g) {
      g->resize(n);
      for (int k = 0; k < n; ++k) {
        double others = 1.0;
        for (int j = 0; j < n; ++j) {
          if (j != k) others *= x[j];
        }
        (*g)[k] = 2.0 * rsum + (k < n - 1 ? 2.0 * r[k] : 0.0) + 2.0 * (prod - 1.0) * others;
      }
    }
    return f;
  };
  return p;
}

MultiObjectiveProblem from_pair_of_maps(
    std::string name, int n, VectorXd start,
    std::function<double(const VectorXd&, VectorXd*)> f1,
    std::function<double(const VectorXd&, VectorXd*)> f2) {
  ObjectiveFunctions fns;
  fns.values = [f1, f2](const VectorXd& x) {
    VectorXd v(2);
    v << f1(x, nullptr), f2(x, nullptr);
    return v;
  };
  fns.jacobian = [f1, f2, n](const VectorXd& x) {
    Eigen::MatrixXd G(2, n);
    VectorXd g;
    f1(x, &g);
    G.row(0) = g.transpose();
    f2(x, &g);
    G.row(1) = g.transpose();
    return G;
  };
  return MultiObjectiveProblem(std::move(name), n, 2, std::move(start), std::move(fns));
}

using Map2 = std::function<double(const VectorXd&, VectorXd*)>;

MultiObjectiveProblem lovison3() {
  Map2 f1 = [](const VectorXd& x, VectorXd* g) {
    if (g) *g = 2.0 * x;
    return x.squaredNorm();
  };
  Map2 f2 = [](const VectorXd& x, VectorXd* g) {
    if (g) {
      g->resize(2);
      (*g) << 2.0 * (x[0] - 6.0), -2.0 * (x[1] + 0.3);
    }
    return (x[0] - 6.0) * (x[0] - 6.0) - (x[1] + 0.3) * (x[1] + 0.3);
  };
  return from_pair_of_maps("Lovison3", 2, VectorXd::Zero(2), f1, f2);
}

MultiObjectiveProblem lovison4() {
  Map2 f1 = [](const VectorXd& x, VectorXd* g) {
    double e1 = std::exp(-(x[0] + 2.0) * (x[0] + 2.0) - x[1] * x[1]);
    double e2 = std::exp(-(x[0] - 2.0) * (x[0] - 2.0) - x[1] * x[1]);
    if (g) {
      g->resize(2);
      (*g)[0] = 2.0 * x[0] - 8.0 * ((x[0] + 2.0) * e1 + (x[0] - 2.0) * e2);
      (*g)[1] = 2.0 * x[1] - 8.0 * x[1] * (e1 + e2);
    }
    return x.squaredNorm() + 4.0 * (e1 + e2);
  };
  Map2 f2 = [](const VectorXd& x, VectorXd* g) {
    if (g) {
      g->resize(2);
      (*g) << 2.0 * (x[0] - 6.0), 2.0 * (x[1] + 0.5);
    }
    return (x[0] - 6.0) * (x[0] - 6.0) + (x[1] + 0.5) * (x[1] + 0.5);
  };
  return from_pair_of_maps("Lovison4", 2, VectorXd::Zero(2), f1, f2);
}

MultiObjectiveProblem mop1() {
  Map2 f1 = [](const VectorXd& x, VectorXd* g) {
    if (g) *g = 2.0 * x;
    return x.squaredNorm();
  };
  Map2 f2 = [](const VectorXd& x, VectorXd* g) {
    VectorXd d = x.array() - 2.0;
    if (g) *g = 2.0 * d;
    return d.squaredNorm();
  };
  return from_pair_of_maps("MOP1", 2, VectorXd::Zero(2), f1, f2);
}

// Two-variable Fonseca-Fleming pair.
MultiObjectiveProblem t1() {
  const double c = 1.0 / std::sqrt(2.0);
  auto bump = [](double shift) {
    return Map2([shift](const VectorXd& x, VectorXd* g) {
      VectorXd d = x.array() - shift;
      double e = std::exp(-d.squaredNorm());
      if (g) *g = 2.0 * e * d;
      return 1.0 - e;
    });
  };
  return from_pair_of_maps("T1", 2, VectorXd::Zero(2), bump(c), bump(-c));
}

// Binh-Korn objectives without the constraints.
MultiObjectiveProblem t2() {
  Map2 f1 = [](const VectorXd& x, VectorXd* g) {
    if (g) *g = 8.0 * x;
    return 4.0 * x.squaredNorm();
  };
  Map2 f2 = [](const VectorXd& x, VectorXd* g) {
    VectorXd d = x.array() - 5.0;
    if (g) *g = 2.0 * d;
    return d.squaredNorm();
  };
  return from_pair_of_maps("T2", 2, VectorXd::Zero(2), f1, f2);
}

Box square_box(double lo, double hi) {
  return {VectorXd::Constant(2, lo), VectorXd::Constant(2, hi)};
}

Box box2(double x_lo, double x_hi, double y_lo, double y_hi) {
  Box b{VectorXd(2), VectorXd(2)};
  b.lower << x_lo, y_lo;
  b.upper << x_hi, y_hi;
  return b;
}

Box around(const VectorXd& center, double radius) {
  return {center.array() - radius, center.array() + radius};
}

const std::vector<std::pair<std::string, std::string>>& pair_list() {
  static const std::vector<std::pair<std::string, std::string>> pairs = {
      {"BROWNAL", "ARWHEAD"},  {"BROWNAL", "VARDIM"}, {"ARWHEAD", "VARDIM"},
      {"ZANGWIL2", "ROSENBR"}, {"ZANGWIL2", "CUBE"},  {"ZANGWIL2", "WAYSEA1"},
      {"ROSENBR", "WAYSEA1"},  {"ROSENBR", "CUBE"},   {"WAYSEA1", "CUBE"}};
  return pairs;
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> entries;

  const std::map<std::string, Box> benchmark_boxes = {
      {"Lovison3", box2(0.0, 6.0, -4.0, 4.0)},
      {"Lovison4", box2(0.0, 6.0, -1.0, 1.0)},
      {"MOP1", square_box(-2.0, 2.0)},
      {"T1", square_box(-2.0, 2.0)},
      {"T2", box2(0.0, 5.0, 0.0, 3.0)}};
  for (const auto& [name, box] : benchmark_boxes) {
    entries.push_back({name, 2, 2, ProblemOrigin::Benchmark, box, true,
                       [name = name] { return get_benchmark(name); }});
  }

  for (const auto& name : scalar_problem_names()) {
    ScalarProblem p = scalar_problem(name);
    entries.push_back({name + "+L2", p.n, 2, ProblemOrigin::Regularized,
                       around(p.standard_start, 1.0), false,
                       [name] { return make_regularized(scalar_problem(name)); }});
  }

  for (const auto& [a, b] : pair_list()) {
    ScalarProblem pa = scalar_problem(a), pb = scalar_problem(b);
    VectorXd mid = 0.5 * (pa.standard_start + pb.standard_start);
    entries.push_back({a + "-" + b, pa.n, 2, ProblemOrigin::Paired, around(mid, 1.0), false,
                       [a = a, b = b] { return make_pair(scalar_problem(a), scalar_problem(b)); }});
  }

  {
    Eigen::MatrixXd anchors(2, 2);
    anchors << 1.0, 0.0, -1.0, 0.0;
    VectorXd start(2);
    start << 0.0, 1.0;
    entries.push_back({"QUADPAIR", 2, 2, ProblemOrigin::Analytic, square_box(-2.0, 2.0), false,
                       [anchors, start] { return make_quadratic_family("QUADPAIR", anchors, start); }});
  }
  {
    Eigen::MatrixXd anchors(3, 2);
    anchors << 1.0, 0.0, -0.5, std::sqrt(3.0) / 2.0, -0.5, -std::sqrt(3.0) / 2.0;
    VectorXd start(2);
    start << 2.0, 2.0;
    entries.push_back({"QUAD3", 2, 3, ProblemOrigin::Analytic, square_box(-2.0, 2.0), false,
                       [anchors, start] { return make_quadratic_family("QUAD3", anchors, start); }});
  }

  std::sort(entries.begin(), entries.end(),
            [](const CatalogEntry& x, const CatalogEntry& y) { return x.name < y.name; });
  return entries;
}

}  // namespace

std::vector<std::string> scalar_problem_names() {
  return {"ARWHEAD", "BROWNAL", "CUBE", "ROSENBR", "VARDIM", "WAYSEA1", "ZANGWIL2"};
}

ScalarProblem scalar_problem(const std::string& name) {
  if (name == "ROSENBR") return rosenbr();
  if (name == "CUBE") return cube();
  if (name == "WAYSEA1") return waysea1();
  if (name == "ZANGWIL2") return zangwil2();
  if (name == "ARWHEAD") return arwhead(10);
  if (name == "VARDIM") return vardim(10);
  if (name == "BROWNAL") return brownal(10);
  std::string valid;
  for (const auto& s : scalar_problem_names()) valid += (valid.empty() ? "" : ", ") + s;
  throw LookupError("unknown scalar problem '" + name + "' (valid: " + valid + ")");
}

MultiObjectiveProblem make_regularized(const ScalarProblem& p) {
  Map2 reg = [](const VectorXd& x, VectorXd* g) {
    if (g) *g = 2.0 * x;
    return x.squaredNorm();
  };
  return from_pair_of_maps(p.name + "+L2", p.n, p.standard_start, p.value_grad, reg);
}

MultiObjectiveProblem make_pair(const ScalarProblem& p1, const ScalarProblem& p2) {
  if (p1.n != p2.n) {
    throw InputError("make_pair: dimensions differ (" + p1.name + " has n=" +
                     std::to_string(p1.n) + ", " + p2.name + " has n=" + std::to_string(p2.n) + ")");
  }
  return from_pair_of_maps(p1.name + "-" + p2.name, p1.n,
                           0.5 * (p1.standard_start + p2.standard_start), p1.value_grad,
                           p2.value_grad);
}

MultiObjectiveProblem make_quadratic_family(std::string name, const Eigen::MatrixXd& anchors,
                                            VectorXd start) {
  const int m = static_cast<int>(anchors.rows());
  const int n = static_cast<int>(anchors.cols());
  ObjectiveFunctions fns;
  fns.values = [anchors, m](const VectorXd& x) {
    VectorXd v(m);
    for (int j = 0; j < m; ++j) v[j] = 0.5 * (x - anchors.row(j).transpose()).squaredNorm();
    return v;
  };
  fns.jacobian = [anchors](const VectorXd& x) {
    Eigen::MatrixXd G = (-anchors).rowwise() + x.transpose();
    return G;
  };
  return MultiObjectiveProblem(std::move(name), n, m, std::move(start), std::move(fns));
}

std::vector<std::string> benchmark_names() { return {"Lovison3", "Lovison4", "MOP1", "T1", "T2"}; }

MultiObjectiveProblem get_benchmark(const std::string& name) {
  if (name == "Lovison3") return lovison3();
  if (name == "Lovison4") return lovison4();
  if (name == "MOP1") return mop1();
  if (name == "T1") return t1();
  if (name == "T2") return t2();
  throw LookupError("unknown benchmark '" + name + "' (valid: Lovison3, Lovison4, MOP1, T1, T2)");
}

std::string to_string(ProblemOrigin origin) {
  switch (origin) {
    case ProblemOrigin::Benchmark:
      return "benchmark";
    case ProblemOrigin::Regularized:
      return "regularized";
    case ProblemOrigin::Paired:
      return "paired";
    case ProblemOrigin::Analytic:
      return "analytic";
  }
  return "analytic";
}

const std::vector<CatalogEntry>& list_problems() {
  static const std::vector<CatalogEntry> catalog = build_catalog();
  return catalog;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : list_problems()) {
    if (e.name == name) return e;
  }
  std::string valid;
  for (const auto& e : list_problems()) valid += (valid.empty() ? "" : ", ") + e.name;
  throw LookupError("unknown problem '" + name + "' (valid: " + valid + ")");
}

MultiObjectiveProblem make_problem(const std::string& name) { return catalog_entry(name).make(); }

VectorXd random_point(const CatalogEntry& entry, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  VectorXd x(entry.n);
  for (int i = 0; i < entry.n; ++i) {
    x[i] = entry.box.lower[i] + unit(engine) * (entry.box.upper[i] - entry.box.lower[i]);
  }
  return x;
}

VectorXd experiment_start(const CatalogEntry& entry, std::uint64_t seed) {
  if (entry.random_starts) return random_point(entry, seed);
  return entry.make().standard_start();
}

std::vector<std::string> paired_instance_names() {
  std::vector<std::string> out;
  for (const auto& [a, b] : pair_list()) out.push_back(a + "-" + b);
  return out;
}

std::vector<std::string> noise_table_rows() {
  return {"BROWNAL-ARWHEAD", "BROWNAL-VARDIM", "ROSENBR-CUBE", "Lovison3",
          "Lovison4",        "MOP1",           "T1",           "T2"};
}

std::vector<std::string> regularized_instance_names() {
  std::vector<std::string> out;
  for (const auto& s : scalar_problem_names()) out.push_back(s + "+L2");
  return out;
}

}  // namespace moadagrad

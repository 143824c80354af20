#include <cmath>

#include <gtest/gtest.h>

#include "moadagrad/adagrad.hpp"
#include "moadagrad/suite.hpp"

using namespace moadagrad;

namespace {

MultiObjectiveProblem quad_pair() {
  Eigen::MatrixXd anchors(2, 2);
  anchors << 1, 0, -1, 0;
  return make_quadratic_family("QUADPAIR", anchors, Eigen::Vector2d(0, 1));
}

}  // namespace

TEST(AdagradStep, WeightRecurrence) {
  IterateState s = initial_state(Eigen::Vector2d(1, 1), 0.01);
  EXPECT_DOUBLE_EQ(s.w, 0.1);
  IterateState t = adagrad_step(s, Eigen::Vector2d(3, 4));
  EXPECT_DOUBLE_EQ(t.w, std::sqrt(0.01 + 25));
  EXPECT_DOUBLE_EQ(t.x[0], 1 - 3 / t.w);
  EXPECT_EQ(t.k, 1u);
  IterateState u = adagrad_step(t, Eigen::Vector2d(0, 0));
  EXPECT_EQ(u.x, t.x);
  EXPECT_DOUBLE_EQ(u.w, t.w);
}

TEST(AdagradStep, ValidatesVarsigma) {
  EXPECT_THROW(initial_state(Eigen::Vector2d(0, 0), 0.0), InputError);
  EXPECT_THROW(initial_state(Eigen::Vector2d(0, 0), 1.0), InputError);
}

TEST(Adagrad, WeightsMatchAccumulatedNorms) {
  auto p = quad_pair();
  AdagradConfig cfg;
  auto r = run_adagrad(p, Eigen::Vector2d(3, 2), cfg);
  double sum = cfg.varsigma;
  for (const auto& pt : r.trajectory) {
    sum += pt.omega;
    EXPECT_NEAR(pt.step_param, std::sqrt(sum), 1e-12 * std::sqrt(sum));
  }
}

TEST(Adagrad, NeverEvaluatesObjectives) {
  for (const auto& entry : list_problems()) {
    auto p = entry.make();
    AdagradConfig cfg;
    cfg.gradient_budget = 2000;
    auto r = run_adagrad(p, p.standard_start(), cfg);
    EXPECT_EQ(r.counters.objective_evals, 0u) << entry.name;
    EXPECT_EQ(p.counters().objective_evals, 0u) << entry.name;
  }
}

TEST(Adagrad, ConvergesOnQuadraticPair) {
  auto p = quad_pair();
  auto r = run_adagrad(p, Eigen::Vector2d(0, 1));
  ASSERT_EQ(r.status, RunStatus::Critical);
  EXPECT_LE(std::sqrt(r.final_omega), 1e-6);
  EXPECT_LE(std::abs(r.final_x[1]), 1e-3);
  EXPECT_LE(std::abs(r.final_x[0]), 1.0 + 1e-3);
}

TEST(Adagrad, StopsImmediatelyAtCriticalPoint) {
  auto p = quad_pair();
  auto r = run_adagrad(p, Eigen::Vector2d(0.3, 0));
  EXPECT_EQ(r.status, RunStatus::Critical);
  EXPECT_TRUE(r.trajectory.empty());
  EXPECT_EQ(r.counters.gradient_evals, 1u);
}

TEST(Adagrad, BudgetIsRespected) {
  auto p = make_problem("ROSENBR-CUBE");
  AdagradConfig cfg;
  cfg.gradient_budget = 37;
  auto r = run_adagrad(p, p.standard_start(), cfg);
  EXPECT_EQ(r.status, RunStatus::BudgetExhausted);
  EXPECT_EQ(r.counters.gradient_evals, 37u);
  EXPECT_EQ(r.trajectory.size(), 37u);
}

TEST(Adagrad, RecordsTrajectoryAndCounters) {
  auto p = quad_pair();
  auto r = run_adagrad(p, Eigen::Vector2d(0, 1));
  ASSERT_FALSE(r.trajectory.empty());
  for (std::size_t k = 0; k < r.trajectory.size(); ++k) {
    EXPECT_EQ(r.trajectory[k].k, k);
    EXPECT_EQ(r.trajectory[k].gradient_evals, k + 1);
    EXPECT_EQ(r.trajectory[k].x.size(), 2);
  }
  EXPECT_EQ(r.counters.gradient_evals, r.trajectory.size() + 1);
  EXPECT_EQ(r.x0, Eigen::Vector2d(0, 1));
  EXPECT_DOUBLE_EQ(r.config_value("varsigma"), 0.01);
}

TEST(Adagrad, ThinnedIterates) {
  AdagradConfig cfg;
  cfg.gradient_budget = 50;
  cfg.thin = 7;
  auto p = make_problem("ROSENBR-CUBE");
  auto r = run_adagrad(p, p.standard_start(), cfg);
  ASSERT_EQ(r.trajectory.size(), 50u);
  for (const auto& pt : r.trajectory) {
    EXPECT_EQ(pt.x.size(), pt.k % 7 == 0 ? 2 : 0) << pt.k;
    EXPECT_GT(pt.step_param, 0.0);
  }
  EXPECT_EQ(r.final_x.size(), 2);
  cfg.thin = 0;
  EXPECT_THROW(run_adagrad(p, p.standard_start(), cfg), InputError);
}

TEST(Adagrad, ObserverSeesEveryIterate) {
  auto p = quad_pair();
  std::size_t calls = 0;
  AdagradConfig cfg;
  cfg.observer = [&](std::size_t k, const Eigen::VectorXd&) { EXPECT_EQ(k, calls++); };
  auto r = run_adagrad(p, Eigen::Vector2d(0, 1), cfg);
  EXPECT_EQ(calls, r.trajectory.size() + 1);
}

TEST(Adagrad, NumericFailureIsRecorded) {
  ObjectiveFunctions fns;
  fns.values = [](const Eigen::VectorXd& x) { return x; };
  fns.jacobian = [](const Eigen::VectorXd& x) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Identity(1, 1);
    if (x[0] < 0.5) J(0, 0) = NAN;
    return J;
  };
  MultiObjectiveProblem p("cliff", 1, 1, Eigen::VectorXd::Ones(1), fns);
  auto r = run_adagrad(p, Eigen::VectorXd::Ones(1));
  EXPECT_EQ(r.status, RunStatus::Failed);
  EXPECT_FALSE(r.message.empty());
}

TEST(Adagrad, DeterministicWithoutNoise) {
  auto p1 = make_problem("ZANGWIL2-CUBE");
  auto p2 = make_problem("ZANGWIL2-CUBE");
  auto a = run_adagrad(p1, p1.standard_start());
  auto b = run_adagrad(p2, p2.standard_start());
  EXPECT_EQ(a.final_x, b.final_x);
  EXPECT_EQ(a.counters.gradient_evals, b.counters.gradient_evals);
}

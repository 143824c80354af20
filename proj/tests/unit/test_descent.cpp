#include <cmath>

#include <gtest/gtest.h>

#include "moadagrad/descent.hpp"
#include "moadagrad/min_norm.hpp"
#include "moadagrad/suite.hpp"

using namespace moadagrad;

namespace {

MultiObjectiveProblem quad_pair() {
  Eigen::MatrixXd anchors(2, 2);
  anchors << 1, 0, -1, 0;
  return make_quadratic_family("QUADPAIR", anchors, Eigen::Vector2d(0, 1));
}

}  // namespace

TEST(Armijo, FullStepOnQuadratic) {
  auto p = quad_pair();
  Eigen::Vector2d x(0, 1);
  Eigen::MatrixXd G = p.jacobian(x);
  auto s = min_norm_element(G);
  auto r = armijo_backtrack(p, x, s.g_s, G, 0.1);
  EXPECT_EQ(r.step, 1.0);
  EXPECT_EQ(r.objective_evals_used, 2u);
  EXPECT_EQ(p.counters().objective_evals, 2u);
}

TEST(Armijo, HalvesUntilAccepted) {
  // f = x^2 at x = 1 (gradient 2) along g_s = 20: the test reads
  // (1 - 20 t)^2 <= 1 - 4 t, i.e. t <= 0.09, so t = 1/16 after five trials.
  ObjectiveFunctions fns;
  fns.values = [](const Eigen::VectorXd& x) { return Eigen::VectorXd::Constant(1, x[0] * x[0]); };
  fns.jacobian = [](const Eigen::VectorXd& x) { return Eigen::MatrixXd::Constant(1, 1, 2 * x[0]); };
  MultiObjectiveProblem p("sq", 1, 1, Eigen::VectorXd::Ones(1), fns);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(1), g = Eigen::VectorXd::Constant(1, 20.0);
  Eigen::MatrixXd G = p.jacobian(x);
  auto r = armijo_backtrack(p, x, p.evaluate(x), g, G, 0.1);
  EXPECT_EQ(r.step, 1.0 / 16);
  EXPECT_EQ(r.objective_evals_used, 5u);
  EXPECT_DOUBLE_EQ(r.f_trial[0], 0.0625);
}

TEST(Armijo, StallsBelowMinStep) {
  // An ascent direction never satisfies the test.
  auto p = quad_pair();
  Eigen::Vector2d x(0, 1);
  Eigen::MatrixXd G = p.jacobian(x);
  Eigen::Vector2d up(0, -1);
  EXPECT_THROW(armijo_backtrack(p, x, up, G, 0.1, 1.0 / 1024), StallError);
  EXPECT_EQ(p.counters().objective_evals, 1u + 11u);
}

TEST(Descent, ConvergesOnQuadraticPair) {
  auto p = quad_pair();
  auto r = run_descent(p, Eigen::Vector2d(0, 1));
  ASSERT_EQ(r.status, RunStatus::Critical);
  EXPECT_LE(std::abs(r.final_x[1]), 1e-3);
}

TEST(Descent, AcceptedStepsSatisfyArmijo) {
  auto p = make_problem("ZANGWIL2-ROSENBR");
  DescentConfig cfg;
  auto r = run_descent(p, p.standard_start(), cfg);
  ASSERT_FALSE(r.trajectory.empty());
  for (const auto& pt : r.trajectory) {
    for (Eigen::Index j = 0; j < pt.f_before.size(); ++j) {
      EXPECT_LE(pt.f_after[j], pt.f_before[j] - cfg.beta * pt.step_param * pt.directional[j]);
    }
  }
}

TEST(Descent, ObjectivesMonotoneWhenNoiseless) {
  auto p = make_problem("Lovison3");
  auto r = run_descent(p, Eigen::Vector2d(3, 2));
  for (std::size_t k = 1; k < r.trajectory.size(); ++k) {
    EXPECT_EQ(r.trajectory[k].f_before, r.trajectory[k - 1].f_after);
    EXPECT_LE(r.trajectory[k].f_after.maxCoeff(), r.trajectory[k].f_before.maxCoeff());
  }
}

TEST(Descent, BudgetCountsGradientsOnly) {
  auto p = make_problem("ROSENBR-CUBE");
  DescentConfig cfg;
  cfg.gradient_budget = 20;
  auto r = run_descent(p, p.standard_start(), cfg);
  EXPECT_EQ(r.status, RunStatus::BudgetExhausted);
  EXPECT_EQ(r.counters.gradient_evals, 20u);
  EXPECT_GT(r.counters.objective_evals, 20u);
  // f(x^0) plus at least one trial before the first step.
  EXPECT_GE(r.trajectory.front().objective_evals, 2u);
}

TEST(Descent, ValidatesConfig) {
  auto p = quad_pair();
  DescentConfig cfg;
  cfg.beta = 1.5;
  EXPECT_THROW(run_descent(p, Eigen::Vector2d(0, 1), cfg), InputError);
}

TEST(Descent, ThinnedIterates) {
  DescentConfig cfg;
  cfg.gradient_budget = 30;
  cfg.thin = 4;
  auto p = make_problem("ROSENBR-CUBE");
  auto r = run_descent(p, p.standard_start(), cfg);
  ASSERT_FALSE(r.trajectory.empty());
  for (const auto& pt : r.trajectory) {
    EXPECT_EQ(pt.x.size(), pt.k % 4 == 0 ? 2 : 0) << pt.k;
    EXPECT_EQ(pt.f_before.size(), pt.k % 4 == 0 ? 2 : 0) << pt.k;
  }
  cfg.thin = 0;
  EXPECT_THROW(run_descent(p, p.standard_start(), cfg), InputError);
}

TEST(Descent, StallIsRecordedAsFailure) {
  auto p = make_problem("WAYSEA1+L2");
  auto r = run_descent(p, p.standard_start());
  if (r.status == RunStatus::Failed) {
    EXPECT_NE(r.message.find("Armijo"), std::string::npos);
  } else {
    EXPECT_EQ(r.status, RunStatus::Critical);
  }
}

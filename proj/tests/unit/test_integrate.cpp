#include "oracles.hpp"

#include <grudyn/catalog.hpp>
#include <grudyn/integrate.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace grudyn;

namespace {

IntegratorConfig fixed_time(Method m, double dt, double t_end) {
  IntegratorConfig c;
  c.method = m;
  c.dt = dt;
  c.max_steps = std::lround(t_end / dt);
  c.stop_on_convergence = false;
  return c;
}

Vec endpoint(const GruParams& p, const Vec& h0, Method m, double dt, double t_end) {
  return integrate(p, h0, fixed_time(m, dt, t_end)).final_state();
}

}  // namespace

TEST(Integrate, UnitEulerStepIsTheDiscreteGru) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const GruParams p = oracle::random_params(rng, 2);
    const Vec h = oracle::random_state(rng, 2);
    EXPECT_EQ(step(p, h, 1.0, Method::euler, Direction::forward), discrete_step(p, h));
  }
}

TEST(Integrate, Rk4IsFourthOrder) {
  std::mt19937_64 rng(22);
  const GruParams p = oracle::random_params(rng, 2, 2.0);
  const Vec h0 = oracle::random_state(rng, 2, -1, 1);
  const Vec ref = endpoint(p, h0, Method::rk4, 0.001, 2.0);
  const double e1 = (endpoint(p, h0, Method::rk4, 0.2, 2.0) - ref).norm();
  const double e2 = (endpoint(p, h0, Method::rk4, 0.1, 2.0) - ref).norm();
  EXPECT_GT(e1 / e2, 12.0);
  EXPECT_LT(e1 / e2, 20.0);
}

TEST(Integrate, EulerIsFirstOrder) {
  std::mt19937_64 rng(23);
  const GruParams p = oracle::random_params(rng, 2, 2.0);
  const Vec h0 = oracle::random_state(rng, 2, -1, 1);
  const Vec ref = endpoint(p, h0, Method::rk4, 0.001, 2.0);
  const double e1 = (endpoint(p, h0, Method::euler, 0.01, 2.0) - ref).norm();
  const double e2 = (endpoint(p, h0, Method::euler, 0.005, 2.0) - ref).norm();
  EXPECT_NEAR(e1 / e2, 2.0, 0.1);
}

TEST(Integrate, BackwardUndoesForward) {
  std::mt19937_64 rng(24);
  const GruParams p = oracle::random_params(rng, 2, 2.0);
  const Vec h0 = oracle::random_state(rng, 2, -1, 1);
  const auto cfg = fixed_time(Method::rk4, 0.01, 1.0);
  const Vec fwd = integrate(p, h0, cfg).final_state();
  const Vec back = integrate(p, fwd, cfg, Direction::backward).final_state();
  EXPECT_LT((back - h0).norm(), 1e-9);
}

TEST(Integrate, TrajectoriesEnterAndStayInTheUnitCube) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 40; ++trial) {
    // A saturated update gate only slows entry down; keep it neutral so the
    // horizon suffices.
    GruParams p = oracle::random_params(rng, 2, 1.5);
    p.Uz.setZero();
    p.bz.setZero();
    const Vec h0 = oracle::random_state(rng, 2, -4, 4);
    const Trajectory tr = integrate(p, h0, fixed_time(Method::rk4, 0.05, 60.0));
    bool inside = false;
    for (const Vec& h : tr.states) {
      const bool now = h.cwiseAbs().maxCoeff() <= 1.0 + 1e-12;
      if (inside) EXPECT_TRUE(now);
      inside = inside || now;
    }
    EXPECT_TRUE(inside);
  }
}

TEST(Integrate, StatusReporting) {
  const GruParams zero = GruParams::zeros(2);
  IntegratorConfig cfg;
  const Trajectory conv = integrate(zero, Vec::Constant(2, 1.0), cfg);
  EXPECT_EQ(conv.status, Status::converged);
  EXPECT_LT(conv.final_state().norm(), 1e-7);
  EXPECT_EQ(conv.times.size(), conv.states.size());

  const Trajectory esc = integrate(zero, Vec::Constant(2, 1.0), cfg, Direction::backward);
  EXPECT_EQ(esc.status, Status::escaped);

  cfg.max_steps = 3;
  EXPECT_EQ(integrate(zero, Vec::Constant(2, 1.0), cfg).status, Status::timeout);
}

TEST(Integrate, ConvergenceRunRecognizesCyclesAndEquilibria) {
  const ConvergenceResult eq =
      integrate_until_convergence(GruParams::zeros(2), Vec::Constant(2, 0.5), IntegratorConfig{});
  EXPECT_EQ(eq.status, Status::converged);
  EXPECT_FALSE(eq.period);

  const ConvergenceResult cyc = integrate_until_convergence(
      find_case("5b").params, Vec::Constant(2, 0.3), IntegratorConfig{});
  ASSERT_EQ(cyc.status, Status::periodic);
  ASSERT_TRUE(cyc.period);
  EXPECT_GT(*cyc.period, 1.0);
}

TEST(Integrate, ConfigValidation) {
  IntegratorConfig c;
  c.dt = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.max_steps = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.region = {1.0, -1.0};
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_THROW(integrate(GruParams::zeros(2), Vec::Zero(3), IntegratorConfig{}), ShapeError);
}

TEST(Integrate, CsvHasHeaderAndOneRowPerState) {
  const Trajectory tr =
      integrate(GruParams::zeros(2), Vec::Constant(2, 0.5), fixed_time(Method::euler, 0.1, 0.5));
  std::ostringstream os;
  write_csv(tr, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "t,h1,h2");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, static_cast<int>(tr.size()));
}

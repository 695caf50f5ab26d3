#include "oracles.hpp"

#include <grudyn/catalog.hpp>
#include <grudyn/fixed_points.hpp>
#include <grudyn/integrate.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace grudyn;

TEST(FixedPoints, ZeroParamsHaveOneSinkNode) {
  const auto fps = find_fixed_points(GruParams::zeros(2));
  ASSERT_EQ(fps.size(), 1u);
  EXPECT_LT(fps[0].location.norm(), 1e-12);
  EXPECT_EQ(fps[0].cls.kind, FixedPointClass::sink_node);
  for (const auto& ev : fps[0].eigenvalues()) EXPECT_NEAR(std::abs(ev - (-0.5)), 0.0, 1e-14);
  EXPECT_EQ(topology_signature(fps), (TopologySignature{1, 1, 0, 0, 0, 0, 0, 0}));
}

TEST(FixedPoints, NineFixedPointsForDiagonalGainThree) {
  const double xs = oracle::tanh_fixed_point(1.5);
  EXPECT_NEAR(xs, 0.8586, 5e-5);
  const auto fps = find_fixed_points(oracle::params2({3, 0, 0, 3}));
  ASSERT_EQ(fps.size(), 9u);
  for (const auto& fp : fps) {
    for (int i = 0; i < 2; ++i) {
      const double a = std::abs(fp.location[i]);
      EXPECT_TRUE(a < 1e-12 || std::abs(a - xs) < 1e-9) << fp.location.transpose();
    }
    const int nonzero = (std::abs(fp.location[0]) > 0.5) + (std::abs(fp.location[1]) > 0.5);
    const FixedPointClass want = nonzero == 2   ? FixedPointClass::sink_node
                                 : nonzero == 1 ? FixedPointClass::saddle
                                                : FixedPointClass::source_node;
    EXPECT_EQ(fp.cls.kind, want) << fp.location.transpose();
  }
  EXPECT_EQ(topology_signature(fps), (TopologySignature{9, 4, 1, 4, 0, 0, 0, 0}));
}

TEST(FixedPoints, DoubleZeroJacobianIsCodimTwo) {
  const GruParams p = oracle::params2({2, 0, 0, 2}, {-1, 0, 0, -1});
  const Classification c = classify_fixed_point(p, Vec::Zero(2));
  EXPECT_EQ(c.kind, FixedPointClass::codim2);
  EXPECT_FALSE(c.probe_signs.empty());
}

TEST(FixedPoints, RotatedGainGivesStableSpiral) {
  const Classification c = classify_fixed_point(find_case("5a").params, Vec::Zero(2));
  EXPECT_EQ(c.kind, FixedPointClass::sink_spiral);
  ASSERT_EQ(c.eigenvalues.size(), 2u);
  EXPECT_GT(std::abs(c.eigenvalues[0].imag()), 0.1);
}

TEST(FixedPoints, ElevenPointMaximumCase) {
  EXPECT_EQ(find_fixed_points(find_case("xxxvi").params).size(), 11u);
}

TEST(FixedPoints, ClosedFormEigenvaluesAgreeWithEigenSolver) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const GruParams p = oracle::random_params(rng, 2);
    for (const auto& fp : find_fixed_points(p)) {
      Eigen::EigenSolver<Mat> es(fp.jacobian);
      const auto ev = es.eigenvalues();
      for (const auto& lam : fp.eigenvalues()) {
        const double best = std::min(std::abs(lam - ev[0]), std::abs(lam - ev[1]));
        EXPECT_LT(best, 1e-9 * (1 + std::abs(lam)));
      }
    }
  }
}

TEST(FixedPoints, ResidualAndReconvergence) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const GruParams p = oracle::random_params(rng, 2);
    for (const auto& fp : find_fixed_points(p)) {
      EXPECT_LT(vector_field(p, fp.location).norm(), 1e-10);
      EXPECT_TRUE(FixedPointOptions{}.region.contains(fp.location));
      for (int k = 0; k < 4; ++k) {
        const double ang = k * std::numbers::pi / 2 + 0.3;
        const Vec start = fp.location + 1e-3 * Vec(Eigen::Vector2d(std::cos(ang), std::sin(ang)));
        const auto back = newton_solve(p, start);
        ASSERT_TRUE(back);
        EXPECT_LT((*back - fp.location).norm(), 1e-6);
      }
    }
  }
}

TEST(FixedPoints, ClassificationAgreesWithTheFlow) {
  IntegratorConfig cfg;
  cfg.max_steps = 200000;
  cfg.convergence_tol = 1e-11;
  for (const char* id : {"2", "ii", "xxxvi"}) {
    const GruParams p = find_case(id).params;
    for (const auto& fp : find_fixed_points(p)) {
      const FixedPointClass k = fp.cls.kind;
      if (is_sink(k) || is_source(k)) {
        const Direction dir = is_sink(k) ? Direction::forward : Direction::backward;
        for (int s = 0; s < 20; ++s) {
          const double ang = 2 * std::numbers::pi * s / 20;
          const Vec h0 = fp.location + 1e-2 * Vec(Eigen::Vector2d(std::cos(ang), std::sin(ang)));
          const Trajectory tr = integrate(p, h0, cfg, dir);
          EXPECT_EQ(tr.status, Status::converged) << id;
          EXPECT_LT((tr.final_state() - fp.location).norm(), 1e-6) << id;
        }
      } else if (k == FixedPointClass::saddle) {
        // Along each real eigenvector, F points out for the positive
        // eigenvalue and in for the negative one.
        Eigen::EigenSolver<Mat> es(fp.jacobian);
        for (int e = 0; e < 2; ++e) {
          const double lam = es.eigenvalues()[e].real();
          const Vec v = es.eigenvectors().col(e).real().normalized();
          for (double sgn : {-1.0, 1.0}) {
            const Vec f = vector_field(p, fp.location + sgn * 1e-3 * v);
            EXPECT_GT(sgn * v.dot(f) * lam, 0.0) << id;
          }
        }
      }
    }
  }
}

TEST(FixedPoints, OddSymmetryWithoutBiasesOrResetGate) {
  // h -> -h maps the field to its negative when biases and Ur vanish; the
  // update gate only rescales each component by a positive factor, which can
  // move a point across the node/spiral boundary but not change its stability.
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    GruParams p = oracle::random_params(rng, 2, 2.5, false);
    p.Ur.setZero();
    const auto fps = find_fixed_points(p);
    for (const auto& fp : fps) {
      bool mirrored = false;
      for (const auto& other : fps)
        if ((other.location + fp.location).norm() < 1e-7) {
          mirrored = true;
          EXPECT_EQ(is_sink(other.cls.kind), is_sink(fp.cls.kind));
          EXPECT_EQ(is_source(other.cls.kind), is_source(fp.cls.kind));
        }
      EXPECT_TRUE(mirrored) << fp.location.transpose();
    }
  }
}

TEST(FixedPoints, DeterministicAcrossRuns) {
  const GruParams p = find_case("xxxvi").params;
  const auto a = find_fixed_points(p);
  const auto b = find_fixed_points(p);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].location, b[k].location);
}

TEST(FixedPoints, NotAFixedPointIsRejected) {
  EXPECT_THROW(classify_fixed_point(GruParams::zeros(2), Vec::Constant(2, 0.3)), NotAFixedPoint);
}

TEST(FixedPoints, HigherDimensionsUseTheCoarseTaxonomy) {
  GruParams p = GruParams::zeros(3);
  p.Uh = 3.0 * Mat::Identity(3, 3);
  const auto fps = find_fixed_points(p);
  EXPECT_EQ(fps.size(), 27u);
  const auto sig = topology_signature(fps);
  EXPECT_EQ(sig.sinks, 8);
  EXPECT_EQ(sig.sources, 1);
  EXPECT_EQ(sig.saddles, 18);
}

TEST(FixedPoints, OptionsValidation) {
  FixedPointOptions o;
  o.grid_n = 0;
  EXPECT_THROW(o.validate(), ConfigError);
  o = {};
  o.zero_tol = -1;
  EXPECT_THROW(o.validate(), ConfigError);
}

TEST(FixedPoints, SeedLatticeIncludesTheCorners) {
  const auto seeds = seed_lattice(2, Box{-1, 1}, 3);
  ASSERT_EQ(seeds.size(), 9u);
  EXPECT_EQ(seeds.front(), Vec::Constant(2, -1.0));
  EXPECT_EQ(seeds.back(), Vec::Constant(2, 1.0));
}

#pragma once

#include "grudyn/gru.hpp"

#include <vector>

namespace grudyn {

struct SlowPoint {
  Vec location;
  double speed = 0.0;     // |F| at the local minimum
  double gradient = 0.0;  // |J^T F|, the half-gradient of |F|^2
};

struct SlowPointOptions {
  Box region{};
  int grid_n = 21;
  double slow_threshold = 1e-3;
  double floor = 1e-10;  // minima below this are fixed points, not slow points
  double dedup_tol = 1e-3;
  double gradient_tol = 1e-9;
  int max_iter = 500;
};

/// Local minima of |F| with floor < |F| <= slow_threshold, found by
/// Levenberg-Marquardt descent on |F|^2 from a seed lattice. d <= 2.
std::vector<SlowPoint> find_slow_points(const GruParams& params, const SlowPointOptions& opts = {});

}  // namespace grudyn

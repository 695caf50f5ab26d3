#pragma once

#include "grudyn/fixed_points.hpp"
#include "grudyn/integrate.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace grudyn {

struct HomoclinicOptions {
  Box region{};
  int grid_n = 41;
  double capture_tol = 1e-3;  // both ends must come this close to the fixed point
  double leave_radius = 0.05;  // orbit must get at least this far from it
  // Convergence into non-hyperbolic points is algebraic, so the horizon is long.
  double dt = 0.1;
  double horizon = 6000.0;
  FixedPointOptions fixed_points{};
};

struct HomoclinicScan {
  int grid_n = 0;
  Box region{};
  std::vector<std::uint8_t> mask;  // row-major, mask[j * grid_n + i] for (x_i, y_j)
  std::vector<int> labels;         // 0 outside, 1..regions inside (4-adjacency)
  int regions = 0;
  std::vector<int> region_sizes;
  std::vector<int> target;         // index into fixed_points, -1 if not homoclinic
  std::vector<FixedPoint> fixed_points;

  double x(int i) const { return region.lo + region.width() * i / (grid_n - 1); }
  double y(int j) const { return x(j); }
};

HomoclinicScan homoclinic_scan(const GruParams& params, const HomoclinicOptions& opts = {});

/// Connected components of a row-major mask under 4-adjacency, labelled in
/// scan order. Returns (labels, component count).
std::pair<std::vector<int>, int> label_components(const std::vector<std::uint8_t>& mask, int nx,
                                                  int ny);

/// Run-length encoding as alternating run lengths starting with a run of zeros.
std::vector<int> run_length_encode(const std::vector<std::uint8_t>& mask);
std::vector<std::uint8_t> run_length_decode(const std::vector<int>& runs);

}  // namespace grudyn

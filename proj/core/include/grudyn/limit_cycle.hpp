#pragma once

#include "grudyn/fixed_points.hpp"
#include "grudyn/integrate.hpp"
#include "grudyn/nullclines.hpp"

#include <optional>
#include <vector>

namespace grudyn {

struct LimitCycle {
  Vec sample_point;
  double period = 0.0;
  Polyline points;         // one orbit, closed (last point == first point)
  int winding_number = 0;  // of F along the orbit
  std::optional<Vec> enclosed_fixed_point;
  double min_speed = 0.0;
};

/// Default cycle-search configuration: RK4, dt 0.05, 40000 steps.
IntegratorConfig limit_cycle_config();

/// Integrates from each seed until one reaches periodic status and returns
/// that orbit. Returns nullopt if every seed converges, escapes or times out.
std::optional<LimitCycle> detect_limit_cycle(const GruParams& params, const std::vector<Vec>& seeds,
                                             const IntegratorConfig& cfg = limit_cycle_config());

/// Same, seeding from an n x n lattice over cfg.region.
std::optional<LimitCycle> detect_limit_cycle(const GruParams& params,
                                             const IntegratorConfig& cfg = limit_cycle_config(),
                                             int lattice_n = 4);

/// Winding number of F along a closed polyline, sampled at `samples` points.
int winding_number(const GruParams& params, const Polyline& loop, int samples = 256);

bool point_in_polygon(const Polyline& loop, const Point2& p);

/// Uh = gain * R(alpha), every other parameter zero.
GruParams rotation_params(double gain, double alpha);

struct HopfResult {
  double alpha_star = 0.0;
  bool unstable_below = true;  // origin unstable for alpha < alpha_star
  std::optional<LimitCycle> cycle;  // found on the unstable side, 0.05 from alpha_star
};

/// Locates the alpha where the largest real part of the origin's
/// eigenvalues crosses zero for rotation_params(gain, alpha), bisected to tol.
/// Returns nullopt when there is no crossing in [alpha_lo, alpha_hi].
std::optional<HopfResult> hopf_sweep(double gain, double alpha_lo = 0.0,
                                     double alpha_hi = 3.141592653589793, double tol = 1e-9,
                                     bool confirm_cycle = true);

/// max Re(lambda) of the Jacobian at the origin.
double origin_max_real_part(const GruParams& params);

}  // namespace grudyn

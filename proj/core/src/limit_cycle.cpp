#include "grudyn/limit_cycle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace grudyn {

IntegratorConfig limit_cycle_config() {
  IntegratorConfig cfg;
  cfg.method = Method::rk4;
  cfg.dt = 0.05;
  cfg.max_steps = 40000;
  return cfg;
}

bool point_in_polygon(const Polyline& loop, const Point2& p) {
  bool inside = false;
  const std::size_t n = loop.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& a = loop[i];
    const Point2& b = loop[j];
    if ((a[1] > p[1]) != (b[1] > p[1]) &&
        p[0] < (b[0] - a[0]) * (p[1] - a[1]) / (b[1] - a[1]) + a[0])
      inside = !inside;
  }
  return inside;
}

int winding_number(const GruParams& params, const Polyline& loop, int samples) {
  if (loop.size() < 3 || samples < 3) return 0;
  const std::size_t n = loop.size() - 1;  // last point repeats the first
  double total = 0.0;
  double prev = 0.0;
  Vec h(2);
  for (int k = 0; k <= samples; ++k) {
    const Point2& p = loop[(static_cast<std::size_t>(k) * n / samples) % n];
    h << p[0], p[1];
    const Vec f = vector_field(params, h);
    const double ang = std::atan2(f[1], f[0]);
    if (k > 0) {
      double d = ang - prev;
      while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
      while (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
      total += d;
    }
    prev = ang;
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

namespace {

// Traces one revolution starting at a point already on the cycle.
std::optional<LimitCycle> trace_orbit(const GruParams& params, const Vec& start,
                                      const IntegratorConfig& cfg) {
  const double rtol = cfg.recurrence_tol;
  LimitCycle lc;
  lc.sample_point = start;
  lc.points.push_back({start[0], start[1]});
  lc.min_speed = vector_field(params, start).norm();

  Vec h = start;
  bool left = false;
  double best = std::numeric_limits<double>::infinity();
  for (long k = 1; k <= cfg.max_steps; ++k) {
    const Vec next = step(params, h, cfg.dt, cfg.method, Direction::forward);
    const Vec ab = next - h;
    double s = ab.squaredNorm() > 0.0 ? (start - h).dot(ab) / ab.squaredNorm() : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    const double dist = (h + s * ab - start).norm();
    if (!left && dist > 10.0 * rtol) left = true;
    if (left && dist < rtol) {
      best = dist;
      lc.period = (static_cast<double>(k - 1) + s) * cfg.dt;
      lc.points.push_back({start[0], start[1]});
      break;
    }
    lc.min_speed = std::min(lc.min_speed, vector_field(params, next).norm());
    lc.points.push_back({next[0], next[1]});
    h = next;
  }
  if (!std::isfinite(best) || !(lc.min_speed > cfg.convergence_tol)) return std::nullopt;
  return lc;
}

}  // namespace

std::optional<LimitCycle> detect_limit_cycle(const GruParams& params, const std::vector<Vec>& seeds,
                                             const IntegratorConfig& cfg) {
  params.validate();
  if (params.dim() != 2) throw DimensionError("limit cycle detection requires d = 2");
  for (const Vec& seed : seeds) {
    const ConvergenceResult r = integrate_until_convergence(params, seed, cfg);
    if (r.status != Status::periodic) continue;
    auto lc = trace_orbit(params, r.endpoint, cfg);
    if (!lc) continue;
    lc->winding_number = winding_number(params, lc->points);
    if (lc->winding_number % 2 != 0) {
      FixedPointOptions fpo;
      fpo.region = cfg.region;
      for (const FixedPoint& fp : find_fixed_points(params, fpo)) {
        if (point_in_polygon(lc->points, {fp.location[0], fp.location[1]})) {
          lc->enclosed_fixed_point = fp.location;
          break;
        }
      }
    }
    return lc;
  }
  return std::nullopt;
}

std::optional<LimitCycle> detect_limit_cycle(const GruParams& params, const IntegratorConfig& cfg,
                                             int lattice_n) {
  return detect_limit_cycle(params, seed_lattice(2, cfg.region, lattice_n), cfg);
}

GruParams rotation_params(double gain, double alpha) {
  GruParams p = GruParams::zeros(2);
  p.Uh << std::cos(alpha), -std::sin(alpha), std::sin(alpha), std::cos(alpha);
  p.Uh *= gain;
  return p;
}

double origin_max_real_part(const GruParams& params) {
  const Mat J = jacobian(params, Vec::Zero(params.dim()));
  return Eigen::EigenSolver<Mat>(J, false).eigenvalues().real().maxCoeff();
}

std::optional<HopfResult> hopf_sweep(double gain, double alpha_lo, double alpha_hi, double tol,
                                     bool confirm_cycle) {
  if (!(gain > 0.0)) throw ConfigError("gain must be positive");
  if (!(alpha_hi > alpha_lo)) throw ConfigError("alpha range is empty");
  auto re = [&](double a) { return origin_max_real_part(rotation_params(gain, a)); };

  // Coarse scan for the first sign change, then bisection.
  const int n = 1024;
  double a0 = alpha_lo, r0 = re(alpha_lo);
  std::optional<std::pair<double, double>> bracket;
  for (int k = 1; k <= n && !bracket; ++k) {
    const double a1 = alpha_lo + (alpha_hi - alpha_lo) * k / n;
    const double r1 = re(a1);
    if ((r0 > 0.0) != (r1 > 0.0)) bracket = {{a0, a1}};
    a0 = a1;
    r0 = r1;
  }
  if (!bracket) return std::nullopt;

  auto [lo, hi] = *bracket;
  const bool lo_unstable = re(lo) > 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if ((re(mid) > 0.0) == lo_unstable)
      lo = mid;
    else
      hi = mid;
  }
  HopfResult out;
  out.alpha_star = 0.5 * (lo + hi);
  out.unstable_below = lo_unstable;
  if (confirm_cycle) {
    const double probe = out.alpha_star + (lo_unstable ? -0.05 : 0.05);
    out.cycle = detect_limit_cycle(rotation_params(gain, probe));
  }
  return out;
}

}  // namespace grudyn

#include "grudyn/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>

namespace grudyn {

std::string to_string(Method m) { return m == Method::euler ? "euler" : "rk4"; }

std::string to_string(Direction d) { return d == Direction::forward ? "forward" : "backward"; }

std::string to_string(Status s) {
  switch (s) {
    case Status::running: return "running";
    case Status::converged: return "converged";
    case Status::periodic: return "periodic";
    case Status::timeout: return "timeout";
    case Status::escaped: return "escaped";
  }
  return "unknown";
}

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (max_steps <= 0) throw ConfigError("max_steps must be positive");
  if (!(convergence_tol > 0.0)) throw ConfigError("convergence_tol must be positive");
  if (!(recurrence_tol > 0.0)) throw ConfigError("recurrence_tol must be positive");
  if (dt * static_cast<double>(max_steps) > 1e7) throw ConfigError("dt * max_steps too large");
  region.validate();
}

namespace {

Vec signed_field(const GruParams& p, const Vec& h, Direction dir) {
  Vec f = vector_field(p, h);
  if (dir == Direction::backward) f = -f;
  return f;
}

bool escaped(const Vec& h, const Box& region) {
  const double lo = 10.0 * region.lo;
  const double hi = 10.0 * region.hi;
  return ((h.array() < std::min(lo, hi)) || (h.array() > std::max(lo, hi))).any();
}

// Closest approach of segment [a, b] to point c: returns (distance, s in [0,1]).
std::pair<double, double> closest_on_segment(const Vec& a, const Vec& b, const Vec& c) {
  const Vec ab = b - a;
  const double len2 = ab.squaredNorm();
  double s = len2 > 0.0 ? (c - a).dot(ab) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return {(a + s * ab - c).norm(), s};
}

}  // namespace

Vec step(const GruParams& params, const Vec& h, double dt, Method method, Direction dir) {
  if (method == Method::euler) return h + dt * signed_field(params, h, dir);
  const Vec k1 = signed_field(params, h, dir);
  const Vec k2 = signed_field(params, h + 0.5 * dt * k1, dir);
  const Vec k3 = signed_field(params, h + 0.5 * dt * k2, dir);
  const Vec k4 = signed_field(params, h + dt * k3, dir);
  return h + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Trajectory integrate(const GruParams& params, const Vec& h0, const IntegratorConfig& cfg,
                     Direction dir) {
  cfg.validate();
  check_state(params, h0);
  if (!h0.allFinite()) throw NumericalBlowup(0, 0.0, h0);

  Trajectory traj;
  traj.direction = dir;
  traj.times.reserve(static_cast<std::size_t>(std::min<long>(cfg.max_steps + 1, 1 << 20)));
  traj.states.reserve(traj.times.capacity());
  traj.times.push_back(0.0);
  traj.states.push_back(h0);

  Vec h = h0;
  for (long k = 1; k <= cfg.max_steps; ++k) {
    Vec next = step(params, h, cfg.dt, cfg.method, dir);
    const double t = static_cast<double>(k) * cfg.dt;
    if (!next.allFinite()) throw NumericalBlowup(static_cast<std::size_t>(k - 1), t - cfg.dt, h);
    h = std::move(next);
    traj.times.push_back(t);
    traj.states.push_back(h);
    if (escaped(h, cfg.region)) {
      traj.status = Status::escaped;
      return traj;
    }
    if (cfg.stop_on_convergence && vector_field(params, h).norm() < cfg.convergence_tol) {
      traj.status = Status::converged;
      return traj;
    }
  }
  traj.status = Status::timeout;
  return traj;
}

ConvergenceResult integrate_until_convergence(const GruParams& params, const Vec& h0,
                                              const IntegratorConfig& cfg) {
  cfg.validate();
  check_state(params, h0);
  if (!h0.allFinite()) throw NumericalBlowup(0, 0.0, h0);

  const long transient = cfg.max_steps / 2;
  const double rtol = cfg.recurrence_tol;
  const double leave = 10.0 * rtol;

  Vec h = h0;
  Vec ref;
  bool have_ref = false;
  bool left = false;
  double loop_extent = 0.0;
  double min_speed = std::numeric_limits<double>::infinity();
  std::vector<double> return_times;
  std::vector<double> loop_extents;

  for (long k = 1; k <= cfg.max_steps; ++k) {
    Vec next = step(params, h, cfg.dt, cfg.method, Direction::forward);
    const double t = static_cast<double>(k) * cfg.dt;
    if (!next.allFinite()) throw NumericalBlowup(static_cast<std::size_t>(k - 1), t - cfg.dt, h);

    if (escaped(next, cfg.region)) return {next, Status::escaped, std::nullopt, t};
    const double speed = vector_field(params, next).norm();
    if (speed < cfg.convergence_tol) return {next, Status::converged, std::nullopt, t};

    if (k == transient) {
      ref = next;
      have_ref = true;
    } else if (have_ref) {
      min_speed = std::min(min_speed, speed);
      const auto [dist, s] = closest_on_segment(h, next, ref);
      loop_extent = std::max(loop_extent, (next - ref).norm());
      if (!left && dist > leave) left = true;
      if (left && dist < rtol && s < 1.0) {
        return_times.push_back(t - cfg.dt + s * cfg.dt);
        loop_extents.push_back(loop_extent);
        left = false;
        loop_extent = 0.0;
        if (return_times.size() == 2) {
          const bool steady = std::abs(loop_extents[0] - loop_extents[1]) < rtol;
          if (steady && min_speed > cfg.convergence_tol) {
            const double period = return_times[1] - return_times[0];
            return {ref, Status::periodic, period, t};
          }
          // Not yet settled: restart recurrence bookkeeping from here.
          ref = next;
          return_times.clear();
          loop_extents.clear();
          min_speed = std::numeric_limits<double>::infinity();
        }
      }
    }
    h = std::move(next);
  }
  return {h, Status::timeout, std::nullopt, static_cast<double>(cfg.max_steps) * cfg.dt};
}

void write_csv(const Trajectory& traj, std::ostream& out) {
  const auto d = traj.states.empty() ? 0 : traj.states.front().size();
  out << 't';
  for (Eigen::Index i = 1; i <= d; ++i) out << ",h" << i;
  out << '\n';
  out << std::setprecision(17);
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    out << traj.times[k];
    for (Eigen::Index i = 0; i < d; ++i) out << ',' << traj.states[k][i];
    out << '\n';
  }
}

void write_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_csv(traj, out);
}

}  // namespace grudyn

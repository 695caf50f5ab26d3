#pragma once

#include "grudyn/gru.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace grudyn {

enum class Method { euler, rk4 };
enum class Direction { forward, backward };
enum class Status { running, converged, periodic, timeout, escaped };

std::string to_string(Method m);
std::string to_string(Direction d);
std::string to_string(Status s);

struct IntegratorConfig {
  Method method = Method::rk4;
  double dt = 0.05;
  long max_steps = 40000;
  double convergence_tol = 1e-8;  // on |F(h)|
  double recurrence_tol = 1e-4;
  Box region{};                   // escape triggers outside 10x this window
  bool stop_on_convergence = true;

  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> states;
  Direction direction = Direction::forward;
  Status status = Status::running;

  const Vec& final_state() const { return states.back(); }
  std::size_t size() const { return states.size(); }
};

/// One step of the chosen scheme on +F (forward) or -F (backward).
Vec step(const GruParams& params, const Vec& h, double dt, Method method, Direction dir);

/// Fixed-step integration. Stops early on convergence (|F| < convergence_tol,
/// when enabled) or escape; otherwise runs max_steps and reports timeout.
/// Throws NumericalBlowup if a non-finite state appears.
Trajectory integrate(const GruParams& params, const Vec& h0, const IntegratorConfig& cfg,
                     Direction dir = Direction::forward);

struct ConvergenceResult {
  Vec endpoint;
  Status status = Status::running;
  std::optional<double> period;  // set when status == periodic
  double elapsed = 0.0;
};

/// Forward integration that also recognizes periodic orbits. The first half
/// of max_steps is discarded as transient; afterwards the state at the
/// midpoint serves as a reference and must recur (twice, within
/// recurrence_tol, closest approach interpolated along each step segment)
/// with nonvanishing speed.
ConvergenceResult integrate_until_convergence(const GruParams& params, const Vec& h0,
                                              const IntegratorConfig& cfg);

/// CSV with header t,h1,...,hd and 17 significant digits.
void write_csv(const Trajectory& traj, std::ostream& out);
void write_csv(const Trajectory& traj, const std::string& path);

}  // namespace grudyn

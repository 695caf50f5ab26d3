#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace grudyn {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Error hierarchy. Everything thrown by the library derives from Error so
// callers (and the CLI) can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class NotAFixedPoint : public Error {
 public:
  NotAFixedPoint(double residual, double tol);
  double residual() const { return residual_; }

 private:
  double residual_;
};

class NumericalBlowup : public Error {
 public:
  NumericalBlowup(std::size_t step, double time, Vec last_valid);
  std::size_t step() const { return step_; }
  double time() const { return time_; }
  const Vec& last_valid_state() const { return last_valid_; }

 private:
  std::size_t step_;
  double time_;
  Vec last_valid_;
};

class UnknownCase : public Error {
 public:
  explicit UnknownCase(const std::string& id) : Error("unknown catalog case: " + id) {}
};

/// Axis-aligned cube [lo, hi]^d used as a search/plotting window.
struct Box {
  double lo = -1.5;
  double hi = 1.5;

  double width() const { return hi - lo; }
  bool contains(const Vec& h, double slack = 0.0) const {
    return ((h.array() >= lo - slack) && (h.array() <= hi + slack)).all();
  }
  void validate() const {
    if (!(hi > lo)) throw ConfigError("region must be nonempty (hi > lo)");
  }
};

}  // namespace grudyn

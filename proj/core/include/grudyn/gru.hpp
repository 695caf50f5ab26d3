#pragma once

// Gated recurrent unit parameterizations and the continuous-time flow they
// induce. With the input removed, one GRU update is exactly a forward Euler
// step (dt = 1) of
//
//   dh/dt = F(h) = (z(h) - 1) * (h - tanh(Uh (r(h) * h) + bh)),
//   z(h)  = sigmoid(Uz h + bz),   r(h) = sigmoid(Ur h + br),
//
// with * the componentwise product. All functions here are pure.

#include "grudyn/types.hpp"

#include <cmath>

namespace grudyn {

/// Recurrent weights and biases of a d-dimensional GRU.
struct GruParams {
  Mat Uz, Ur, Uh;
  Vec bz, br, bh;

  static GruParams zeros(int d);

  int dim() const { return static_cast<int>(bh.size()); }

  /// Throws ShapeError on inconsistent shapes, ConfigError on non-finite entries.
  void validate() const;

  bool operator==(const GruParams& other) const;
};

/// Input weights. Only the training harness uses these; the autonomous
/// analysis runs with zero input.
struct InputParams {
  Mat Wz, Wr, Wh;

  static InputParams zeros(int d, int p);

  int input_dim() const { return static_cast<int>(Wz.cols()); }
  void validate(int d) const;

  bool operator==(const InputParams& other) const;
};

struct GateValues {
  Vec z;  // update gate
  Vec r;  // reset gate
};

/// Logistic sigmoid, evaluated in the branch form that never overflows exp().
inline double sigmoid(double x) {
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return 1.0 / (1.0 + e);
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Vec sigmoid(const Vec& x);

GateValues gates(const GruParams& params, const Vec& h);

/// F(h), the continuous-time hidden-state velocity.
Vec vector_field(const GruParams& params, const Vec& h);

/// Analytic dF/dh.
Mat jacobian(const GruParams& params, const Vec& h);

/// One discrete GRU update without input.
Vec discrete_step(const GruParams& params, const Vec& h);

/// One discrete GRU update driven by input x.
Vec discrete_step(const GruParams& params, const InputParams& inputs, const Vec& h, const Vec& x);

/// Throws ShapeError unless h has length params.dim().
void check_state(const GruParams& params, const Vec& h);

}  // namespace grudyn

#include "grudyn/gru.hpp"

#include <cmath>
#include <string>

namespace grudyn {

NotAFixedPoint::NotAFixedPoint(double residual, double tol)
    : Error("not a fixed point: residual " + std::to_string(residual) + " exceeds " +
            std::to_string(tol)),
      residual_(residual) {}

NumericalBlowup::NumericalBlowup(std::size_t step, double time, Vec last_valid)
    : Error("non-finite state encountered at step " + std::to_string(step)),
      step_(step),
      time_(time),
      last_valid_(std::move(last_valid)) {}

namespace {

void require_square(const Mat& m, int d, const char* name) {
  if (m.rows() != d || m.cols() != d)
    throw ShapeError(std::string(name) + " must be " + std::to_string(d) + "x" + std::to_string(d));
}

void require_len(const Vec& v, int d, const char* name) {
  if (v.size() != d) throw ShapeError(std::string(name) + " must have length " + std::to_string(d));
}

// (z - 1) * (h - tanh(Uh (r * h) + bh)); shared by the field and the
// input-free discrete update so the two agree bit for bit.
Vec increment(const GruParams& p, const Vec& h) {
  const Vec z = sigmoid(p.Uz * h + p.bz);
  const Vec r = sigmoid(p.Ur * h + p.br);
  const Vec t = (p.Uh * r.cwiseProduct(h) + p.bh).array().tanh().matrix();
  return (z.array() - 1.0).matrix().cwiseProduct(h - t);
}

}  // namespace

GruParams GruParams::zeros(int d) {
  if (d <= 0) throw ShapeError("hidden dimension must be positive");
  return GruParams{Mat::Zero(d, d), Mat::Zero(d, d), Mat::Zero(d, d),
                   Vec::Zero(d),    Vec::Zero(d),    Vec::Zero(d)};
}

void GruParams::validate() const {
  const int d = dim();
  if (d <= 0) throw ShapeError("hidden dimension must be positive");
  require_square(Uz, d, "Uz");
  require_square(Ur, d, "Ur");
  require_square(Uh, d, "Uh");
  require_len(bz, d, "bz");
  require_len(br, d, "br");
  const bool finite = Uz.allFinite() && Ur.allFinite() && Uh.allFinite() && bz.allFinite() &&
                      br.allFinite() && bh.allFinite();
  if (!finite) throw ConfigError("GRU parameters must be finite");
}

bool GruParams::operator==(const GruParams& o) const {
  return Uz == o.Uz && Ur == o.Ur && Uh == o.Uh && bz == o.bz && br == o.br && bh == o.bh;
}

InputParams InputParams::zeros(int d, int p) {
  if (d <= 0 || p <= 0) throw ShapeError("input and hidden dimensions must be positive");
  return InputParams{Mat::Zero(d, p), Mat::Zero(d, p), Mat::Zero(d, p)};
}

void InputParams::validate(int d) const {
  const auto p = Wz.cols();
  if (p <= 0) throw ShapeError("input dimension must be positive");
  for (const Mat* m : {&Wz, &Wr, &Wh}) {
    if (m->rows() != d || m->cols() != p)
      throw ShapeError("input weights must be " + std::to_string(d) + "x" + std::to_string(p));
    if (!m->allFinite()) throw ConfigError("input weights must be finite");
  }
}

bool InputParams::operator==(const InputParams& o) const {
  return Wz == o.Wz && Wr == o.Wr && Wh == o.Wh;
}

Vec sigmoid(const Vec& x) { return x.unaryExpr([](double v) { return sigmoid(v); }); }

void check_state(const GruParams& params, const Vec& h) {
  if (h.size() != params.dim())
    throw ShapeError("state has length " + std::to_string(h.size()) + ", expected " +
                     std::to_string(params.dim()));
}

GateValues gates(const GruParams& params, const Vec& h) {
  check_state(params, h);
  return GateValues{sigmoid(params.Uz * h + params.bz), sigmoid(params.Ur * h + params.br)};
}

Vec vector_field(const GruParams& params, const Vec& h) {
  check_state(params, h);
  return increment(params, h);
}

Mat jacobian(const GruParams& params, const Vec& h) {
  check_state(params, h);
  const Vec z = sigmoid(params.Uz * h + params.bz);
  const Vec r = sigmoid(params.Ur * h + params.br);
  const Vec t = (params.Uh * r.cwiseProduct(h) + params.bh).array().tanh().matrix();

  const Vec dz = z.array() * (1.0 - z.array());
  const Vec dr = r.array() * (1.0 - r.array());
  const Vec dt = 1.0 - t.array().square();

  // d(r*h)/dh = diag(r) + diag(h) diag(r') Ur
  Mat drh = (h.cwiseProduct(dr)).asDiagonal() * params.Ur;
  drh.diagonal() += r;

  Mat inner = -(dt.asDiagonal() * params.Uh * drh);
  inner.diagonal().array() += 1.0;

  Mat J = ((h - t).cwiseProduct(dz)).asDiagonal() * params.Uz;
  J.noalias() += (z.array() - 1.0).matrix().asDiagonal() * inner;
  return J;
}

Vec discrete_step(const GruParams& params, const Vec& h) {
  check_state(params, h);
  return h + increment(params, h);
}

Vec discrete_step(const GruParams& params, const InputParams& inputs, const Vec& h, const Vec& x) {
  check_state(params, h);
  inputs.validate(params.dim());
  if (x.size() != inputs.input_dim())
    throw ShapeError("input has length " + std::to_string(x.size()) + ", expected " +
                     std::to_string(inputs.input_dim()));
  // Gates see the input too; written out rather than via increment().
  const Vec z = sigmoid(inputs.Wz * x + params.Uz * h + params.bz);
  const Vec r = sigmoid(inputs.Wr * x + params.Ur * h + params.br);
  const Vec t =
      (inputs.Wh * x + params.Uh * r.cwiseProduct(h) + params.bh).array().tanh().matrix();
  return h + (z.array() - 1.0).matrix().cwiseProduct(h - t);
}

}  // namespace grudyn

#pragma once

// Reference computations that share no code with the library.

#include <grudyn/gru.hpp>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <limits>
#include <random>

namespace oracle {

/// Plain bisection on a sign change of f over [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double tol = 1e-14) {
  double flo = f(lo);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Positive root of x = tanh(k x) for k > 1.
inline double tanh_fixed_point(double k) {
  return bisect([k](double x) { return x - std::tanh(k * x); }, 1e-3, 1.0);
}

/// Distance in units in the last place between two doubles of equal sign.
inline std::int64_t ulp_distance(double a, double b) {
  if (a == b) return 0;
  std::int64_t ia, ib;
  std::memcpy(&ia, &a, sizeof a);
  std::memcpy(&ib, &b, sizeof b);
  if ((ia < 0) != (ib < 0)) return std::numeric_limits<std::int64_t>::max();
  return ia > ib ? ia - ib : ib - ia;
}

/// Central finite-difference Jacobian of f at x.
inline grudyn::Mat fd_jacobian(const std::function<grudyn::Vec(const grudyn::Vec&)>& f,
                               const grudyn::Vec& x, double eps = 1e-6) {
  const grudyn::Vec f0 = f(x);
  grudyn::Mat J(f0.size(), x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    grudyn::Vec a = x, b = x;
    a[j] += eps;
    b[j] -= eps;
    J.col(j) = (f(a) - f(b)) / (2 * eps);
  }
  return J;
}

/// Hand-written field, following the defining formula term by term.
inline grudyn::Vec field(const grudyn::GruParams& p, const grudyn::Vec& h) {
  const auto d = h.size();
  grudyn::Vec out(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    double az = p.bz[i];
    for (Eigen::Index j = 0; j < d; ++j) az += p.Uz(i, j) * h[j];
    const double z = 1.0 / (1.0 + std::exp(-az));
    double ah = p.bh[i];
    for (Eigen::Index j = 0; j < d; ++j) {
      double ar = p.br[j];
      for (Eigen::Index k = 0; k < d; ++k) ar += p.Ur(j, k) * h[k];
      const double r = 1.0 / (1.0 + std::exp(-ar));
      ah += p.Uh(i, j) * r * h[j];
    }
    out[i] = (z - 1.0) * (h[i] - std::tanh(ah));
  }
  return out;
}

inline grudyn::GruParams random_params(std::mt19937_64& rng, int d, double scale = 3.0,
                                       bool biases = true) {
  std::normal_distribution<double> n(0.0, scale);
  grudyn::GruParams p = grudyn::GruParams::zeros(d);
  for (grudyn::Mat* m : {&p.Uz, &p.Ur, &p.Uh})
    for (Eigen::Index k = 0; k < m->size(); ++k) m->data()[k] = n(rng);
  if (biases)
    for (grudyn::Vec* b : {&p.bz, &p.br, &p.bh})
      for (Eigen::Index k = 0; k < b->size(); ++k) (*b)[k] = n(rng);
  return p;
}

inline grudyn::Vec random_state(std::mt19937_64& rng, int d, double lo = -1.5, double hi = 1.5) {
  std::uniform_real_distribution<double> u(lo, hi);
  grudyn::Vec h(d);
  for (Eigen::Index k = 0; k < d; ++k) h[k] = u(rng);
  return h;
}

inline grudyn::GruParams params2(std::initializer_list<double> uh,
                                 std::initializer_list<double> ur = {0, 0, 0, 0}) {
  grudyn::GruParams p = grudyn::GruParams::zeros(2);
  auto it = uh.begin();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) p.Uh(i, j) = *it++;
  it = ur.begin();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) p.Ur(i, j) = *it++;
  return p;
}

}  // namespace oracle

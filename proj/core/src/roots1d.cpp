#include "grudyn/roots1d.hpp"

#include <algorithm>
#include <cmath>

namespace grudyn {

std::string to_string(RootStability s) {
  switch (s) {
    case RootStability::stable: return "stable";
    case RootStability::unstable: return "unstable";
    case RootStability::half_stable: return "half-stable";
  }
  return "unknown";
}

namespace {

struct Scalar1D {
  double uh, ur, br, bh;

  // Argument of tanh and its derivative in h.
  double arg(double h) const { return uh * sigmoid(ur * h + br) * h + bh; }
  double arg_slope(double h) const {
    const double s = sigmoid(ur * h + br);
    return uh * (s + h * ur * s * (1.0 - s));
  }
  double G(double u) const { return arg(std::tanh(u)) - u; }
  double dG(double u) const {
    const double c = std::cosh(u);
    const double sech2 = std::isfinite(c) ? 1.0 / (c * c) : 0.0;
    return arg_slope(std::tanh(u)) * sech2 - 1.0;
  }
};

Scalar1D scalar_view(const GruParams& p) {
  if (p.dim() != 1) throw DimensionError("1D root analysis requires d = 1");
  p.validate();
  return {p.Uh(0, 0), p.Ur(0, 0), p.br[0], p.bh[0]};
}

template <typename Fn>
double bisect(Fn&& f, double lo, double hi, double tol) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double margin_from_u(double u) {
  // 1 - tanh|u| = 2 e^{-2|u|} / (1 + e^{-2|u|})
  const double e = std::exp(-2.0 * std::abs(u));
  return 2.0 * e / (1.0 + e);
}

}  // namespace

double root_function_1d(const GruParams& params, double h) {
  const Scalar1D s = scalar_view(params);
  return std::tanh(s.arg(h)) - h;
}

std::vector<Root1D> find_roots_1d(const GruParams& params, int grid_n) {
  Roots1DOptions opts;
  opts.grid_n = grid_n;
  return find_roots_1d(params, opts);
}

std::vector<Root1D> find_roots_1d(const GruParams& params, const Roots1DOptions& opts) {
  if (opts.grid_n < 1000) throw ConfigError("grid_n must be at least 1000");
  const Scalar1D s = scalar_view(params);

  // |arg| <= |Uh| + |bh|, so every root satisfies |u| <= that bound.
  const double L = std::abs(s.uh) + std::abs(s.bh) + 1.0;
  std::vector<double> us;
  us.reserve(2 * static_cast<std::size_t>(opts.grid_n));
  for (int k = 0; k < opts.grid_n; ++k)
    us.push_back(-L + 2.0 * L * k / (opts.grid_n - 1));
  // A second grid uniform in h resolves steep reset-gate transitions.
  for (int k = 1; k < opts.grid_n; ++k) {
    const double h = -1.0 + 2.0 * k / opts.grid_n;
    const double u = std::atanh(h);
    if (std::abs(u) < L) us.push_back(u);
  }
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());

  // Breakpoints: interval ends plus critical points of G.
  struct Break {
    double u;
    bool tangent;
  };
  std::vector<Break> breaks{{us.front(), false}};
  double prev_slope = s.dG(us.front());
  for (std::size_t k = 1; k < us.size(); ++k) {
    const double slope = s.dG(us[k]);
    if ((slope > 0.0) != (prev_slope > 0.0)) {
      const double c = bisect([&](double u) { return s.dG(u); }, us[k - 1], us[k], 1e-14);
      breaks.push_back({c, std::abs(s.G(c)) <= opts.tangency_tol});
    }
    prev_slope = slope;
  }
  breaks.push_back({us.back(), false});

  std::vector<double> root_us;
  std::vector<bool> root_tangent;
  for (const Break& b : breaks) {
    if (b.tangent) {
      root_us.push_back(b.u);
      root_tangent.push_back(true);
    }
  }
  // G is monotone between consecutive breakpoints: at most one crossing each.
  // An interval touching a tangent point only holds that same root.
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const Break& a = breaks[i];
    const Break& b = breaks[i + 1];
    if (a.tangent || b.tangent) continue;
    const double ga = s.G(a.u);
    const double gb = s.G(b.u);
    if (ga == 0.0) {
      root_us.push_back(a.u);
      root_tangent.push_back(false);
      continue;
    }
    if ((ga > 0.0) == (gb > 0.0) || gb == 0.0) continue;
    root_us.push_back(bisect([&](double u) { return s.G(u); }, a.u, b.u, opts.bisect_tol));
    root_tangent.push_back(false);
  }

  std::vector<Root1D> roots;
  for (std::size_t i = 0; i < root_us.size(); ++i) {
    const double u = root_us[i];
    Root1D r;
    r.location = std::tanh(u);
    r.boundary_margin = margin_from_u(u);
    r.slope = s.dG(u);
    r.tangency = root_tangent[i];
    if (r.tangency || std::abs(r.slope) <= opts.zero_tol)
      r.stability = RootStability::half_stable;
    else
      r.stability = r.slope < 0.0 ? RootStability::stable : RootStability::unstable;
    roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end(),
            [](const Root1D& a, const Root1D& b) { return a.location < b.location; });
  return roots;
}

std::vector<SaddleNodeTransition> scan_saddle_node_1d(const GruParams& params, double bh_from,
                                                      double bh_to, int steps,
                                                      const Roots1DOptions& opts, double bh_tol) {
  if (params.dim() != 1) throw DimensionError("saddle-node scan requires d = 1");
  if (!(bh_from != bh_to) || !std::isfinite(bh_from) || !std::isfinite(bh_to))
    throw ConfigError("bh range is empty");
  if (steps < 2) throw ConfigError("steps must be at least 2");

  GruParams p = params;
  auto count_at = [&](double bh) {
    p.bh[0] = bh;
    return static_cast<int>(find_roots_1d(p, opts).size());
  };

  std::vector<SaddleNodeTransition> out;
  double prev_bh = bh_from;
  int prev_count = count_at(bh_from);
  for (int k = 1; k < steps; ++k) {
    const double bh = bh_from + (bh_to - bh_from) * k / (steps - 1);
    const int c = count_at(bh);
    if (c != prev_count) {
      double lo = prev_bh;  // count == prev_count side
      double hi = bh;
      while (std::abs(hi - lo) > bh_tol) {
        const double mid = 0.5 * (lo + hi);
        if (count_at(mid) == prev_count)
          lo = mid;
        else
          hi = mid;
      }
      out.push_back({0.5 * (lo + hi), prev_count, c});
    }
    prev_bh = bh;
    prev_count = c;
  }
  return out;
}

}  // namespace grudyn

#include "grudyn/fixed_points.hpp"

#include "grudyn/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace grudyn {

std::string to_string(FixedPointClass c) {
  switch (c) {
    case FixedPointClass::sink_node: return "sink-node";
    case FixedPointClass::sink_spiral: return "sink-spiral";
    case FixedPointClass::source_node: return "source-node";
    case FixedPointClass::source_spiral: return "source-spiral";
    case FixedPointClass::saddle: return "saddle";
    case FixedPointClass::saddle_node_1: return "saddle-node-1";
    case FixedPointClass::saddle_node_2: return "saddle-node-2";
    case FixedPointClass::codim2: return "codim-2";
    case FixedPointClass::center: return "center";
    case FixedPointClass::degenerate: return "degenerate";
    case FixedPointClass::stable_1d: return "stable";
    case FixedPointClass::unstable_1d: return "unstable";
    case FixedPointClass::half_stable_1d: return "half-stable";
  }
  return "unknown";
}

bool is_sink(FixedPointClass c) {
  return c == FixedPointClass::sink_node || c == FixedPointClass::sink_spiral ||
         c == FixedPointClass::stable_1d;
}

bool is_source(FixedPointClass c) {
  return c == FixedPointClass::source_node || c == FixedPointClass::source_spiral ||
         c == FixedPointClass::unstable_1d;
}

void FixedPointOptions::validate() const {
  region.validate();
  if (grid_n < 1) throw ConfigError("grid_n must be positive");
  if (!(zero_tol > 0.0)) throw ConfigError("zero_tol must be positive");
  if (!(residual_tol > 0.0)) throw ConfigError("residual_tol must be positive");
  if (!(dedup_tol > 0.0)) throw ConfigError("dedup_tol must be positive");
  if (max_iter < 1) throw ConfigError("max_iter must be positive");
}

std::vector<Vec> seed_lattice(int d, const Box& region, int grid_n) {
  region.validate();
  if (d <= 0 || grid_n < 1) throw ConfigError("seed lattice needs d > 0 and grid_n > 0");
  auto coord = [&](int k) {
    return grid_n == 1 ? 0.5 * (region.lo + region.hi)
                       : region.lo + region.width() * k / (grid_n - 1);
  };
  std::vector<Vec> seeds;
  const double total = std::pow(static_cast<double>(grid_n), d);
  if (total <= 16384.0) {
    const long n = static_cast<long>(total);
    seeds.reserve(static_cast<std::size_t>(n));
    for (long idx = 0; idx < n; ++idx) {
      Vec h(d);
      long rest = idx;
      for (int i = d - 1; i >= 0; --i) {
        h[i] = coord(static_cast<int>(rest % grid_n));
        rest /= grid_n;
      }
      seeds.push_back(h);
    }
    return seeds;
  }
  // Full lattices are unaffordable in high dimension; fall back to a fixed
  // pseudo-random sample so results stay reproducible.
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> u(region.lo, region.hi);
  for (int k = 0; k < 4096; ++k) {
    Vec h(d);
    for (int i = 0; i < d; ++i) h[i] = u(rng);
    seeds.push_back(h);
  }
  return seeds;
}

std::optional<Vec> newton_solve(const GruParams& params, const Vec& h0,
                                const FixedPointOptions& opts) {
  check_state(params, h0);
  Vec h = h0;
  Vec f = vector_field(params, h);
  double fn = f.norm();
  int stalled = 0;

  for (int it = 0; it < opts.max_iter && fn > 0.0; ++it) {
    const Mat J = jacobian(params, h);
    Eigen::FullPivLU<Mat> lu(J);
    bool improved = false;

    if (lu.rcond() > 1e-12) {
      const Vec s = lu.solve(-f);
      double a = 1.0;
      for (int ls = 0; ls < 30; ++ls, a *= 0.5) {
        const Vec trial = h + a * s;
        const Vec ft = vector_field(params, trial);
        if (ft.allFinite() && ft.norm() < fn) {
          h = trial;
          f = ft;
          fn = ft.norm();
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      // Levenberg-Marquardt with damping tied to the residual; this keeps
      // converging (linearly) into roots where J is singular.
      double mu = std::max(fn, 1e-14);
      for (int k = 0; k < 20; ++k, mu *= 10.0) {
        Mat A = J.transpose() * J;
        A.diagonal().array() += mu;
        const Vec s = A.ldlt().solve(-(J.transpose() * f));
        const Vec trial = h + s;
        const Vec ft = vector_field(params, trial);
        if (ft.allFinite() && ft.norm() < fn) {
          h = trial;
          f = ft;
          fn = ft.norm();
          improved = true;
          break;
        }
      }
    }
    if (!improved) break;
    if (fn < opts.residual_tol) {
      // Keep polishing until progress stalls, but only briefly.
      if (++stalled > 8) break;
    }
    const double far = 10.0 * std::max(std::abs(opts.region.lo), std::abs(opts.region.hi));
    if ((h.array().abs() > far).any()) return std::nullopt;
  }
  if (!(fn < opts.residual_tol)) return std::nullopt;
  return h;
}

namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

std::vector<std::complex<double>> eigen_2x2(const Mat& J) {
  const double tr = J.trace();
  const double det = J.determinant();
  const double disc = 0.25 * tr * tr - det;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    // Stable form: avoid cancellation in the smaller root.
    const double big = 0.5 * tr + (tr >= 0.0 ? s : -s);
    const double small = big != 0.0 ? det / big : 0.0;
    std::vector<std::complex<double>> ev{{std::min(big, small), 0.0},
                                         {std::max(big, small), 0.0}};
    return ev;
  }
  const double s = std::sqrt(-disc);
  return {{0.5 * tr, -s}, {0.5 * tr, s}};
}

std::vector<int> probe(const GruParams& params, const Vec& h, const Vec& v, double delta) {
  const Vec u = v.normalized();
  return {sign_of(u.dot(vector_field(params, h - delta * u))),
          sign_of(u.dot(vector_field(params, h + delta * u)))};
}

// Real eigenvectors for the near-zero eigenvalues of J.
std::vector<Vec> null_directions(const Mat& J, double zero_tol) {
  std::vector<Vec> out;
  const int d = static_cast<int>(J.rows());
  if (J.cwiseAbs().maxCoeff() <= zero_tol) {
    for (int i = 0; i < d; ++i) out.push_back(Vec::Unit(d, i));
    return out;
  }
  Eigen::EigenSolver<Mat> es(J);
  for (int i = 0; i < d; ++i) {
    if (std::abs(es.eigenvalues()[i]) <= zero_tol) out.push_back(es.eigenvectors().col(i).real());
  }
  return out;
}

}  // namespace

Classification classify_fixed_point(const GruParams& params, const Vec& h, double zero_tol,
                                    double residual_tol, double probe_delta) {
  check_state(params, h);
  const double res = vector_field(params, h).norm();
  if (!(res < residual_tol)) throw NotAFixedPoint(res, residual_tol);

  const Mat J = jacobian(params, h);
  const int d = params.dim();
  Classification c;
  c.zero_tol = zero_tol;
  bool degenerate = false;

  if (d == 1) {
    const double l = J(0, 0);
    c.eigenvalues = {{l, 0.0}};
    if (l < -zero_tol) {
      c.kind = FixedPointClass::stable_1d;
    } else if (l > zero_tol) {
      c.kind = FixedPointClass::unstable_1d;
    } else {
      c.kind = FixedPointClass::half_stable_1d;
      degenerate = true;
    }
  } else if (d == 2) {
    c.eigenvalues = eigen_2x2(J);
    const auto& ev = c.eigenvalues;
    const bool z0 = std::abs(ev[0]) <= zero_tol;
    const bool z1 = std::abs(ev[1]) <= zero_tol;
    const bool complex_pair = ev[0].imag() != 0.0;
    if (z0 && z1) {
      c.kind = FixedPointClass::codim2;
      degenerate = true;
    } else if (z0 || z1) {
      const double other = (z0 ? ev[1] : ev[0]).real();
      c.kind = other < 0.0 ? FixedPointClass::saddle_node_1 : FixedPointClass::saddle_node_2;
      degenerate = true;
    } else if (complex_pair) {
      const double re = ev[0].real();
      if (re < -zero_tol)
        c.kind = FixedPointClass::sink_spiral;
      else if (re > zero_tol)
        c.kind = FixedPointClass::source_spiral;
      else
        c.kind = FixedPointClass::center;
    } else if (ev[1].real() < 0.0) {
      c.kind = FixedPointClass::sink_node;
    } else if (ev[0].real() > 0.0) {
      c.kind = FixedPointClass::source_node;
    } else {
      c.kind = FixedPointClass::saddle;
    }
  } else {
    Eigen::EigenSolver<Mat> es(J, false);
    bool any_complex = false, any_zero = false, all_neg = true, all_pos = true;
    for (int i = 0; i < d; ++i) {
      const std::complex<double> l = es.eigenvalues()[i];
      c.eigenvalues.push_back(l);
      any_complex = any_complex || l.imag() != 0.0;
      any_zero = any_zero || std::abs(l.real()) <= zero_tol;
      all_neg = all_neg && l.real() < -zero_tol;
      all_pos = all_pos && l.real() > zero_tol;
    }
    std::sort(c.eigenvalues.begin(), c.eigenvalues.end(), [](auto a, auto b) {
      return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    if (all_neg)
      c.kind = any_complex ? FixedPointClass::sink_spiral : FixedPointClass::sink_node;
    else if (all_pos)
      c.kind = any_complex ? FixedPointClass::source_spiral : FixedPointClass::source_node;
    else if (!any_zero)
      c.kind = FixedPointClass::saddle;
    else {
      c.kind = FixedPointClass::degenerate;
      degenerate = true;
    }
  }

  if (degenerate) {
    for (const Vec& v : null_directions(J, zero_tol)) {
      const auto s = probe(params, h, v, probe_delta);
      c.probe_signs.insert(c.probe_signs.end(), s.begin(), s.end());
    }
  }
  return c;
}

namespace {

// Degenerate roots leave a small plateau where |F| is below tolerance, so
// Newton runs from different seeds land on distinct points of the same
// root. Two candidates are the same root if |F| stays tiny between them.
bool same_root(const GruParams& params, const Vec& a, const Vec& b,
               const FixedPointOptions& opts) {
  const double dist = (a - b).norm();
  if (dist <= opts.dedup_tol) return true;
  if (dist > 1e-2) return false;
  for (int k = 1; k < 32; ++k) {
    const Vec m = a + (b - a) * (k / 32.0);
    if (!(vector_field(params, m).norm() < opts.residual_tol)) return false;
  }
  return true;
}

}  // namespace

std::vector<FixedPoint> find_fixed_points(const GruParams& params, const FixedPointOptions& opts) {
  params.validate();
  opts.validate();
  const std::vector<Vec> seeds = seed_lattice(params.dim(), opts.region, opts.grid_n);
  std::vector<std::optional<Vec>> solved(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) { solved[i] = newton_solve(params, seeds[i], opts); });

  std::vector<Vec> roots;
  std::vector<double> residuals;
  for (const auto& s : solved) {
    if (!s || !opts.region.contains(*s)) continue;
    const double r = vector_field(params, *s).norm();
    bool merged = false;
    for (std::size_t k = 0; k < roots.size(); ++k) {
      if (same_root(params, roots[k], *s, opts)) {
        if (r < residuals[k]) {
          roots[k] = *s;
          residuals[k] = r;
        }
        merged = true;
        break;
      }
    }
    if (!merged) {
      roots.push_back(*s);
      residuals.push_back(r);
    }
  }

  std::vector<FixedPoint> out;
  out.reserve(roots.size());
  for (std::size_t k = 0; k < roots.size(); ++k) {
    FixedPoint fp;
    fp.location = roots[k];
    fp.residual = residuals[k];
    fp.jacobian = jacobian(params, roots[k]);
    fp.cls = classify_fixed_point(params, roots[k], opts.zero_tol, opts.residual_tol,
                                  opts.probe_delta);
    out.push_back(std::move(fp));
  }
  std::sort(out.begin(), out.end(), [](const FixedPoint& a, const FixedPoint& b) {
    return std::lexicographical_compare(a.location.begin(), a.location.end(), b.location.begin(),
                                        b.location.end());
  });
  return out;
}

TopologySignature topology_signature(const std::vector<FixedPoint>& points) {
  TopologySignature s;
  for (const FixedPoint& p : points) {
    ++s.total;
    const FixedPointClass k = p.cls.kind;
    if (is_sink(k))
      ++s.sinks;
    else if (is_source(k))
      ++s.sources;
    else if (k == FixedPointClass::saddle)
      ++s.saddles;
    else if (k == FixedPointClass::saddle_node_1)
      ++s.saddle_node_1;
    else if (k == FixedPointClass::saddle_node_2)
      ++s.saddle_node_2;
    else if (k == FixedPointClass::codim2)
      ++s.codim2;
    else
      ++s.other;
  }
  return s;
}

std::string TopologySignature::to_string() const {
  std::ostringstream os;
  os << "total=" << total << " sinks=" << sinks << " sources=" << sources
     << " saddles=" << saddles << " sn1=" << saddle_node_1 << " sn2=" << saddle_node_2
     << " codim2=" << codim2;
  if (other) os << " other=" << other;
  return os.str();
}

}  // namespace grudyn

#include "grudyn/model.hpp"

#include <cmath>
#include <random>

namespace grudyn {

void TrainedModel::validate() const {
  gru.validate();
  input.validate(gru.dim());
  if (readout_W.cols() != gru.dim() || readout_W.rows() != readout_b.size())
    throw ShapeError("readout must be out x d with a matching bias");
  if (!readout_W.allFinite() || !readout_b.allFinite()) throw ConfigError("readout must be finite");
}

TrainedModel TrainedModel::zeros(int d, int p, int out, Task task) {
  TrainedModel m;
  m.gru = GruParams::zeros(d);
  m.input = InputParams::zeros(d, p);
  m.readout_W = Mat::Zero(out, d);
  m.readout_b = Vec::Zero(out);
  m.task = task;
  return m;
}

TrainedModel TrainedModel::random(int d, Task task, std::uint64_t seed, double init_std) {
  const int p = observation_dim(task);
  const int out = is_prediction(task) ? 2 : 1;
  TrainedModel m = zeros(d, p, out, task);
  m.seed = seed;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, init_std);
  for (Mat* w : {&m.gru.Uz, &m.gru.Ur, &m.gru.Uh, &m.input.Wz, &m.input.Wr, &m.input.Wh,
                 &m.readout_W})
    for (Eigen::Index k = 0; k < w->size(); ++k) w->data()[k] = n(rng);
  return m;
}

Json to_json(const TrainedModel& m) {
  Json j = to_json(m.gru);
  j["p"] = m.input_dim();
  j["input"] = to_json(m.input);
  j["readout"] = {{"W", matrix_to_json(m.readout_W)}, {"b", vector_to_json(m.readout_b)}};
  j["task"] = to_string(m.task);
  j["seed"] = m.seed;
  return j;
}

TrainedModel trained_model_from_json(const Json& j) {
  TrainedModel m;
  m.gru = gru_params_from_json(j);
  const int d = m.gru.dim();
  m.input = input_params_from_json(j.at("input"), d);
  const Json& ro = j.at("readout");
  const int out = static_cast<int>(ro.at("b").size());
  m.readout_W = matrix_from_json(ro.at("W"), out, d, "readout.W");
  m.readout_b = vector_from_json(ro.at("b"), out, "readout.b");
  m.task = task_from_string(j.value("task", "fhn"));
  m.seed = j.value("seed", std::uint64_t{0});
  m.validate();
  return m;
}

namespace {

template <typename M, typename F>
void for_each_block(M& m, F&& f) {
  f(m.gru.Uz.data(), m.gru.Uz.size());
  f(m.gru.Ur.data(), m.gru.Ur.size());
  f(m.gru.Uh.data(), m.gru.Uh.size());
  f(m.gru.bz.data(), m.gru.bz.size());
  f(m.gru.br.data(), m.gru.br.size());
  f(m.gru.bh.data(), m.gru.bh.size());
  f(m.input.Wz.data(), m.input.Wz.size());
  f(m.input.Wr.data(), m.input.Wr.size());
  f(m.input.Wh.data(), m.input.Wh.size());
  f(m.readout_W.data(), m.readout_W.size());
  f(m.readout_b.data(), m.readout_b.size());
}

Eigen::Index parameter_count(const TrainedModel& m) {
  Eigen::Index n = 0;
  for_each_block(m, [&](const double*, Eigen::Index s) { n += s; });
  return n;
}

Mat sigmoid_m(const Mat& a) { return a.unaryExpr([](double v) { return sigmoid(v); }); }

struct StepCache {
  Mat x;  // empty when the step has no input
  Mat h, z, r, c;
};

// One batched GRU update; h is d x N, x is p x N or empty.
Mat gru_step(const TrainedModel& m, const Mat& h, const Mat& x, StepCache* cache) {
  Mat az = m.gru.Uz * h;
  Mat ar = m.gru.Ur * h;
  if (x.size()) {
    az.noalias() += m.input.Wz * x;
    ar.noalias() += m.input.Wr * x;
  }
  az.colwise() += m.gru.bz;
  ar.colwise() += m.gru.br;
  const Mat z = sigmoid_m(az);
  const Mat r = sigmoid_m(ar);
  Mat ah = m.gru.Uh * r.cwiseProduct(h);
  if (x.size()) ah.noalias() += m.input.Wh * x;
  ah.colwise() += m.gru.bh;
  const Mat c = ah.array().tanh().matrix();
  Mat next = h + (z.array() - 1.0).matrix().cwiseProduct(h - c);
  if (cache) *cache = {x, h, z, r, c};
  return next;
}

// Accumulates parameter gradients for one step and returns dL/dh_prev.
Mat gru_step_backward(const TrainedModel& m, const StepCache& s, const Mat& gh, TrainedModel& g) {
  const Mat dz = gh.cwiseProduct(s.h - s.c);
  const Mat daz = dz.array() * s.z.array() * (1.0 - s.z.array());
  const Mat dah = gh.array() * (1.0 - s.z.array()) * (1.0 - s.c.array().square());
  const Mat q = s.r.cwiseProduct(s.h);
  const Mat dq = m.gru.Uh.transpose() * dah;
  const Mat dar = dq.array() * s.h.array() * s.r.array() * (1.0 - s.r.array());

  g.gru.Uz.noalias() += daz * s.h.transpose();
  g.gru.Ur.noalias() += dar * s.h.transpose();
  g.gru.Uh.noalias() += dah * q.transpose();
  g.gru.bz += daz.rowwise().sum();
  g.gru.br += dar.rowwise().sum();
  g.gru.bh += dah.rowwise().sum();
  if (s.x.size()) {
    g.input.Wz.noalias() += daz * s.x.transpose();
    g.input.Wr.noalias() += dar * s.x.transpose();
    g.input.Wh.noalias() += dah * s.x.transpose();
  }
  Mat dh = gh.cwiseProduct(s.z) + dq.cwiseProduct(s.r);
  dh.noalias() += m.gru.Uz.transpose() * daz;
  dh.noalias() += m.gru.Ur.transpose() * dar;
  return dh;
}

void check_task(const TrainedModel& m, const Dataset& ds, bool prediction) {
  if (is_prediction(ds.task) != prediction)
    throw ConfigError("loss does not apply to task " + to_string(ds.task));
  if (ds.steps.empty() || ds.steps.front().rows() != m.input_dim())
    throw ShapeError("dataset observation size does not match the model input");
}

double softplus(double v) { return std::max(v, 0.0) + std::log1p(std::exp(-std::abs(v))); }

}  // namespace

Vec flatten(const TrainedModel& m) {
  Vec theta(parameter_count(m));
  Eigen::Index at = 0;
  for_each_block(m, [&](const double* p, Eigen::Index s) {
    theta.segment(at, s) = Eigen::Map<const Vec>(p, s);
    at += s;
  });
  return theta;
}

void unflatten(const Vec& theta, TrainedModel& m) {
  if (theta.size() != parameter_count(m)) throw ShapeError("parameter vector has the wrong length");
  Eigen::Index at = 0;
  for_each_block(m, [&](double* p, Eigen::Index s) {
    Eigen::Map<Vec>(p, s) = theta.segment(at, s);
    at += s;
  });
}

std::vector<Mat> hidden_rollout(const TrainedModel& m, const Mat& w0, int T) {
  if (w0.rows() != m.input_dim()) throw ShapeError("w0 must have p rows");
  if (T < 1) throw ConfigError("T must be at least 1");
  std::vector<Mat> hs;
  hs.reserve(static_cast<std::size_t>(T));
  Mat h = Mat::Zero(m.hidden_dim(), w0.cols());
  const Mat none;
  for (int k = 1; k <= T; ++k) {
    h = gru_step(m, h, k == 1 ? w0 : none, nullptr);
    hs.push_back(h);
  }
  return hs;
}

std::vector<Mat> forward(const TrainedModel& m, const Mat& w0, int T) {
  std::vector<Mat> out;
  for (const Mat& h : hidden_rollout(m, w0, T)) {
    Mat y = m.readout_W * h;
    y.colwise() += m.readout_b;
    out.push_back(std::move(y));
  }
  return out;
}

double loss_mse(const TrainedModel& m, const Dataset& ds) {
  check_task(m, ds, true);
  const int T = ds.horizon();
  const auto pred = forward(m, ds.steps[0], T);
  double sum = 0.0;
  for (int k = 1; k <= T; ++k) sum += (pred[k - 1] - ds.steps[k]).squaredNorm();
  return sum / T;
}

double loss_mse_normalized(const TrainedModel& m, const Dataset& ds) {
  return loss_mse(m, ds) / ds.size();
}

Mat twoseq_initial_states(const Dataset& ds, int d) {
  std::mt19937_64 rng(ds.config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> n(0.0, 0.1);
  Mat h0(d, ds.size());
  for (Eigen::Index k = 0; k < h0.size(); ++k) h0.data()[k] = n(rng);
  return h0;
}

Vec twoseq_logits(const TrainedModel& m, const Dataset& ds) {
  check_task(m, ds, false);
  Mat h = twoseq_initial_states(ds, m.hidden_dim());
  for (const Mat& x : ds.steps) h = gru_step(m, h, x, nullptr);
  Mat y = m.readout_W * h;
  y.colwise() += m.readout_b;
  return y.row(0).transpose();
}

double loss_xent(const TrainedModel& m, const Dataset& ds) {
  const Vec l = twoseq_logits(m, ds);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < l.size(); ++i) sum += softplus(l[i]) - ds.labels[i] * l[i];
  return sum / static_cast<double>(l.size());
}

double accuracy(const TrainedModel& m, const Dataset& ds) {
  const Vec l = twoseq_logits(m, ds);
  int ok = 0;
  for (Eigen::Index i = 0; i < l.size(); ++i) ok += (l[i] > 0.0) == (ds.labels[i] > 0.5);
  return static_cast<double>(ok) / static_cast<double>(l.size());
}

double task_loss(const TrainedModel& m, const Dataset& ds) {
  return is_prediction(ds.task) ? loss_mse(m, ds) : loss_xent(m, ds);
}

LossGrad loss_and_gradient(const TrainedModel& m, const Dataset& ds) {
  TrainedModel g = TrainedModel::zeros(m.hidden_dim(), m.input_dim(), m.output_dim(), m.task);
  LossGrad out;
  const bool prediction = is_prediction(ds.task);
  check_task(m, ds, prediction);

  std::vector<StepCache> caches;
  std::vector<Mat> hs;  // states after each step
  Mat h;
  std::size_t n_steps;
  if (prediction) {
    n_steps = static_cast<std::size_t>(ds.horizon());
    h = Mat::Zero(m.hidden_dim(), ds.size());
  } else {
    n_steps = ds.steps.size();
    h = twoseq_initial_states(ds, m.hidden_dim());
  }
  caches.resize(n_steps);
  const Mat none;
  for (std::size_t k = 0; k < n_steps; ++k) {
    const Mat& x = prediction ? (k == 0 ? ds.steps[0] : none) : ds.steps[k];
    h = gru_step(m, h, x, &caches[k]);
    hs.push_back(h);
  }

  // Output-layer gradients, expressed as dL/dh_k.
  std::vector<Mat> gh(n_steps);
  if (prediction) {
    const double T = static_cast<double>(n_steps);
    for (std::size_t k = 0; k < n_steps; ++k) {
      Mat y = m.readout_W * hs[k];
      y.colwise() += m.readout_b;
      const Mat err = y - ds.steps[k + 1];
      out.loss += err.squaredNorm();
      const Mat dy = (2.0 / T) * err;
      g.readout_W.noalias() += dy * hs[k].transpose();
      g.readout_b += dy.rowwise().sum();
      gh[k] = m.readout_W.transpose() * dy;
    }
    out.loss /= T;
  } else {
    const double N = static_cast<double>(ds.size());
    Mat y = m.readout_W * hs.back();
    y.colwise() += m.readout_b;
    Mat dy(1, ds.size());
    for (Eigen::Index i = 0; i < y.cols(); ++i) {
      out.loss += softplus(y(0, i)) - ds.labels[i] * y(0, i);
      dy(0, i) = (sigmoid(y(0, i)) - ds.labels[i]) / N;
    }
    out.loss /= N;
    g.readout_W.noalias() += dy * hs.back().transpose();
    g.readout_b += dy.rowwise().sum();
    for (auto& m_k : gh) m_k = Mat::Zero(m.hidden_dim(), ds.size());
    gh.back() = m.readout_W.transpose() * dy;
  }

  Mat carry = Mat::Zero(m.hidden_dim(), ds.size());
  for (std::size_t k = n_steps; k-- > 0;) {
    carry += gh[k];
    carry = gru_step_backward(m, caches[k], carry, g);
  }
  out.grad = flatten(g);
  return out;
}

TrainedModel gradients(const TrainedModel& m, const Dataset& ds) {
  TrainedModel g = m;
  unflatten(loss_and_gradient(m, ds).grad, g);
  return g;
}

}  // namespace grudyn

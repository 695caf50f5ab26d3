#include "cli.hpp"
#include "params_input.hpp"
#include "portrait.hpp"

#include <grudyn/catalog.hpp>
#include <grudyn/report.hpp>
#include <grudyn/trainer.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace grudyn::cli {
namespace {

namespace fs = std::filesystem;

std::string env_out_dir() {
  const char* e = std::getenv(kOutDirEnv);
  return e ? e : "";
}

// Explicit --out wins; otherwise $GRUDYN_OUT_DIR/<default_name>; otherwise
// empty, meaning standard output.
std::string artifact_path(const std::string& out, const std::string& default_name) {
  if (!out.empty()) return out;
  const std::string dir = env_out_dir();
  return dir.empty() ? "" : (fs::path(dir) / default_name).string();
}

// Directory-valued outputs (several files per run).
fs::path artifact_dir(const std::string& out, const std::string& fallback) {
  if (!out.empty()) return out;
  const std::string dir = env_out_dir();
  return dir.empty() ? fs::path(fallback) : fs::path(dir);
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  f << text;
  if (!f) throw Error("cannot write " + path.string());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

struct Io {
  std::ostream& out;
  std::ostream& err;

  // The artifact goes to its file and the summary to stdout; without a file
  // the artifact takes stdout and the summary moves to stderr.
  void emit(const std::string& path, const std::string& artifact, const std::string& summary) {
    if (path.empty()) {
      out << artifact;
      if (!summary.empty()) err << summary << '\n';
    } else {
      write_text(path, artifact);
      out << summary << (summary.empty() ? "" : "\n") << "wrote " << path << '\n';
    }
  }
};

Json base_config(const std::string& command) {
  return Json{{"command", command}, {"version", GRUDYN_VERSION}};
}

Box parse_region(const std::string& text) {
  const auto v = parse_list(text, "region");
  if (v.size() != 2) throw ConfigError("--region takes lo,hi");
  Box b{v[0], v[1]};
  b.validate();
  return b;
}

std::string csv_config_line(const Json& config) { return "# config=" + config.dump() + "\n"; }

std::string fmt(double v, int digits = 10) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

// ---------------------------------------------------------------------------

struct FixedPointFlags {
  double tol = 1e-4;
  int grid = 40;
  std::string region = "-1.5,1.5";

  void add(CLI::App& app) {
    app.add_option("--tol", tol, "eigenvalue zero tolerance")->capture_default_str();
    app.add_option("--grid", grid, "Newton seeds per axis")->capture_default_str();
    app.add_option("--region", region, "search window lo,hi")->capture_default_str();
  }
  FixedPointOptions options() const {
    FixedPointOptions o;
    o.zero_tol = tol;
    o.grid_n = grid;
    o.region = parse_region(region);
    o.validate();
    return o;
  }
};

struct PortraitCmd {
  ParamsInput params;
  FixedPointFlags fp;
  PortraitSpec spec;
  bool homoclinic = false;
  int homoclinic_grid = 41;
  bool no_cycle = false;
  bool no_trajectories = false;
  std::string out;

  void add(CLI::App& app) {
    params.add_options(app);
    fp.add(app);
    app.add_option("--resolution", spec.resolution, "speed background cells per axis")
        ->capture_default_str();
    app.add_option("--arrows", spec.arrows, "direction arrows per axis")->capture_default_str();
    app.add_option("--seeds", spec.seeds_n, "trajectory seed lattice per axis")
        ->capture_default_str();
    app.add_option("--size", spec.size_px, "plot size in pixels")->capture_default_str();
    app.add_flag("--homoclinic", homoclinic, "shade homoclinic regions");
    app.add_option("--homoclinic-grid", homoclinic_grid)->capture_default_str();
    app.add_flag("--no-cycle", no_cycle, "skip limit-cycle detection");
    app.add_flag("--no-trajectories", no_trajectories);
    app.add_option("--out", out, "SVG path");
    app.add_option("--format", format_, "output format")->check(CLI::IsMember({"svg"}));
  }

  int run(Io& io) {
    const GruParams p = params.resolve();
    spec.fixed_points = fp.options();
    spec.region = spec.fixed_points.region;
    spec.show_cycle = !no_cycle;
    spec.show_trajectories = !no_trajectories;
    Json config = base_config("portrait");
    config["params_source"] = params.describe();
    if (homoclinic) {
      HomoclinicOptions ho;
      ho.region = spec.region;
      ho.grid_n = homoclinic_grid;
      ho.fixed_points = spec.fixed_points;
      spec.homoclinic = homoclinic_scan(p, ho);
      config["homoclinic"] = to_json(ho);
    }
    const std::string svg = render_portrait(p, spec, config);
    std::string summary = "portrait rendered";
    if (spec.homoclinic)
      summary += ", " + std::to_string(spec.homoclinic->regions) + " homoclinic regions";
    io.emit(artifact_path(out, "portrait.svg"), svg, summary);
    return kExitOk;
  }

 private:
  std::string format_ = "svg";
};

struct FixedPointsCmd {
  ParamsInput params;
  FixedPointFlags fp;
  std::string out;
  std::string format = "json";

  void add(CLI::App& app) {
    params.add_options(app);
    fp.add(app);
    app.add_option("--out", out, "output path");
    app.add_option("--format", format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  }

  int run(Io& io) {
    const GruParams p = params.resolve();
    const FixedPointOptions opts = fp.options();
    const auto fps = find_fixed_points(p, opts);
    const TopologySignature sig = topology_signature(fps);

    Json config = base_config("fixed-points");
    config["params_source"] = params.describe();
    config["options"] = to_json(opts);

    std::string artifact;
    if (format == "json") {
      Json pts = Json::array();
      for (const auto& f : fps) pts.push_back(to_json(f));
      artifact = dump(Json{{"config", config},
                           {"params", to_json(p)},
                           {"fixed_points", pts},
                           {"signature", to_json(sig)}});
    } else {
      config["params"] = to_json(p);
      std::ostringstream os;
      os << csv_config_line(config);
      const int d = p.dim();
      for (int i = 1; i <= d; ++i) os << 'h' << i << ',';
      os << "class,residual";
      for (int i = 1; i <= d; ++i) os << ",eig" << i << "_re,eig" << i << "_im";
      os << '\n' << std::setprecision(17);
      for (const auto& f : fps) {
        for (int i = 0; i < d; ++i) os << f.location[i] << ',';
        os << to_string(f.cls.kind) << ',' << f.residual;
        for (const auto& ev : f.eigenvalues()) os << ',' << ev.real() << ',' << ev.imag();
        os << '\n';
      }
      artifact = os.str();
    }
    io.emit(artifact_path(out, "fixed_points." + format), artifact, sig.to_string());
    return kExitOk;
  }
};

struct CatalogVerifyCmd {
  bool all = false;
  std::vector<std::string> cases;
  FixedPointFlags fp;
  int min_exact = 30;
  std::string out;

  void add(CLI::App& app) {
    app.add_flag("--all", all, "verify every table case");
    app.add_option("--case", cases, "verify the listed case ids");
    fp.add(app);
    app.add_option("--min-exact", min_exact, "exact signatures required with --all")
        ->capture_default_str();
    app.add_option("--out", out, "report directory (default $GRUDYN_OUT_DIR or ./catalog-report)");
  }

  int run(Io& io) {
    if (!all && cases.empty()) throw CLI::ValidationError("catalog-verify", "need --all or --case");
    const FixedPointOptions opts = fp.options();
    const std::vector<std::string> ids = all ? table_case_ids() : cases;
    for (const auto& id : ids) find_case(id);  // fail fast on unknown ids
    const VerificationSummary summary = verify_all(opts, ids);

    Json config = base_config("catalog-verify");
    config["options"] = to_json(opts);
    config["cases"] = ids;
    config["min_exact"] = min_exact;
    config["catalog_version"] = catalog_version();

    const fs::path dir = artifact_dir(out, "catalog-report");
    std::ostringstream csv;
    write_summary_csv(summary, csv);
    write_text(dir / "summary.csv", csv.str());
    Json sj = to_json(summary);
    sj["config"] = config;
    write_text(dir / "summary.json", dump(sj));
    for (const auto& r : summary.reports) {
      Json rj = to_json(r);
      rj["config"] = config;
      write_text(dir / "cases" / (r.id + ".json"), dump(rj));
    }

    for (const auto& r : summary.reports) {
      io.out << std::left << std::setw(8) << r.id << std::setw(11) << to_string(r.match)
             << "computed " << r.computed.to_string();
      if (r.expected && r.match != Match::exact) io.out << "  expected " << r.expected->to_string();
      if (r.suspect) io.out << "  [suspect]";
      io.out << '\n';
    }
    const int n = static_cast<int>(summary.reports.size());
    io.out << "exact " << summary.exact << '/' << n << ", count-only " << summary.count_only
           << ", mismatch " << summary.mismatch << "; totals correct " << summary.total_correct
           << '/' << n << "\nwrote " << dir.string() << '\n';
    const bool pass = all ? summary.exact >= min_exact : summary.exact == n;
    return pass ? kExitOk : kExitMismatch;
  }
};

struct HopfCmd {
  double gain = 3.0;
  double lo = 0.0;
  double hi = std::numbers::pi;
  double tol = 1e-9;
  bool no_confirm = false;
  std::string out;

  void add(CLI::App& app) {
    app.add_option("--gain", gain, "Uh = gain * rotation(alpha)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--lo", lo, "alpha range start")->capture_default_str();
    app.add_option("--hi", hi, "alpha range end")->capture_default_str();
    app.add_option("--tol", tol, "bisection tolerance on alpha")->capture_default_str();
    app.add_flag("--no-confirm", no_confirm, "skip the limit-cycle confirmation");
    app.add_option("--out", out, "JSON path");
    app.add_option("--format", format_)->check(CLI::IsMember({"json"}));
  }

  int run(Io& io) {
    const auto res = hopf_sweep(gain, lo, hi, tol, !no_confirm);
    Json config = base_config("hopf-sweep");
    config["gain"] = gain;
    config["alpha_range"] = {lo, hi};
    config["tol"] = tol;
    config["confirm_cycle"] = !no_confirm;
    if (!no_confirm) config["cycle_config"] = to_json(limit_cycle_config());

    // Linearization at the origin: Re(lambda) = -1/2 + (gain/4) cos(alpha).
    Json analytic = 2.0 / gain <= 1.0 ? Json(std::acos(2.0 / gain)) : Json(nullptr);
    Json j{{"config", config}, {"alpha_analytic", analytic}};
    j["result"] = res ? to_json(*res) : Json(nullptr);

    std::string summary;
    if (res) {
      summary = "alpha* = " + fmt(res->alpha_star);
      if (!analytic.is_null()) summary += " (linearization " + fmt(analytic.get<double>()) + ")";
      if (!no_confirm)
        summary += res->cycle ? ", limit cycle period " + fmt(res->cycle->period, 6)
                              : ", no limit cycle confirmed";
    } else {
      summary = "no Hopf crossing for gain " + fmt(gain) + " on [" + fmt(lo) + ", " + fmt(hi) +
                "]: max Re(lambda) at the origin never changes sign";
    }
    io.emit(artifact_path(out, "hopf_sweep.json"), dump(j), summary);
    return kExitOk;
  }

 private:
  std::string format_ = "json";
};

struct HomoclinicCmd {
  ParamsInput params;
  FixedPointFlags fp;
  HomoclinicOptions opts;
  std::string out;
  std::string format = "json";

  void add(CLI::App& app) {
    params.add_options(app);
    fp.add(app);
    app.add_option("--scan-grid", opts.grid_n, "scan points per axis")->capture_default_str();
    app.add_option("--horizon", opts.horizon, "integration time each way")->capture_default_str();
    app.add_option("--dt", opts.dt)->capture_default_str();
    app.add_option("--out", out, "output path");
    app.add_option("--format", format)->check(CLI::IsMember({"json", "svg"}))->capture_default_str();
  }

  int run(Io& io) {
    const GruParams p = params.resolve();
    opts.fixed_points = fp.options();
    opts.region = opts.fixed_points.region;
    HomoclinicScan scan = homoclinic_scan(p, opts);

    Json config = base_config("homoclinic");
    config["params_source"] = params.describe();
    config["options"] = to_json(opts);

    std::ostringstream sm;
    sm << scan.regions << " homoclinic region" << (scan.regions == 1 ? "" : "s");
    if (!scan.region_sizes.empty()) {
      sm << " (sizes";
      for (int s : scan.region_sizes) sm << ' ' << s;
      sm << ')';
    }
    std::string artifact;
    if (format == "json") {
      artifact = dump(Json{{"config", config}, {"params", to_json(p)}, {"scan", to_json(scan)}});
    } else {
      PortraitSpec spec;
      spec.region = opts.region;
      spec.fixed_points = opts.fixed_points;
      spec.homoclinic = std::move(scan);
      artifact = render_portrait(p, spec, config);
    }
    io.emit(artifact_path(out, "homoclinic." + format), artifact, sm.str());
    return kExitOk;
  }
};

struct Scan1dCmd {
  ParamsInput params;
  Roots1DOptions ropts;
  std::optional<double> from, to;
  int steps = 200;
  std::string out;
  std::string format = "json";

  void add(CLI::App& app) {
    params.add_options(app);
    app.add_option("--grid", ropts.grid_n, "root bracketing samples")->capture_default_str();
    app.add_option("--tol", ropts.zero_tol, "slope tolerance for half-stability")
        ->capture_default_str();
    app.add_option("--from", from, "bh sweep start");
    app.add_option("--to", to, "bh sweep end");
    app.add_option("--steps", steps, "sweep samples")->capture_default_str();
    app.add_option("--out", out, "output path");
    app.add_option("--format", format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  }

  int run(Io& io) {
    if (from.has_value() != to.has_value())
      throw CLI::ValidationError("scan-1d", "--from and --to go together");
    const GruParams p = params.resolve(1);
    const auto roots = find_roots_1d(p, ropts);
    std::vector<SaddleNodeTransition> trans;
    if (from) trans = scan_saddle_node_1d(p, *from, *to, steps, ropts);

    Json config = base_config("scan-1d");
    config["params_source"] = params.describe();
    config["options"] = to_json(ropts);
    if (from) config["sweep"] = {{"from", *from}, {"to", *to}, {"steps", steps}, {"bh_tol", 1e-6}};

    std::ostringstream sm;
    sm << roots.size() << " root" << (roots.size() == 1 ? "" : "s") << " at bh = " << p.bh[0];
    if (from) sm << "; " << trans.size() << " transition" << (trans.size() == 1 ? "" : "s");
    for (const auto& t : trans)
      sm << "\n  bh* = " << fmt(t.bh) << ": " << t.count_before << " -> " << t.count_after;

    std::string artifact;
    if (format == "json") {
      Json rj = Json::array();
      for (const auto& r : roots) rj.push_back(to_json(r));
      Json tj = Json::array();
      for (const auto& t : trans) tj.push_back(to_json(t));
      artifact = dump(
          Json{{"config", config}, {"params", to_json(p)}, {"roots", rj}, {"transitions", tj}});
    } else {
      config["params"] = to_json(p);
      std::ostringstream os;
      os << csv_config_line(config) << std::setprecision(17);
      if (from) {
        os << "bh,count_before,count_after\n";
        for (const auto& t : trans)
          os << t.bh << ',' << t.count_before << ',' << t.count_after << '\n';
      } else {
        os << "location,boundary_margin,slope,class,tangency\n";
        for (const auto& r : roots)
          os << r.location << ',' << r.boundary_margin << ',' << r.slope << ','
             << to_string(r.stability) << ',' << (r.tangency ? 1 : 0) << '\n';
      }
      artifact = os.str();
    }
    io.emit(artifact_path(out, "scan_1d." + format), artifact, sm.str());
    return kExitOk;
  }
};

struct TrainFlags {
  std::string task;
  int d = 2;
  std::optional<int> epochs, n_traj;
  int T = 29;
  double lr = AdamConfig{}.lr;
  std::uint64_t seed = 1;
  std::uint64_t data_seed = 100;
  std::optional<double> noise_var;
  bool full_scale = false;
  double init_std = 0.1;

  void add(CLI::App& app, bool need_task) {
    auto* t = app.add_option("--task", task, "fhn, line, ring or twoseq")
                  ->check(CLI::IsMember({"fhn", "line", "ring", "twoseq"}));
    if (need_task) t->required();
    app.add_option("--epochs", epochs, "training epochs (default 2000, full scale 4000)");
    app.add_option("--n-traj", n_traj, "training sequences (default 200, full scale 667)");
    app.add_option("--T", T, "prediction horizon")->capture_default_str();
    app.add_option("--lr", lr, "Adam learning rate")->capture_default_str();
    app.add_option("--seed", seed, "weight-initialization seed")->capture_default_str();
    app.add_option("--data-seed", data_seed, "training-data seed")->capture_default_str();
    app.add_option("--noise-var", noise_var, "observation noise variance (task default if unset)");
    app.add_flag("--full-scale", full_scale, "667 sequences, 4000 epochs");
    app.add_option("--init-std", init_std)->capture_default_str();
  }

  TrainConfig config(int dim) const {
    const Task tk = task_from_string(task);
    TrainConfig c = full_scale ? TrainConfig::full_scale(tk, dim) : TrainConfig{};
    c.task = tk;
    c.d = dim;
    if (epochs) c.epochs = *epochs;
    if (n_traj) c.n_traj = *n_traj;
    c.T = T;
    c.adam.lr = lr;
    c.seed = seed;
    c.init_std = init_std;
    c.validate();
    return c;
  }

  DatasetConfig data(const TrainConfig& c) const {
    DatasetConfig dc = dataset_config_for(c, data_seed);
    if (noise_var) dc.noise_var = *noise_var;
    dc.validate();
    return dc;
  }
};

struct TrainCmd {
  TrainFlags tf;
  int test_n = 333;
  std::uint64_t test_seed = 200;
  bool analyze_model = false;
  std::string out;

  void add(CLI::App& app) {
    tf.add(app, true);
    app.add_option("--d", tf.d, "hidden dimension")->capture_default_str();
    app.add_option("--test-n", test_n, "held-out sequences (0 disables)")->capture_default_str();
    app.add_option("--test-seed", test_seed)->capture_default_str();
    app.add_flag("--analyze", analyze_model, "append fixed-point analysis of the trained model");
    app.add_option("--out", out, "output directory (default $GRUDYN_OUT_DIR or .)");
    app.add_option("--format", format_)->check(CLI::IsMember({"json"}));
  }

  int run(Io& io) {
    const TrainConfig cfg = tf.config(tf.d);
    const DatasetConfig dc = tf.data(cfg);
    const Dataset train_set = generate_dataset(dc);
    DatasetConfig tc = dc;
    tc.seed = test_seed;
    tc.n = test_n;
    std::optional<Dataset> test_set;
    if (test_n > 0) test_set = generate_dataset(tc);

    const TrainResult r = train(cfg, train_set, test_set ? &*test_set : nullptr);

    Json config = base_config("train");
    config["train"] = to_json(cfg);
    config["data"] = to_json(dc);
    config["test_data"] = test_set ? to_json(tc) : Json(nullptr);

    const fs::path dir = artifact_dir(out, ".");
    Json model = to_json(r.model);
    model["config"] = config;
    write_text(dir / "model.json", dump(model));
    std::ostringstream csv;
    write_learning_curve_csv(r.curve, csv);
    write_text(dir / "learning_curve.csv", csv.str());

    Json metrics{{"config", config}, {"curve", to_json(r.curve)}};
    metrics["curve"].erase("loss");
    metrics["initial_loss"] = r.curve.loss.front();
    metrics["loss_ratio"] = r.curve.final_train_loss / r.curve.loss.front();
    if (analyze_model) metrics["analysis"] = to_json(analyze_trained(r.model));
    write_text(dir / "metrics.json", dump(metrics));

    io.out << to_string(cfg.task) << " d=" << cfg.d << ": loss " << fmt(r.curve.loss.front(), 6)
           << " -> " << fmt(r.curve.final_train_loss, 6);
    if (r.curve.test_loss) io.out << ", test loss " << fmt(*r.curve.test_loss, 6);
    if (r.curve.test_accuracy) io.out << ", test accuracy " << fmt(*r.curve.test_accuracy, 6);
    io.out << "\nwrote " << dir.string() << '\n';
    return kExitOk;
  }

 private:
  std::string format_ = "json";
};

struct EvalCmd {
  std::string model;
  int n = 333;
  std::uint64_t seed = 200;
  int T = 29;
  std::optional<double> noise_var;
  std::string out;

  void add(CLI::App& app) {
    app.add_option("--model", model, "trained model JSON")->required();
    app.add_option("--n", n, "evaluation sequences")->capture_default_str();
    app.add_option("--seed", seed, "evaluation-data seed")->capture_default_str();
    app.add_option("--T", T, "prediction horizon")->capture_default_str();
    app.add_option("--noise-var", noise_var, "observation noise variance (task default if unset)");
    app.add_option("--out", out, "JSON path");
    app.add_option("--format", format_)->check(CLI::IsMember({"json"}));
  }

  int run(Io& io) {
    const TrainedModel m = trained_model_from_json(load_json_file(model));
    DatasetConfig dc;
    dc.task = m.task;
    dc.n = n;
    dc.seed = seed;
    dc.T = T;
    if (noise_var) dc.noise_var = *noise_var;
    dc.validate();
    const Dataset ds = generate_dataset(dc);

    Json config = base_config("eval");
    config["model"] = model;
    config["data"] = to_json(dc);
    Json j{{"config", config}, {"task", to_string(m.task)}, {"loss", task_loss(m, ds)}};
    std::string summary = to_string(m.task) + " loss " + fmt(j["loss"].get<double>(), 6);
    if (m.task == Task::twoseq) {
      j["accuracy"] = accuracy(m, ds);
      summary += ", accuracy " + fmt(j["accuracy"].get<double>(), 6);
    } else {
      j["loss_normalized"] = loss_mse_normalized(m, ds);
    }
    io.emit(artifact_path(out, "eval.json"), dump(j), summary);
    return kExitOk;
  }

 private:
  std::string format_ = "json";
};

struct DimSweepCmd {
  TrainFlags tf;
  std::string dims = "2,4,8,16";
  int seeds = 3;
  std::string out;
  std::string format = "json";

  void add(CLI::App& app) {
    tf.task = "ring";
    tf.add(app, false);
    app.add_option("--dims", dims, "hidden dimensions")->capture_default_str();
    app.add_option("--seeds", seeds, "initializations per dimension")->capture_default_str();
    app.add_option("--out", out, "output path");
    app.add_option("--format", format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  }

  int run(Io& io) {
    std::vector<int> ds;
    for (double v : parse_list(dims, "dims")) {
      if (v < 1 || v != std::floor(v)) throw ConfigError("--dims must be positive integers");
      ds.push_back(static_cast<int>(v));
    }
    if (seeds < 1) throw ConfigError("--seeds must be positive");
    const TrainConfig base = tf.config(ds.front());
    const DatasetConfig dc = tf.data(base);
    const auto sweep = dimension_sweep(base, generate_dataset(dc), ds, seeds);

    Json config = base_config("dim-sweep");
    config["train"] = to_json(base);
    config["data"] = to_json(dc);
    config["dims"] = ds;
    config["seeds"] = seeds;

    std::ostringstream sm;
    bool decreasing = true;
    for (std::size_t k = 0; k < sweep.size(); ++k) {
      sm << (k ? "\n" : "") << "d=" << sweep[k].d << " median final loss "
         << fmt(sweep[k].median, 6);
      if (k > 0 && !(sweep[k].median < sweep[k - 1].median)) decreasing = false;
    }
    sm << "\nmedian strictly decreasing: " << (decreasing ? "yes" : "no");

    std::string artifact;
    if (format == "json") {
      artifact = dump(Json{{"config", config}, {"sweep", to_json(sweep)}, {"strictly_decreasing", decreasing}});
    } else {
      std::ostringstream os;
      os << csv_config_line(config) << "d,seed,final_loss\n" << std::setprecision(17);
      for (const auto& e : sweep)
        for (std::size_t s = 0; s < e.losses.size(); ++s)
          os << e.d << ',' << base.seed + s << ',' << e.losses[s] << '\n';
      artifact = os.str();
    }
    io.emit(artifact_path(out, "dim_sweep." + format), artifact, sm.str());
    return kExitOk;
  }
};

struct AnalyzeModelCmd {
  ParamsInput params;
  FixedPointFlags fp;
  bool no_cycle = false;
  bool no_slow = false;
  std::string out;

  void add(CLI::App& app) {
    app.add_option("--model", params.file, "model or parameter JSON");
    app.add_option("--case", params.case_id, "catalog case id instead of a model");
    fp.add(app);
    app.add_flag("--no-cycle", no_cycle, "skip limit-cycle detection");
    app.add_flag("--no-slow", no_slow, "skip slow-point search");
    app.add_option("--out", out, "JSON path");
    app.add_option("--format", format_)->check(CLI::IsMember({"json"}));
  }

  int run(Io& io) {
    if (params.empty()) throw CLI::ValidationError("analyze-model", "need --model or --case");
    ReportOptions ro;
    ro.fixed_points = fp.options();
    ro.cycles = !no_cycle;
    ro.slow_points = !no_slow;
    ro.cycle_config.region = ro.fixed_points.region;
    ro.slow.region = ro.fixed_points.region;
    const AnalysisReport rep = analyze(params.resolve(), ro);

    Json config = base_config("analyze-model");
    config["params_source"] = params.describe();
    Json j = to_json(rep);
    j["config"] = config;
    std::string summary = rep.signature.to_string();
    if (rep.cycle) summary += ", limit cycle period " + fmt(rep.cycle->period, 6);
    if (!rep.slow_points.empty())
      summary += ", " + std::to_string(rep.slow_points.size()) + " slow points";
    io.emit(artifact_path(out, "analysis.json"), dump(j), summary);
    return kExitOk;
  }

 private:
  std::string format_ = "json";
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continuous-time GRU dynamics: fixed points, bifurcations, portraits, training",
               "grudyn"};
  app.set_version_flag("--version", GRUDYN_VERSION);
  app.require_subcommand(1);
  app.footer(std::string("Artifacts default to $") + kOutDirEnv +
             " when --out is not given, else standard output.\nExit status: 0 success, 1 "
             "analysis mismatch, 2 usage or input error.");

  PortraitCmd portrait;
  FixedPointsCmd fixed_points;
  CatalogVerifyCmd catalog;
  HopfCmd hopf;
  HomoclinicCmd homoclinic;
  Scan1dCmd scan1d;
  TrainCmd train_cmd;
  EvalCmd eval;
  DimSweepCmd sweep;
  AnalyzeModelCmd analyze_cmd;

  std::vector<std::pair<CLI::App*, std::function<int(Io&)>>> commands;
  auto reg = [&](const char* name, const char* desc, auto& cmd) {
    CLI::App* sub = app.add_subcommand(name, desc);
    cmd.add(*sub);
    commands.emplace_back(sub, [&cmd](Io& io) { return cmd.run(io); });
  };
  reg("portrait", "render an SVG phase portrait", portrait);
  reg("fixed-points", "find and classify fixed points", fixed_points);
  reg("catalog-verify", "check embedded catalog cases against their expected topology", catalog);
  reg("hopf-sweep", "locate the Hopf crossing of Uh = gain * rotation(alpha)", hopf);
  reg("homoclinic", "scan for homoclinic regions", homoclinic);
  reg("scan-1d", "1D roots and saddle-node transitions in bh", scan1d);
  reg("train", "train a GRU on fhn, line, ring or twoseq", train_cmd);
  reg("eval", "evaluate a trained model on fresh data", eval);
  reg("dim-sweep", "final training loss across hidden dimensions", sweep);
  reg("analyze-model", "fixed points, cycles and slow points of a model", analyze_cmd);

  if (argc <= 1) {
    err << app.help();
    return kExitUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  Io io{out, err};
  try {
    for (auto& [sub, fn] : commands)
      if (sub->parsed()) return fn(io);
  } catch (const CLI::ValidationError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace grudyn::cli

#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "rcurves/attacks.hpp"
#include "rcurves/curve.hpp"
#include "rcurves/error.hpp"
#include "rcurves/ingest.hpp"
#include "rcurves/interclass.hpp"
#include "rcurves/linear_exact.hpp"
#include "rcurves/manifest.hpp"
#include "rcurves/model_io.hpp"
#include "rcurves/parallel.hpp"
#include "rcurves/svg.hpp"
#include "rcurves/synthetic.hpp"

namespace rcurves::cli {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Common {
  std::string out_dir = "rcurves_out";
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

/// Collects outputs and writes the manifest last.
class Run {
 public:
  Run(std::string command, const Common& common) : common_(common), start_(std::chrono::steady_clock::now()) {
    manifest_.command = std::move(command);
    manifest_.set("seed", std::to_string(common.seed));
    manifest_.set("threads", std::to_string(resolve_threads(common.threads)));
  }

  RunManifest& manifest() { return manifest_; }

  std::string read_input(const std::string& path) {
    std::string bytes = read_file(path);
    manifest_.add_input(path, bytes);
    return bytes;
  }

  void write(const std::string& name, std::string_view contents) {
    fs::create_directories(common_.out_dir);
    const fs::path p = fs::path(common_.out_dir) / name;
    write_file(p, contents);
    manifest_.outputs.push_back(p.string());
  }

  void finish() {
    manifest_.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    fs::create_directories(common_.out_dir);
    write_file(fs::path(common_.out_dir) / "manifest.json", to_json(manifest_));
  }

 private:
  Common common_;
  RunManifest manifest_;
  std::chrono::steady_clock::time_point start_;
};

struct DataArgs {
  std::vector<std::string> paths;
  bool normalize = false;
  std::size_t limit = 0;
};

Dataset load_data(const DataArgs& a, Run& run, bool require_unit_range) {
  Dataset data;
  if (a.paths.size() == 2) {
    const std::string im = run.read_input(a.paths[0]);
    const std::string lb = run.read_input(a.paths[1]);
    data = load_idx({reinterpret_cast<const std::uint8_t*>(im.data()), im.size()},
                    {reinterpret_cast<const std::uint8_t*>(lb.data()), lb.size()},
                    fs::path(a.paths[0]).filename().string());
  } else {
    CsvOptions opts;
    opts.normalize = a.normalize;
    opts.require_unit_range = require_unit_range;
    opts.name = fs::path(a.paths[0]).filename().string();
    data = load_csv(run.read_input(a.paths[0]), opts);
  }
  run.manifest().set("normalize", a.normalize ? "true" : "false");
  if (a.limit > 0 && a.limit < data.size()) {
    std::vector<LabeledPoint> pts(data.points().begin(), data.points().begin() + static_cast<std::ptrdiff_t>(a.limit));
    data = Dataset::normalized(std::move(pts), data.name(), data.num_classes());
    run.manifest().set("limit", std::to_string(a.limit));
  }
  return data;
}

std::string records_csv(std::span<const PerturbationRecord> records) {
  std::string s = "index,status,distance\n";
  for (const auto& r : records) s += std::to_string(r.index) + "," + std::string(to_string(r.status)) + "," + num(r.distance) + "\n";
  return s;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out_dir, "Output directory")->capture_default_str();
  sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  sub->add_option("--threads", c.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

void add_data(CLI::App* sub, DataArgs& d) {
  sub->add_option("dataset", d.paths, "Dataset CSV, or IDX images and labels files")->required()->expected(1, 2);
  sub->add_flag("--normalize", d.normalize, "Min-max normalize CSV feature columns");
  sub->add_option("--limit", d.limit, "Use only the first N points");
}

NormKind norm_arg(const std::string& s) { return parse_norm(s); }

// ---- curve ---------------------------------------------------------------

struct CurveArgs {
  Common common;
  std::string model;
  DataArgs data;
  std::string norm = "linf";
  AttackConfig cfg;
};

int cmd_curve(CurveArgs& a, std::ostream& out) {
  Run run("curve", a.common);
  const Classifier model = load_model(run.read_input(a.model));
  const Dataset data = load_data(a.data, run, true);
  a.cfg.norm = norm_arg(a.norm);
  a.cfg.seed = a.common.seed;
  a.cfg.validate();
  auto& m = run.manifest();
  m.set("norm", std::string(to_string(a.cfg.norm)));
  m.set("eps_max", num(a.cfg.eps_max));
  m.set("bisection_steps", std::to_string(a.cfg.bisection_steps));
  m.set("pgd_steps", std::to_string(a.cfg.pgd_steps));
  m.set("pgd_rel_step", num(a.cfg.pgd_rel_step));
  m.set("random_restarts", std::to_string(a.cfg.random_restarts));
  m.set("cw_binary_search_steps", std::to_string(a.cfg.cw_binary_search_steps));
  m.set("cw_opt_steps", std::to_string(a.cfg.cw_opt_steps));
  m.set("cw_learning_rate", num(a.cfg.cw_learning_rate));
  m.set("cw_initial_const", num(a.cfg.cw_initial_const));

  const auto records = estimate_distances(model, data, a.cfg.norm, a.cfg, resolve_threads(a.common.threads));
  const auto curve = attack_curve(records, data, a.cfg.norm, a.cfg, fs::path(a.model).stem().string());
  run.write("records.csv", records_csv(records));
  run.write("curve.csv", export_curve(curve));
  const LabeledCurve lc{fs::path(a.model).stem().string(), curve};
  run.write("curve.svg", render_svg({&lc, 1}, {.title = "Robustness curve (" + std::string(to_string(a.cfg.norm)) + ")"}));
  run.finish();
  out << "points " << data.size() << ", R(0) = " << short_num(curve(0.0)) << ", R(eps_max) = "
      << short_num(curve(a.cfg.eps_max)) << ", censored mass = " << short_num(curve.censored_mass()) << "\n";
  return 0;
}

// ---- exact-curve ---------------------------------------------------------

struct ExactArgs {
  Common common;
  std::string model;
  DataArgs data;
  std::string norm = "l2";
};

int cmd_exact(ExactArgs& a, std::ostream& out) {
  Run run("exact-curve", a.common);
  const Classifier model = load_model(run.read_input(a.model));
  const Dataset data = load_data(a.data, run, false);
  const NormKind p = norm_arg(a.norm);
  run.manifest().set("norm", std::string(to_string(p)));
  const std::string name = fs::path(a.model).stem().string();

  RobustnessCurve curve;
  if (const auto* lin = model.get_if<BinaryLinear>()) {
    curve = exact_curve(*lin, data, p, name);
  } else if (const auto* th = model.get_if<Threshold1D>()) {
    if (data.dim() != 1) throw InvalidInput("threshold model needs a 1-dimensional dataset");
    std::vector<PointMass1D> masses;
    for (const auto& pt : data.points()) {
      if (pt.y > 1) throw InvalidInput("threshold model needs binary labels");
      masses.push_back({pt.x[0], pt.y, 0, 1});
    }
    // Weights are floating point here; go through build_curve directly.
    std::vector<PerturbationRecord> records;
    for (std::size_t i = 0; i < masses.size(); ++i) {
      const int pred = masses[i].location >= th->threshold() ? 1 : 0;
      PerturbationRecord r;
      r.index = i;
      r.status = pred != masses[i].label ? RecordStatus::Misclassified : RecordStatus::Found;
      r.distance = r.status == RecordStatus::Misclassified ? 0.0 : std::abs(masses[i].location - th->threshold());
      records.push_back(r);
    }
    curve = build_curve(records, data.weights(), std::numeric_limits<double>::infinity(),
                        {p, name, data.name(), Estimator::Exact});
  } else {
    throw InvalidInput("exact-curve needs a binary_linear or threshold_1d model; use `curve` for networks");
  }
  run.write("curve.csv", export_curve(curve));
  const LabeledCurve lc{name, curve};
  run.write("curve.svg", render_svg({&lc, 1}, {.title = "Exact robustness curve (" + std::string(to_string(p)) + ")"}));
  run.finish();
  out << "points " << data.size() << ", R(0) = " << short_num(curve(0.0)) << ", breakpoints "
      << curve.breakpoints().size() << "\n";
  return 0;
}

// ---- pointwise -----------------------------------------------------------

struct PointwiseArgs {
  Common common;
  std::vector<std::string> curves;
  std::vector<double> eps;
};

std::vector<LabeledCurve> load_curves(const std::vector<std::string>& paths, Run& run) {
  std::vector<LabeledCurve> out;
  for (const auto& p : paths) out.push_back({fs::path(p).stem().string(), import_curve(run.read_input(p))});
  return out;
}

int cmd_pointwise(PointwiseArgs& a, std::ostream& out) {
  Run run("pointwise", a.common);
  const auto curves = load_curves(a.curves, run);
  std::string eps_list;
  for (double e : a.eps) eps_list += (eps_list.empty() ? "" : " ") + num(e);
  run.manifest().set("eps", eps_list);

  std::string csv = "curve,epsilon,robust_error,bound\n";
  for (const auto& lc : curves)
    for (double e : a.eps) {
      const auto ev = evaluate(lc.curve, e);
      const char* q = ev.bound_quality == BoundQuality::Exact ? "exact" : "lower_bound_beyond_horizon";
      csv += lc.id + "," + num(e) + "," + num(ev.value) + "," + q + "\n";
      out << lc.id << "  eps=" << short_num(e) << "  " << short_num(ev.value)
          << (ev.bound_quality == BoundQuality::Exact ? "" : "  (lower bound, beyond horizon)") << "\n";
    }
  run.write("pointwise.csv", csv);
  run.finish();
  return 0;
}

// ---- compare -------------------------------------------------------------

struct CompareArgs {
  Common common;
  std::vector<std::string> curves;
  std::vector<double> eps;
};

int cmd_compare(CompareArgs& a, std::ostream& out, std::ostream& err) {
  Run run("compare", a.common);
  if (a.curves.size() < 2) throw InvalidInput("compare needs at least two curves");
  const auto curves = load_curves(a.curves, run);

  std::string cross = "first,second,epsilon,direction\n";
  for (std::size_t i = 0; i < curves.size(); ++i)
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      if (!comparable(curves[i].curve, curves[j].curve))
        err << "warning: " << curves[i].id << " and " << curves[j].id << " use different norms\n";
      const auto xs = intersections(curves[i].curve, curves[j].curve);
      for (const auto& c : xs) {
        cross += curves[i].id + "," + curves[j].id + "," + num(c.epsilon) + "," + std::string(to_string(c.direction)) + "\n";
        out << curves[i].id << " x " << curves[j].id << " at eps=" << short_num(c.epsilon) << " ("
            << to_string(c.direction) << ")\n";
      }
      if (xs.empty()) out << curves[i].id << " x " << curves[j].id << ": no intersections\n";
    }
  run.write("intersections.csv", cross);

  if (!a.eps.empty()) {
    std::string ranks = "epsilon,rank,curve,robust_error\n";
    for (double e : a.eps) {
      const auto r = rank_at(curves, e);
      out << "eps=" << short_num(e) << ":";
      for (std::size_t k = 0; k < r.size(); ++k) {
        ranks += num(e) + "," + std::to_string(k + 1) + "," + r[k].id + "," + num(r[k].value) + "\n";
        out << (k ? " < " : " ") << r[k].id << " (" << short_num(r[k].value) << ")";
      }
      out << "\n";
    }
    run.write("ranks.csv", ranks);
  }
  run.write("compare.svg", render_svg(curves, {.title = "Robustness curves"}));
  run.finish();
  return 0;
}

// ---- interclass ----------------------------------------------------------

struct InterclassArgs {
  Common common;
  DataArgs data;
  std::string norm = "l2";
  std::string mode = "full_flip";
  bool no_dedup = false;
  bool no_extremes = false;
};

int cmd_interclass(InterclassArgs& a, std::ostream& out) {
  Run run("interclass", a.common);
  Dataset data = load_data(a.data, run, true);
  const NormKind p = norm_arg(a.norm);
  TradeoffMode mode;
  if (a.mode == "full_flip" || a.mode == "full-flip") {
    mode = TradeoffMode::FullFlip;
  } else if (a.mode == "overlap") {
    mode = TradeoffMode::Overlap;
  } else {
    throw InvalidInput("unknown --mode '" + a.mode + "' (overlap or full_flip)");
  }
  auto& m = run.manifest();
  m.set("norm", std::string(to_string(p)));
  m.set("mode", a.mode);
  m.set("dedup", a.no_dedup ? "false" : "true");

  std::size_t removed = 0;
  if (!a.no_dedup) {
    auto d = dedup(data);
    data = std::move(d.data);
    removed = d.removed;
  }
  const unsigned threads = resolve_threads(a.common.threads);
  auto report = interclass_distances(data, p, threads, !a.no_extremes);
  report.dedup_removed = removed;
  const double threshold = mode == TradeoffMode::FullFlip ? report.smallest : report.smallest / 2.0;

  run.write("report.csv", export_report(report));
  const auto cdf = distance_distribution_curve(report);
  run.write("cdf.csv", export_curve(cdf));
  const LabeledCurve lc{"min inter-class distance", cdf};
  run.write("cdf.svg", render_svg({&lc, 1}, {.title = "Inter-class distances (" + std::string(to_string(p)) + ")",
                                             .x_label = "distance",
                                             .y_label = "fraction of points"}));
  std::string summary = "{\n  \"norm\": \"" + std::string(to_string(p)) + "\",\n  \"points\": " +
                        std::to_string(data.size()) + ",\n  \"dedup_removed\": " + std::to_string(removed) +
                        ",\n  \"smallest\": " + num(report.smallest) + ",\n  \"largest_of_minima\": " +
                        num(report.largest_of_minima);
  if (report.largest_pairwise) summary += ",\n  \"largest_pairwise\": " + num(*report.largest_pairwise);
  summary += ",\n  \"tradeoff_mode\": \"" + a.mode + "\",\n  \"tradeoff_threshold\": " + num(threshold) + "\n}\n";
  run.write("summary.json", summary);
  run.finish();

  out << "points " << data.size() << " (dedup removed " << removed << "), norm " << to_string(p) << "\n"
      << "smallest " << short_num(report.smallest) << ", largest of minima " << short_num(report.largest_of_minima);
  if (report.largest_pairwise) out << ", largest pairwise " << short_num(*report.largest_pairwise);
  out << "\ntrade-off threshold (" << a.mode << ") " << short_num(threshold) << "\n";
  return 0;
}

// ---- synth ---------------------------------------------------------------

struct SynthArgs {
  Common common;
  std::vector<double> t1;
  std::vector<double> t2;
  bool toy = false;
  bool linear2d = false;
};

std::string masses_csv(std::span<const PointMass1D> masses) {
  std::string s = "label,x1,weight\n";
  for (const auto& pm : masses)
    s += std::to_string(pm.label) + "," + num(pm.location) + "," + num(pm.weight()) + "\n";
  return s;
}

int cmd_synth(SynthArgs& a, std::ostream& out) {
  const int modes = (!a.t1.empty() || !a.t2.empty()) + a.toy + a.linear2d;
  if (modes != 1) throw InvalidInput("synth needs exactly one of --t1/--t2, --toy, --linear2d");

  if (a.toy) {
    Run run("synth --toy", a.common);
    const auto ex = toy_example();
    run.write("toy.csv", masses_csv(ex.distribution));
    run.write("blue.json", save_model(ex.blue));
    run.write("orange.json", save_model(ex.orange));
    run.write("blue_curve.csv", export_curve(ex.blue_curve));
    run.write("orange_curve.csv", export_curve(ex.orange_curve));
    const std::vector<LabeledCurve> cs{{"blue", ex.blue_curve}, {"orange", ex.orange_curve}};
    run.write("toy.svg", render_svg(cs, {.title = "Toy example"}));
    run.manifest().set("eps", num(ex.eps));
    run.finish();
    out << "eps " << short_num(ex.eps) << ": blue " << short_num(ex.blue_curve(ex.eps)) << ", orange "
        << short_num(ex.orange_curve(ex.eps)) << "; 2*eps: blue " << short_num(ex.blue_curve(2 * ex.eps))
        << ", orange " << short_num(ex.orange_curve(2 * ex.eps)) << "\n";
    return 0;
  }

  if (a.linear2d) {
    Run run("synth --linear2d", a.common);
    const auto ex = linear_2d_example();
    run.write("linear2d.csv", write_dataset_csv(ex.data));
    run.write("blue.json", save_model(ex.blue));
    run.write("orange.json", save_model(ex.orange));
    run.write("blue_l2.csv", export_curve(ex.blue_l2));
    run.write("orange_l2.csv", export_curve(ex.orange_l2));
    run.write("blue_linf.csv", export_curve(ex.blue_linf));
    run.write("orange_linf.csv", export_curve(ex.orange_linf));
    const std::vector<LabeledCurve> l2{{"blue", ex.blue_l2}, {"orange", ex.orange_l2}};
    const std::vector<LabeledCurve> linf{{"blue", ex.blue_linf}, {"orange", ex.orange_linf}};
    run.write("l2.svg", render_svg(l2, {.title = "l2 robustness curves"}));
    run.write("linf.svg", render_svg(linf, {.title = "linf robustness curves"}));
    const auto x2 = intersections(ex.blue_l2, ex.orange_l2);
    const auto xi = intersections(ex.blue_linf, ex.orange_linf);
    run.write("intersections.txt", "l2 " + std::to_string(x2.size()) + "\nlinf " + std::to_string(xi.size()) + "\n");
    run.finish();
    out << "l2 intersections " << x2.size() << ", linf intersections " << xi.size() << "\n";
    return 0;
  }

  Run run("synth", a.common);
  const ConstructionSpec spec(a.t1, a.t2);
  const auto c = construct_intersecting(spec);
  const auto rep = verify_ordering(spec, c);
  std::string t1s, t2s;
  for (double t : spec.t1()) t1s += (t1s.empty() ? "" : " ") + num(t);
  for (double t : spec.t2()) t2s += (t2s.empty() ? "" : " ") + num(t);
  run.manifest().set("t1", t1s);
  run.manifest().set("t2", t2s);

  run.write("construction.csv", masses_csv(c.distribution));
  run.write("c1.json", save_model(c.c1));
  run.write("c2.json", save_model(c.c2));
  const auto r1 = threshold_curve(c.c1, c.distribution, "c1", "construction");
  const auto r2 = threshold_curve(c.c2, c.distribution, "c2", "construction");
  run.write("c1_curve.csv", export_curve(r1));
  run.write("c2_curve.csv", export_curve(r2));
  const std::vector<LabeledCurve> cs{{"c1", r1}, {"c2", r2}};
  run.write("construction.svg", render_svg(cs, {.title = "Intersecting construction"}));

  std::ostringstream v;
  v << "holds=" << (rep.holds ? "true" : "false") << "\n"
    << "orientation=" << to_string(rep.orientation) << "\n"
    << "denominator=" << rep.denominator << "\n"
    << "set,t,R_c1,R_c2\n";
  for (const auto& ch : rep.checks)
    v << (ch.in_t1 ? "T1" : "T2") << "," << num(ch.t) << "," << ch.c1 << "/" << rep.denominator << "," << ch.c2
      << "/" << rep.denominator << "\n";
  run.write("verification.txt", v.str());
  run.finish();
  out << v.str();
  return 0;
}

// ---- oracle --------------------------------------------------------------

struct OracleArgs {
  Common common;
  std::string model;
  std::vector<double> x;
  int y = 0;
  std::string norm = "l2";
  double resolution = 1e-3;
};

int cmd_oracle(OracleArgs& a, std::ostream& out) {
  Run run("oracle", a.common);
  const Classifier model = load_model(run.read_input(a.model));
  const NormKind p = norm_arg(a.norm);
  if (!(a.resolution > 0.0)) throw InvalidInput("--resolution must be positive");
  const double d = brute_force_minimal(model, a.x, a.y, p, a.resolution);
  std::string xs;
  for (double v : a.x) xs += (xs.empty() ? "" : " ") + num(v);
  auto& m = run.manifest();
  m.set("norm", std::string(to_string(p)));
  m.set("resolution", num(a.resolution));
  m.set("x", xs);
  m.set("y", std::to_string(a.y));
  std::string res = "{\n  \"distance\": " + (std::isfinite(d) ? num(d) : std::string("null")) + "\n}\n";
  run.write("oracle.json", res);
  run.finish();
  out << "distance " << (std::isfinite(d) ? short_num(d) : std::string("inf (no adversarial on the grid)")) << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robustness curves, inter-class distances and synthetic constructions", "rcurves"};
  app.require_subcommand(1);

  CurveArgs curve;
  auto* s_curve = app.add_subcommand("curve", "Attack-estimated robustness curve of a model on a dataset");
  s_curve->add_option("model", curve.model, "Model JSON")->required();
  add_data(s_curve, curve.data);
  s_curve->add_option("--norm", curve.norm, "l2 or linf")->capture_default_str();
  s_curve->add_option("--eps-max", curve.cfg.eps_max, "Search ceiling and curve horizon")->capture_default_str();
  s_curve->add_option("--bisection-steps", curve.cfg.bisection_steps)->capture_default_str();
  s_curve->add_option("--pgd-steps", curve.cfg.pgd_steps)->capture_default_str();
  s_curve->add_option("--pgd-rel-step", curve.cfg.pgd_rel_step, "PGD step as a fraction of eps")->capture_default_str();
  s_curve->add_option("--restarts", curve.cfg.random_restarts)->capture_default_str();
  s_curve->add_option("--cw-search-steps", curve.cfg.cw_binary_search_steps)->capture_default_str();
  s_curve->add_option("--cw-steps", curve.cfg.cw_opt_steps)->capture_default_str();
  s_curve->add_option("--cw-lr", curve.cfg.cw_learning_rate)->capture_default_str();
  s_curve->add_option("--cw-const", curve.cfg.cw_initial_const)->capture_default_str();
  add_common(s_curve, curve.common);

  ExactArgs exact;
  auto* s_exact = app.add_subcommand("exact-curve", "Exact curve of a binary linear or threshold model");
  s_exact->add_option("model", exact.model, "Model JSON")->required();
  add_data(s_exact, exact.data);
  s_exact->add_option("--norm", exact.norm, "l1, l2 or linf")->capture_default_str();
  add_common(s_exact, exact.common);

  PointwiseArgs pw;
  auto* s_pw = app.add_subcommand("pointwise", "Evaluate curves at given thresholds");
  s_pw->add_option("curves", pw.curves, "Curve CSV files")->required();
  s_pw->add_option("--eps", pw.eps, "Thresholds")->required();
  add_common(s_pw, pw.common);

  CompareArgs cmp;
  auto* s_cmp = app.add_subcommand("compare", "Intersections and rankings of two or more curves");
  s_cmp->add_option("curves", cmp.curves, "Curve CSV files")->required();
  s_cmp->add_option("--eps", cmp.eps, "Thresholds for the rank table");
  add_common(s_cmp, cmp.common);

  InterclassArgs ic;
  auto* s_ic = app.add_subcommand("interclass", "Inter-class distance report");
  add_data(s_ic, ic.data);
  s_ic->add_option("--norm", ic.norm, "l1, l2 or linf")->capture_default_str();
  s_ic->add_option("--mode", ic.mode, "Trade-off mode: overlap or full_flip")->capture_default_str();
  s_ic->add_flag("--no-dedup", ic.no_dedup, "Skip duplicate and corrupted point removal");
  s_ic->add_flag("--no-extremes", ic.no_extremes, "Skip the largest pairwise distance scan");
  add_common(s_ic, ic.common);

  SynthArgs syn;
  auto* s_syn = app.add_subcommand("synth", "Synthetic constructions and fixtures");
  s_syn->add_option("--t1", syn.t1, "Thresholds T1");
  s_syn->add_option("--t2", syn.t2, "Thresholds T2");
  s_syn->add_flag("--toy", syn.toy, "Two-threshold toy fixture");
  s_syn->add_flag("--linear2d", syn.linear2d, "2-D linear fixture with norm-dependent intersections");
  add_common(s_syn, syn.common);

  OracleArgs orc;
  auto* s_orc = app.add_subcommand("oracle", "Brute-force minimal perturbation for a model of dimension <= 3");
  s_orc->add_option("model", orc.model, "Model JSON")->required();
  s_orc->add_option("--x", orc.x, "Point coordinates")->required();
  s_orc->add_option("--y", orc.y, "Label")->required();
  s_orc->add_option("--norm", orc.norm, "l1, l2 or linf")->capture_default_str();
  s_orc->add_option("--resolution", orc.resolution, "Grid step")->capture_default_str();
  add_common(s_orc, orc.common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (s_curve->parsed()) return cmd_curve(curve, out);
    if (s_exact->parsed()) return cmd_exact(exact, out);
    if (s_pw->parsed()) return cmd_pointwise(pw, out);
    if (s_cmp->parsed()) return cmd_compare(cmp, out, err);
    if (s_ic->parsed()) return cmd_interclass(ic, out);
    if (s_syn->parsed()) return cmd_synth(syn, out);
    if (s_orc->parsed()) return cmd_oracle(orc, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace rcurves::cli

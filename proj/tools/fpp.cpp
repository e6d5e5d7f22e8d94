// fpp: command line front end for the Bernoulli first-passage percolation tools.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "fpp/ball.hpp"
#include "fpp/experiment.hpp"
#include "fpp/geodesic.hpp"
#include "fpp/io.hpp"
#include "fpp/mean_ball.hpp"
#include "fpp/region.hpp"
#include "fpp/russo.hpp"
#include "fpp/shape.hpp"
#include "fpp/stats.hpp"

namespace fs = std::filesystem;
using fpp::json;

namespace {

constexpr int kExitSpec = 2;
constexpr int kExitCompute = 3;

// ball.csv.gz -> ball.json
fs::path sidecar_path(const fs::path& out) {
  std::string s = out.string();
  for (const char* ext : {".csv.gz", ".csv", ".gz"}) {
    const std::string e = ext;
    if (s.size() > e.size() && s.ends_with(e)) return s.substr(0, s.size() - e.size()) + ".json";
  }
  return s + ".json";
}

void emit(const json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    fpp::write_json(out, j);
  }
}

std::optional<double> opt_pc(double v) { return v > 0 ? std::optional<double>(v) : std::nullopt; }

struct Common {
  int d = 2;
  double p = 0.25;
  double p_c = 0;  // 0 means the built-in threshold
  int workers = 1;
};

void add_model(CLI::App* app, Common& c) {
  app->add_option("--d", c.d, "Dimension")->check(CLI::Range(2, fpp::kMaxDim));
  app->add_option("--p", c.p, "Probability of a zero-time edge")->check(CLI::Range(0.0, 1.0));
  app->add_option("--p-c", c.p_c, "Override of the critical probability");
  app->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
}

fpp::Region make_region(int d, const std::string& kind, std::int32_t t, double scale, const std::string& shape_file) {
  const auto r = static_cast<std::int32_t>(std::lround(scale * t));
  if (kind == "diamond") return fpp::Region::diamond(d, r);
  if (kind == "box") {
    fpp::Vertex lo{}, hi{};
    for (int a = 0; a < d; ++a) {
      lo[a] = -r;
      hi[a] = r;
    }
    return fpp::Region::axis_box(d, lo, hi);
  }
  if (shape_file.empty()) throw fpp::InvalidArgument("--shape-file is required for a shape region");
  const auto shape = fpp::shape_from_json(fpp::read_json(shape_file));
  if (shape.d != d) throw fpp::InvalidArgument("shape file dimension does not match --d");
  return fpp::Region::scaled_shape(shape.polytope, scale * t);
}

fpp::Series series_from_csv(const fs::path& path, const std::string& name) {
  std::istringstream in(fpp::read_maybe_gz(path));
  std::string line;
  if (!std::getline(in, line)) throw fpp::InvalidArgument(path.string() + ": empty file");
  fpp::Series s;
  s.name = name.empty() ? path.stem().string() : name;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b, c;
    std::getline(row, a, ',');
    std::getline(row, b, ',');
    std::getline(row, c, ',');
    try {
      s.t.push_back(std::stod(a));
      s.mean.push_back(std::stod(b));
      s.se.push_back(c.empty() ? 0.0 : std::stod(c));
    } catch (const std::exception&) {
      throw fpp::InvalidArgument(path.string() + ": bad row '" + line + "'");
    }
  }
  return s;
}

fpp::Series series_from_aggregate(const fs::path& path, const std::string& name) {
  const json agg = fpp::read_json(path);
  if (!agg.contains("series") || !agg["series"].contains(name)) {
    throw fpp::InvalidArgument(path.string() + ": no series '" + name + "'");
  }
  const json& j = agg["series"][name];
  fpp::Series s;
  s.name = name;
  for (const auto& x : j["t"]) s.t.push_back(x.get<double>());
  for (const auto& x : j["mean"]) s.mean.push_back(x.is_null() ? NAN : x.get<double>());
  for (const auto& x : j["stderr"]) s.se.push_back(x.is_null() ? 0.0 : x.get<double>());
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bernoulli first-passage percolation: balls, routes, shapes and sweeps"};
  app.require_subcommand(1);

  // grow
  Common g;
  std::int32_t g_t = 100;
  std::uint64_t g_seed = 1;
  std::string g_out;
  auto* grow = app.add_subcommand("grow", "Grow the wet ball B'(t) for one seed");
  add_model(grow, g);
  grow->add_option("--t", g_t, "Time")->check(CLI::NonNegativeNumber);
  grow->add_option("--seed", g_seed, "Seed");
  grow->add_option("--out", g_out, "Output CSV (.csv or .csv.gz); a .json sidecar goes next to it")->required();

  // shape
  fpp::ShapeOptions so;
  double so_pc = 0;
  std::string so_out;
  auto* shape = app.add_subcommand("shape", "Estimate the limit shape polytope");
  shape->add_option("--d", so.d)->check(CLI::Range(2, 3));
  shape->add_option("--p", so.p)->check(CLI::Range(0.0, 1.0));
  shape->add_option("--p-c", so_pc);
  shape->add_option("--n-dirs", so.n_dirs)->check(CLI::PositiveNumber);
  shape->add_option("--n-max", so.n_max)->check(CLI::PositiveNumber);
  shape->add_option("--reps", so.reps)->check(CLI::PositiveNumber);
  shape->add_option("--seed-base", so.seed_base);
  shape->add_option("--workers", so.workers)->check(CLI::PositiveNumber);
  shape->add_option("--out", so_out, "Output JSON (stdout if omitted)");

  // meanball
  fpp::MeanBallOptions mo;
  double mo_pc = 0;
  std::string mo_out, mo_shape;
  auto* meanball = app.add_subcommand("meanball", "Empirical mean set G(t)");
  meanball->add_option("--d", mo.d)->check(CLI::Range(2, fpp::kMaxDim));
  meanball->add_option("--p", mo.p)->check(CLI::Range(0.0, 1.0));
  meanball->add_option("--p-c", mo_pc);
  meanball->add_option("--t", mo.t)->check(CLI::NonNegativeNumber);
  meanball->add_option("--reps", mo.reps)->check(CLI::PositiveNumber);
  meanball->add_option("--seed-base", mo.seed_base);
  meanball->add_option("--cap-factor", mo.cap_factor);
  meanball->add_option("--cap-extra", mo.cap_extra);
  meanball->add_option("--workers", mo.workers)->check(CLI::PositiveNumber);
  meanball->add_option("--shape-file", mo_shape, "Shape JSON for the containment check");
  meanball->add_option("--out", mo_out, "Output CSV (.csv or .csv.gz)")->required();

  // routes
  Common r;
  std::int32_t r_t = 50;
  std::uint64_t r_seed = 1;
  std::string r_region = "diamond", r_shape, r_out;
  double r_scale = 1.0;
  std::vector<int> r_k{4, 8, 16};
  auto* routes = app.add_subcommand("routes", "Route union of Gamma' for one seed");
  add_model(routes, r);
  routes->add_option("--t", r_t, "Region size parameter")->check(CLI::PositiveNumber);
  routes->add_option("--seed", r_seed);
  routes->add_option("--region", r_region)->check(CLI::IsMember({"diamond", "box", "shape"}));
  routes->add_option("--scale", r_scale)->check(CLI::PositiveNumber);
  routes->add_option("--shape-file", r_shape);
  routes->add_option("--k", r_k, "Bad-cube side lengths");
  routes->add_option("--out", r_out, "Route edge CSV; the summary goes to the .json sidecar")->required();

  // russo
  Common ru;
  ru.p = 0.3;
  double ru_h = 0.02;
  std::int32_t ru_t = 100;
  int ru_reps = 2000;
  std::uint64_t ru_seed = 1;
  bool ru_raw = false;
  std::string ru_out;
  auto* russo = app.add_subcommand("russo", "Coupled finite-difference check of -dE T/dp = E K");
  russo->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  add_model(russo, ru);
  russo->add_option("--h", ru_h)->check(CLI::PositiveNumber);
  russo->add_option("--t", ru_t, "Diamond radius")->check(CLI::PositiveNumber);
  russo->add_option("--reps", ru_reps)->check(CLI::PositiveNumber);
  russo->add_option("--seed-base", ru_seed);
  russo->add_flag("--raw", ru_raw, "Include per-replicate deltas and K");
  russo->add_option("--out", ru_out, "Output JSON (stdout if omitted)");

  // sweep
  std::string sw_spec;
  int sw_workers = 0;
  auto* sweep = app.add_subcommand("sweep", "Run an experiment spec");
  sweep->add_option("spec", sw_spec, "Spec JSON")->required();
  sweep->add_option("--workers", sw_workers, "Override the spec's worker count")->check(CLI::PositiveNumber);

  // fit
  std::string f_agg, f_csv, f_series, f_model = "power", f_out;
  double f_conf = 0.95;
  auto* fit = app.add_subcommand("fit", "Weighted scaling fit of a (t, mean, stderr) series");
  auto* agg_opt = fit->add_option("--aggregate", f_agg, "aggregate.json from a sweep");
  fit->add_option("--csv", f_csv, "CSV with columns t,mean,stderr")->excludes(agg_opt);
  fit->add_option("--series", f_series, "Series name in the aggregate");
  fit->add_option("--model", f_model)->check(CLI::IsMember({"log", "power", "linear"}));
  fit->add_option("--confidence", f_conf)->check(CLI::Range(0.5, 0.999999));
  fit->add_option("--out", f_out, "Output JSON (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitSpec;
  }

  try {
    if (grow->parsed()) {
      const fpp::Configuration cfg(g.d, g.p, g_seed, fpp::Box::centered(g.d, 1));
      cfg.require_subcritical(opt_pc(g.p_c));
      const fpp::Ball ball = fpp::grow_ball_auto(cfg, g_t);
      fpp::write_ball_csv(g_out, ball);
      fpp::write_json(sidecar_path(g_out), fpp::ball_sidecar(ball, cfg.with_box(ball.box())));
    } else if (shape->parsed()) {
      so.p_c_override = opt_pc(so_pc);
      emit(fpp::to_json(fpp::estimate_shape(so)), so_out);
    } else if (meanball->parsed()) {
      fpp::Configuration(mo.d, mo.p, mo.seed_base, fpp::Box::centered(mo.d, 1)).require_subcritical(opt_pc(mo_pc));
      const fpp::MeanBall mb = fpp::empirical_mean_ball(mo);
      fpp::write_mean_ball_csv(mo_out, mb);
      json summary = fpp::mean_ball_summary(mb);
      if (!mo_shape.empty()) {
        const auto s = fpp::shape_from_json(fpp::read_json(mo_shape));
        summary["shape_containment"] = fpp::shape_containment(mb, s.polytope);
        summary["mean_set_in_shape"] = fpp::mean_set_in_shape(mb, s.polytope);
      }
      fpp::write_json(sidecar_path(mo_out), summary);
    } else if (routes->parsed()) {
      const fpp::Region region = make_region(r.d, r_region, r_t, r_scale, r_shape);
      const fpp::Configuration cfg(r.d, r.p, r_seed, region.box());
      cfg.require_subcritical(opt_pc(r.p_c));
      const fpp::GeodesicField f = fpp::geodesic_field(cfg, region);
      std::vector<fpp::BadCubeReport> cubes;
      for (int k : r_k) {
        if (k < 1) throw fpp::InvalidArgument("--k values must be >= 1");
        cubes.push_back(fpp::bad_cube_count(f, k));
      }
      fpp::write_route_csv(r_out, f);
      json summary = fpp::route_summary(f, cubes);
      summary["config"] = fpp::config_json(cfg);
      summary["region"] = region.description();
      fpp::write_json(sidecar_path(r_out), summary);
    } else if (russo->parsed()) {
      if (!(ru_h <= ru.p)) throw fpp::InvalidArgument("--h must not exceed --p");
      fpp::Configuration(ru.d, ru.p, ru_seed, fpp::Box::centered(ru.d, 1)).require_subcritical(opt_pc(ru.p_c));
      const fpp::Region region = fpp::Region::diamond(ru.d, ru_t);
      const auto rep = fpp::derivative_report(ru.p, ru_h, region, ru_reps, ru_seed, ru.workers);
      json j = fpp::to_json(rep, ru_raw);
      j["t"] = ru_t;
      j["d"] = ru.d;
      j["region"] = region.description();
      emit(j, ru_out);
    } else if (sweep->parsed()) {
      const auto spec = fpp::load_spec(sw_spec);
      fpp::run_sweep(spec, sw_workers > 0 ? std::optional<int>(sw_workers) : std::nullopt);
      std::cout << "wrote " << spec.output_dir.string() << "\n";
    } else if (fit->parsed()) {
      fpp::Series s;
      if (!f_csv.empty()) {
        s = series_from_csv(f_csv, f_series);
      } else if (!f_agg.empty()) {
        if (f_series.empty()) throw fpp::InvalidArgument("--series is required with --aggregate");
        s = series_from_aggregate(f_agg, f_series);
      } else {
        throw fpp::InvalidArgument("one of --aggregate or --csv is required");
      }
      emit(fpp::to_json(fpp::fit_scaling(s, fpp::fit_model_from_string(f_model), f_conf)), f_out);
    }
  } catch (const fpp::InvalidArgument& e) {
    std::cerr << "fpp: " << e.what() << "\n";
    return kExitSpec;
  } catch (const std::exception& e) {
    std::cerr << "fpp: " << e.what() << "\n";
    return kExitCompute;
  }
  return 0;
}

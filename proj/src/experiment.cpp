#include "fpp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "fpp/ball.hpp"
#include "fpp/fluctuation.hpp"
#include "fpp/geodesic.hpp"
#include "fpp/mean_ball.hpp"
#include "fpp/parallel.hpp"
#include "fpp/region.hpp"
#include "fpp/shape.hpp"
#include "fpp/stats.hpp"

namespace fpp {

namespace {

const std::set<std::string> kRegionKinds{"diamond", "box", "shape"};
const std::set<std::string> kTargets{"shape", "meanball", "diamond", "box"};
const std::set<std::string> kFormats{"csv", "csv.gz", "json"};

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key) || obj[key].is_null()) return fallback;
  try {
    return obj[key].get<T>();
  } catch (const json::exception& e) {
    throw SpecError(std::string("field '") + key + "': " + e.what());
  }
}

void known_keys(const json& obj, const std::set<std::string>& keys, const std::string& where) {
  for (const auto& [k, v] : obj.items()) {
    if (!keys.count(k)) throw SpecError("unknown field '" + k + "' in " + where);
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::filesystem::path& p) {
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return base / p;
}

}  // namespace

ExperimentSpec parse_spec(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw SpecError("spec must be a JSON object");
  known_keys(j, {"spec_version", "model", "sweep", "region", "targets", "shape_file", "meanball", "bad_cube_k", "outputs"},
             "spec");
  ExperimentSpec s;
  if (!j.contains("spec_version")) throw SpecError("missing spec_version");
  s.spec_version = get_or<int>(j, "spec_version", 0);
  if (s.spec_version != kSpecVersion) {
    throw SpecError("unsupported spec_version " + std::to_string(s.spec_version) + " (expected " +
                    std::to_string(kSpecVersion) + ")");
  }

  if (!j.contains("model") || !j["model"].is_object()) throw SpecError("missing model object");
  const auto& m = j["model"];
  known_keys(m, {"d", "p", "p_c_override"}, "model");
  s.d = get_or<int>(m, "d", 2);
  if (s.d < 2 || s.d > kMaxDim) throw SpecError("model.d must be in [2, " + std::to_string(kMaxDim) + "]");
  if (!m.contains("p")) throw SpecError("missing model.p");
  s.p = get_or<double>(m, "p", 0);
  if (m.contains("p_c_override") && !m["p_c_override"].is_null()) s.p_c_override = get_or<double>(m, "p_c_override", 0);

  if (!j.contains("sweep") || !j["sweep"].is_object()) throw SpecError("missing sweep object");
  const auto& sw = j["sweep"];
  known_keys(sw, {"t", "reps", "seed_base", "workers"}, "sweep");
  s.t = get_or<std::vector<std::int32_t>>(sw, "t", {});
  if (s.t.empty()) throw SpecError("sweep.t must be a nonempty list");
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    if (s.t[i] < 1) throw SpecError("sweep.t values must be >= 1");
    if (i > 0 && s.t[i] <= s.t[i - 1]) throw SpecError("sweep.t must be strictly increasing");
  }
  s.reps = get_or<int>(sw, "reps", 1);
  if (s.reps < 1) throw SpecError("sweep.reps must be >= 1");
  s.seed_base = get_or<std::uint64_t>(sw, "seed_base", 1);
  s.workers = get_or<int>(sw, "workers", 1);
  if (s.workers < 1) throw SpecError("sweep.workers must be >= 1");

  if (j.contains("region")) {
    const auto& r = j["region"];
    known_keys(r, {"kind", "scale"}, "region");
    s.region_kind = get_or<std::string>(r, "kind", "diamond");
    s.region_scale = get_or<double>(r, "scale", 1.0);
  }
  if (!kRegionKinds.count(s.region_kind)) throw SpecError("region.kind must be diamond, box or shape");
  if (!(s.region_scale > 0)) throw SpecError("region.scale must be > 0");

  s.targets = get_or<std::vector<std::string>>(j, "targets", s.targets);
  if (s.targets.empty()) throw SpecError("targets must be nonempty");
  for (const auto& t : s.targets) {
    if (!kTargets.count(t)) throw SpecError("unknown target '" + t + "'");
  }
  if (std::set<std::string>(s.targets.begin(), s.targets.end()).size() != s.targets.size()) {
    throw SpecError("targets contain duplicates");
  }
  s.shape_file = resolve(base_dir, get_or<std::string>(j, "shape_file", ""));
  const bool needs_shape = s.region_kind == "shape" ||
                           std::find(s.targets.begin(), s.targets.end(), "shape") != s.targets.end();
  if (needs_shape && s.shape_file.empty()) throw SpecError("shape_file is required for shape regions or targets");

  if (j.contains("meanball")) {
    const auto& mb = j["meanball"];
    known_keys(mb, {"reps", "seed_base", "cap_factor", "cap_extra"}, "meanball");
    s.meanball_reps = get_or<int>(mb, "reps", s.meanball_reps);
    s.meanball_seed_base = get_or<std::uint64_t>(mb, "seed_base", s.meanball_seed_base);
    s.meanball_cap_factor = get_or<double>(mb, "cap_factor", s.meanball_cap_factor);
    s.meanball_cap_extra = get_or<std::int32_t>(mb, "cap_extra", s.meanball_cap_extra);
  }
  if (s.meanball_reps < 1) throw SpecError("meanball.reps must be >= 1");
  if (!(s.meanball_cap_factor >= 1.0) || s.meanball_cap_extra < 0) {
    throw SpecError("meanball.cap_factor must be >= 1 and cap_extra >= 0");
  }

  s.bad_cube_k = get_or<std::vector<int>>(j, "bad_cube_k", s.bad_cube_k);
  for (int k : s.bad_cube_k) {
    if (k < 1) throw SpecError("bad_cube_k values must be >= 1");
  }

  if (j.contains("outputs")) {
    const auto& o = j["outputs"];
    known_keys(o, {"directory", "formats"}, "outputs");
    s.output_dir = get_or<std::string>(o, "directory", s.output_dir.string());
    s.formats = get_or<std::vector<std::string>>(o, "formats", s.formats);
  }
  s.output_dir = resolve(base_dir, s.output_dir);
  for (const auto& f : s.formats) {
    if (!kFormats.count(f)) throw SpecError("unknown output format '" + f + "'");
  }

  const Configuration probe(s.d, s.p, s.seed_base, Box::centered(s.d, 1));
  try {
    probe.require_subcritical(s.p_c_override);
  } catch (const InvalidArgument& e) {
    throw SpecError(e.what());
  }
  return s;
}

ExperimentSpec load_spec(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw SpecError(path.string() + ": " + e.what());
  } catch (const IoError& e) {
    throw SpecError(e.what());
  }
  return parse_spec(j, path.parent_path());
}

json spec_to_json(const ExperimentSpec& s) {
  json model = {{"d", s.d}, {"p", s.p}};
  model["p_c_override"] = s.p_c_override ? json(*s.p_c_override) : json(nullptr);
  return {{"spec_version", s.spec_version},
          {"model", model},
          {"sweep", {{"t", s.t}, {"reps", s.reps}, {"seed_base", s.seed_base}}},
          {"region", {{"kind", s.region_kind}, {"scale", s.region_scale}}},
          {"targets", s.targets},
          {"shape_file", s.shape_file.filename().string()},
          {"meanball",
           {{"reps", s.meanball_reps},
            {"seed_base", s.meanball_seed_base},
            {"cap_factor", s.meanball_cap_factor},
            {"cap_extra", s.meanball_cap_extra}}},
          {"bad_cube_k", s.bad_cube_k},
          {"formats", s.formats}};
}

namespace {

struct Row {
  std::int32_t t = 0;
  std::uint64_t seed = 0;
  std::size_t ball_size = 0;
  GeodesicField field;  // trimmed after use
  std::int64_t total = 0, K = 0, n_min = 0, n_max = 0;
  bool n_max_exact = true;
  std::size_t R = 0, route_edges = 0;
  std::vector<BadCubeReport> cubes;
  std::map<std::string, FluctuationReport> fluct;
};

std::int32_t scaled(double scale, std::int32_t t) { return static_cast<std::int32_t>(std::lround(scale * t)); }

Region route_region(const ExperimentSpec& s, const ConvexPolytope* shape, std::int32_t t) {
  if (s.region_kind == "diamond") return Region::diamond(s.d, scaled(s.region_scale, t));
  if (s.region_kind == "box") {
    Vertex lo{}, hi{};
    for (int a = 0; a < s.d; ++a) {
      lo[a] = -scaled(s.region_scale, t);
      hi[a] = scaled(s.region_scale, t);
    }
    return Region::axis_box(s.d, lo, hi);
  }
  return Region::scaled_shape(*shape, s.region_scale * t);
}

std::string cell(const Row& r, const std::string& target, bool want) {
  if (!want) return "";
  return format_double(r.fluct.at(target).F);
}

json series_json(const std::vector<std::int32_t>& ts, const std::vector<std::vector<double>>& raw) {
  json j = {{"t", ts}, {"mean", json::array()}, {"stderr", json::array()}, {"raw", raw}};
  for (const auto& xs : raw) {
    const Moments m = moments(xs);
    j["mean"].push_back(number_or_null(m.mean));
    j["stderr"].push_back(number_or_null(m.se));
  }
  return j;
}

json fit_or_error(const std::string& name, const json& series, FitModel model) {
  Series s;
  s.name = name;
  for (const auto& t : series["t"]) s.t.push_back(t.get<double>());
  for (const auto& m : series["mean"]) s.mean.push_back(m.is_null() ? NAN : m.get<double>());
  for (const auto& e : series["stderr"]) s.se.push_back(e.is_null() ? 0.0 : e.get<double>());
  try {
    return to_json(fit_scaling(s, model));
  } catch (const Error& e) {
    return {{"series", name}, {"model", to_string(model)}, {"error", e.what()}};
  }
}

}  // namespace

json run_sweep(const ExperimentSpec& spec, std::optional<int> workers_override) {
  const int workers = workers_override.value_or(spec.workers);
  auto has = [&](const char* t) { return std::find(spec.targets.begin(), spec.targets.end(), t) != spec.targets.end(); };

  std::optional<ShapeEstimate> shape;
  if (!spec.shape_file.empty() && (spec.region_kind == "shape" || has("shape"))) {
    shape = shape_from_json(read_json(spec.shape_file));
    if (shape->d != spec.d) throw SpecError("shape_file dimension does not match model.d");
  }
  const ConvexPolytope* poly = shape ? &shape->polytope : nullptr;

  json per_t = json::array();
  std::vector<Row> rows(spec.t.size() * static_cast<std::size_t>(spec.reps));
  for (std::size_t ti = 0; ti < spec.t.size(); ++ti) {
    const std::int32_t t = spec.t[ti];
    const Region region = route_region(spec, poly, t);
    std::map<std::string, Region> refs;
    json info = {{"t", t}, {"region", region.description()}, {"region_size", region.size()}};
    if (poly) info["regular"] = is_regular(region, *poly, t);
    if (has("shape")) refs.emplace("shape", Region::scaled_shape(*poly, t));
    if (has("diamond")) refs.emplace("diamond", Region::diamond(spec.d, t));
    if (has("box")) {
      Vertex lo{}, hi{};
      for (int a = 0; a < spec.d; ++a) {
        lo[a] = -t;
        hi[a] = t;
      }
      refs.emplace("box", Region::axis_box(spec.d, lo, hi));
    }
    if (has("meanball")) {
      MeanBallOptions mo;
      mo.d = spec.d;
      mo.p = spec.p;
      mo.t = t;
      mo.reps = spec.meanball_reps;
      mo.seed_base = spec.meanball_seed_base;
      mo.cap_factor = spec.meanball_cap_factor;
      mo.cap_extra = spec.meanball_cap_extra;
      mo.workers = workers;
      MeanBall mb;
      try {
        mb = empirical_mean_ball(mo);
      } catch (const Error& e) {
        throw ComputeError("mean ball t=" + std::to_string(t) + ": " + e.what());
      }
      info["meanball"] = mean_ball_summary(mb);
      if (poly) {
        info["meanball"]["shape_containment"] = shape_containment(mb, *poly);
        info["meanball"]["mean_set_in_shape"] = mean_set_in_shape(mb, *poly);
      }
      refs.emplace("meanball", mb.region());
    }
    per_t.push_back(std::move(info));

    parallel_for(static_cast<std::size_t>(spec.reps), workers, [&](std::size_t r) {
      Row& row = rows[ti * static_cast<std::size_t>(spec.reps) + r];
      row.t = t;
      row.seed = spec.seed_base + r;
      try {
        const Configuration cfg(spec.d, spec.p, row.seed, region.box());
        const Ball ball = grow_ball_auto(cfg, t);
        row.ball_size = ball.size();
        const GeodesicField f = geodesic_field(cfg, region);
        row.total = f.total;
        row.K = f.pivotal_count;
        row.n_min = f.n_min;
        row.n_max = f.n_max;
        row.n_max_exact = f.n_max_exact;
        row.R = f.route_vertex_count;
        row.route_edges = f.route_edges.size();
        for (int k : spec.bad_cube_k) row.cubes.push_back(bad_cube_count(f, k));
        for (const auto& [name, ref] : refs) row.fluct.emplace(name, fluctuation(ball, ref));
      } catch (const std::exception& e) {
        throw ComputeError("t=" + std::to_string(t) + ", seed=" + std::to_string(row.seed) + ": " + e.what());
      }
    });
  }

  // Raw tables, in (t, replicate) order.
  const bool csv = std::find(spec.formats.begin(), spec.formats.end(), "csv") != spec.formats.end();
  const bool csv_gz = std::find(spec.formats.begin(), spec.formats.end(), "csv.gz") != spec.formats.end();
  const bool want_json = std::find(spec.formats.begin(), spec.formats.end(), "json") != spec.formats.end();
  const std::string& first = spec.targets.front();
  for (const char* ext : {".csv", ".csv.gz"}) {
    if ((std::string(ext) == ".csv" && !csv) || (std::string(ext) == ".csv.gz" && !csv_gz)) continue;
    {
      TextSink out(spec.output_dir / (std::string("fluctuation") + ext));
      std::string head = "t,seed,F_vs_shape,F_vs_meanball,l_in,l_out";
      if (has("diamond")) head += ",F_vs_diamond";
      if (has("box")) head += ",F_vs_box";
      out.line(head);
      for (const auto& r : rows) {
        const auto& lead = r.fluct.at(first);
        std::string line = std::to_string(r.t) + "," + std::to_string(r.seed) + "," + cell(r, "shape", has("shape")) +
                           "," + cell(r, "meanball", has("meanball")) + "," + format_double(lead.l_in) + "," +
                           format_double(lead.l_out);
        if (has("diamond")) line += "," + cell(r, "diamond", true);
        if (has("box")) line += "," + cell(r, "box", true);
        out.line(line);
      }
      out.close();
    }
    {
      TextSink out(spec.output_dir / (std::string("routes") + ext));
      std::string head = "t,seed,total,K,R,route_edges,n_min,n_max,n_max_exact,ball_size";
      for (int k : spec.bad_cube_k) head += ",occupied_k" + std::to_string(k) + ",D_k" + std::to_string(k);
      out.line(head);
      for (const auto& r : rows) {
        std::string line = std::to_string(r.t) + "," + std::to_string(r.seed) + "," + std::to_string(r.total) + "," +
                           std::to_string(r.K) + "," + std::to_string(r.R) + "," + std::to_string(r.route_edges) + "," +
                           std::to_string(r.n_min) + "," + std::to_string(r.n_max) + "," +
                           (r.n_max_exact ? "1" : "0") + "," + std::to_string(r.ball_size);
        for (const auto& c : r.cubes) line += "," + std::to_string(c.occupied) + "," + std::to_string(c.bad);
        out.line(line);
      }
      out.close();
    }
  }

  // Aggregates keep the raw per-replicate values next to the moments.
  auto collect = [&](auto&& get) {
    std::vector<std::vector<double>> raw(spec.t.size());
    for (std::size_t ti = 0; ti < spec.t.size(); ++ti) {
      for (int r = 0; r < spec.reps; ++r) raw[ti].push_back(get(rows[ti * static_cast<std::size_t>(spec.reps) + static_cast<std::size_t>(r)]));
    }
    return series_json(spec.t, raw);
  };
  json series;
  series["R"] = collect([](const Row& r) { return static_cast<double>(r.R); });
  series["K"] = collect([](const Row& r) { return static_cast<double>(r.K); });
  series["total"] = collect([](const Row& r) { return static_cast<double>(r.total); });
  series["n_min"] = collect([](const Row& r) { return static_cast<double>(r.n_min); });
  series["n_max"] = collect([](const Row& r) { return static_cast<double>(r.n_max); });
  series["ball_size"] = collect([](const Row& r) { return static_cast<double>(r.ball_size); });
  for (std::size_t c = 0; c < spec.bad_cube_k.size(); ++c) {
    series["D_k" + std::to_string(spec.bad_cube_k[c])] = collect([c](const Row& r) { return static_cast<double>(r.cubes[c].bad); });
  }
  for (const auto& name : spec.targets) {
    series["F_vs_" + name] = collect([&](const Row& r) { return r.fluct.at(name).F; });
    series["F_over_t_vs_" + name] = collect([&](const Row& r) { return r.fluct.at(name).F / r.t; });
  }
  std::int64_t inexact = 0;
  for (const auto& r : rows) inexact += r.n_max_exact ? 0 : 1;

  json fits = json::array();
  if (spec.t.size() >= 3) {
    for (const char* name : {"R", "K"}) {
      fits.push_back(fit_or_error(name, series[name], FitModel::kPower));
      fits.push_back(fit_or_error(name, series[name], FitModel::kLinear));
    }
    for (const auto& name : spec.targets) {
      fits.push_back(fit_or_error("F_vs_" + name, series["F_vs_" + name], FitModel::kLog));
      fits.push_back(fit_or_error("F_vs_" + name, series["F_vs_" + name], FitModel::kPower));
    }
  }

  json agg = {{"spec", spec_to_json(spec)},
              {"config", {{"d", spec.d}, {"p", spec.p}, {"seed_base", spec.seed_base}, {"reps", spec.reps}}},
              {"per_t", per_t},
              {"series", series},
              {"fits", fits},
              {"n_max_inexact_count", inexact}};
  if (want_json) write_json(spec.output_dir / "aggregate.json", agg);
  return agg;
}

}  // namespace fpp

// fbmhull command line: batch FBM simulation, hull-property verification, and
// staircase traces. Emits CSV data plus a JSON manifest; all numeric output
// is reproducible bit-for-bit from (config, seed) for any worker count.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "fbmhull/acceptance.hpp"
#include "fbmhull/fbm.hpp"
#include "fbmhull/hull_process.hpp"
#include "fbmhull/report.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kManifestVersion = 1;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fbmhull::VerifyParams params_from_json(const ordered_json& j) {
  fbmhull::VerifyParams p;
  try {
    if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("workers")) p.workers = j.at("workers").get<int>();
    if (j.contains("dimension")) p.base.dimension = j.at("dimension").get<int>();
    if (j.contains("hurst")) p.base.hurst = j.at("hurst").get<double>();
    if (j.contains("horizon")) p.base.horizon = j.at("horizon").get<double>();
    if (j.contains("steps")) p.base.steps = j.at("steps").get<std::size_t>();
    if (j.contains("paths")) p.base.paths = j.at("paths").get<std::size_t>();
    if (j.contains("q_matrix")) {
      p.base.q_flat.clear();
      for (const auto& row : j.at("q_matrix")) {
        for (const auto& v : row) p.base.q_flat.push_back(v.get<double>());
      }
    }
    if (!(p.base.hurst > 0.0 && p.base.hurst < 1.0)) {
      throw CliError("config: hurst must lie in (0,1)");
    }
    if (p.base.steps < 2 || (p.base.steps & (p.base.steps - 1)) != 0) {
      throw CliError("config: steps must be a power of two >= 2");
    }
    if (p.base.paths < 2) throw CliError("config: paths must be >= 2");

    const ordered_json ex = j.value("experiments", ordered_json::object());
    if (ex.contains("generator")) {
      const auto& g = ex.at("generator");
      p.generator.steps = g.value("steps", p.generator.steps);
      p.generator.paths = g.value("paths", p.generator.paths);
      if (g.contains("hursts")) p.generator.hursts = g.at("hursts").get<std::vector<double>>();
      p.generator.max_dev_se = g.value("max_dev_se", p.generator.max_dev_se);
      p.generator.ks_alpha = g.value("ks_alpha", p.generator.ks_alpha);
    }
    if (ex.contains("t1")) {
      const auto& g = ex.at("t1");
      p.t1.steps = g.value("steps", p.t1.steps);
      p.t1.paths = g.value("paths", p.t1.paths);
      if (g.contains("hursts")) p.t1.hursts = g.at("hursts").get<std::vector<double>>();
      p.t1.min_p = g.value("min_p", p.t1.min_p);
    }
    if (ex.contains("t2")) {
      const auto& g = ex.at("t2");
      p.t2.steps = g.value("steps", p.t2.steps);
      p.t2.paths = g.value("paths", p.t2.paths);
      if (g.contains("hursts")) p.t2.hursts = g.at("hursts").get<std::vector<double>>();
      p.t2.min_p = g.value("min_p", p.t2.min_p);
    }
    if (ex.contains("t3")) {
      const auto& g = ex.at("t3");
      if (g.contains("ladder_log2")) p.t3.ladder_log2 = g.at("ladder_log2").get<std::vector<unsigned>>();
      p.t3.paths = g.value("paths", p.t3.paths);
      p.t3.hurst = g.value("hurst", p.t3.hurst);
      p.t3.final_ratio = g.value("final_ratio", p.t3.final_ratio);
    }
    if (ex.contains("reversibility")) {
      const auto& g = ex.at("reversibility");
      p.reversibility.steps = g.value("steps", p.reversibility.steps);
      p.reversibility.paths = g.value("paths", p.reversibility.paths);
      p.reversibility.hurst = g.value("hurst", p.reversibility.hurst);
      p.reversibility.alpha = g.value("alpha", p.reversibility.alpha);
      p.reversibility.replicates = g.value("replicates", p.reversibility.replicates);
      p.reversibility.min_passes = g.value("min_passes", p.reversibility.min_passes);
    }
    if (ex.contains("lamperti")) {
      const auto& g = ex.at("lamperti");
      p.lamperti.steps = g.value("steps", p.lamperti.steps);
      p.lamperti.paths = g.value("paths", p.lamperti.paths);
      p.lamperti.hurst = g.value("hurst", p.lamperti.hurst);
      p.lamperti.max_dev_se = g.value("max_dev_se", p.lamperti.max_dev_se);
      if (g.contains("base_points")) {
        p.lamperti.params.base_points = g.at("base_points").get<std::vector<double>>();
      }
      if (g.contains("lags")) p.lamperti.params.lags = g.at("lags").get<std::vector<double>>();
      if (g.contains("window")) {
        const auto w = g.at("window").get<std::vector<double>>();
        if (w.size() != 3) throw CliError("config: lamperti.window must be [lo, hi, step]");
        p.lamperti.params.window_lo = w[0];
        p.lamperti.params.window_hi = w[1];
        p.lamperti.params.window_step = w[2];
      }
    }
    if (ex.contains("scaling")) {
      const auto& g = ex.at("scaling");
      p.scaling.steps = g.value("steps", p.scaling.steps);
      p.scaling.paths = g.value("paths", p.scaling.paths);
      if (g.contains("hursts")) p.scaling.hursts = g.at("hursts").get<std::vector<double>>();
      if (g.contains("t_points")) p.scaling.t_points = g.at("t_points").get<std::vector<double>>();
      p.scaling.slope_tol = g.value("slope_tol", p.scaling.slope_tol);
    }
    if (ex.contains("anchor")) {
      const auto& g = ex.at("anchor");
      p.anchor.steps = g.value("steps", p.anchor.steps);
      p.anchor.paths = g.value("paths", p.anchor.paths);
      p.anchor.area_rel_tol = g.value("area_rel_tol", p.anchor.area_rel_tol);
      p.anchor.perimeter_rel_tol = g.value("perimeter_rel_tol", p.anchor.perimeter_rel_tol);
    }
    if (ex.contains("geometry")) {
      const auto& g = ex.at("geometry");
      p.geometry.hull2_instances = g.value("hull2_instances", p.geometry.hull2_instances);
      p.geometry.hull2_max_points = g.value("hull2_max_points", p.geometry.hull2_max_points);
      p.geometry.hull3_instances = g.value("hull3_instances", p.geometry.hull3_instances);
      p.geometry.hull3_max_points = g.value("hull3_max_points", p.geometry.hull3_max_points);
      p.geometry.cover_sets_per_dim = g.value("cover_sets_per_dim", p.geometry.cover_sets_per_dim);
      p.geometry.hausdorff_triples = g.value("hausdorff_triples", p.geometry.hausdorff_triples);
    }
  } catch (const ordered_json::exception& e) {
    throw CliError(std::string("config: ") + e.what());
  }
  return p;
}

ordered_json params_to_json(const fbmhull::VerifyParams& p) {
  ordered_json j;
  j["seed"] = p.seed;
  j["workers"] = p.workers;
  j["dimension"] = p.base.dimension;
  j["hurst"] = p.base.hurst;
  j["horizon"] = p.base.horizon;
  j["steps"] = p.base.steps;
  j["paths"] = p.base.paths;
  if (!p.base.q_flat.empty()) {
    ordered_json q = ordered_json::array();
    for (int r = 0; r < p.base.dimension; ++r) {
      ordered_json row = ordered_json::array();
      for (int c = 0; c < p.base.dimension; ++c) {
        row.push_back(p.base.q_flat[static_cast<std::size_t>(r * p.base.dimension + c)]);
      }
      q.push_back(row);
    }
    j["q_matrix"] = q;
  }
  ordered_json ex;
  ex["generator"] = {{"steps", p.generator.steps},
                     {"paths", p.generator.paths},
                     {"hursts", p.generator.hursts},
                     {"max_dev_se", p.generator.max_dev_se},
                     {"ks_alpha", p.generator.ks_alpha}};
  ex["t1"] = {{"steps", p.t1.steps},
              {"paths", p.t1.paths},
              {"hursts", p.t1.hursts},
              {"min_p", p.t1.min_p}};
  ex["t2"] = {{"steps", p.t2.steps},
              {"paths", p.t2.paths},
              {"hursts", p.t2.hursts},
              {"min_p", p.t2.min_p}};
  ex["t3"] = {{"ladder_log2", p.t3.ladder_log2},
              {"paths", p.t3.paths},
              {"hurst", p.t3.hurst},
              {"final_ratio", p.t3.final_ratio}};
  ex["reversibility"] = {{"steps", p.reversibility.steps},
                         {"paths", p.reversibility.paths},
                         {"hurst", p.reversibility.hurst},
                         {"alpha", p.reversibility.alpha},
                         {"replicates", p.reversibility.replicates},
                         {"min_passes", p.reversibility.min_passes}};
  ex["lamperti"] = {{"steps", p.lamperti.steps},
                    {"paths", p.lamperti.paths},
                    {"hurst", p.lamperti.hurst},
                    {"base_points", p.lamperti.params.base_points},
                    {"lags", p.lamperti.params.lags},
                    {"window",
                     {p.lamperti.params.window_lo, p.lamperti.params.window_hi,
                      p.lamperti.params.window_step}},
                    {"max_dev_se", p.lamperti.max_dev_se}};
  ex["scaling"] = {{"steps", p.scaling.steps},
                   {"paths", p.scaling.paths},
                   {"hursts", p.scaling.hursts},
                   {"t_points", p.scaling.t_points},
                   {"slope_tol", p.scaling.slope_tol}};
  ex["anchor"] = {{"steps", p.anchor.steps},
                  {"paths", p.anchor.paths},
                  {"area_rel_tol", p.anchor.area_rel_tol},
                  {"perimeter_rel_tol", p.anchor.perimeter_rel_tol}};
  ex["geometry"] = {{"hull2_instances", p.geometry.hull2_instances},
                    {"hull2_max_points", p.geometry.hull2_max_points},
                    {"hull3_instances", p.geometry.hull3_instances},
                    {"hull3_max_points", p.geometry.hull3_max_points},
                    {"cover_sets_per_dim", p.geometry.cover_sets_per_dim},
                    {"hausdorff_triples", p.geometry.hausdorff_triples}};
  j["experiments"] = ex;
  return j;
}

fbmhull::VerifyParams load_params(const std::string& config_path) {
  if (config_path.empty()) return {};
  std::ifstream in(config_path);
  if (!in) throw CliError("cannot open config file: " + config_path);
  ordered_json j;
  try {
    in >> j;
  } catch (const ordered_json::exception& e) {
    throw CliError(std::string("config parse error: ") + e.what());
  }
  return params_from_json(j);
}

void write_manifest(const std::string& out_dir, const fbmhull::VerifyParams& params,
                    const std::vector<std::string>& files, double wall_seconds) {
  ordered_json m;
  m["manifest_version"] = kManifestVersion;
  m["tool"] = std::string("fbmhull ") + kVersion;
  m["seed"] = params.seed;
  m["wall_seconds"] = wall_seconds;
  m["config"] = params_to_json(params);
  m["files"] = files;
  std::ofstream out(out_dir + "/manifest.json", std::ios::binary | std::ios::trunc);
  out << m.dump(2) << '\n';
}

int cmd_simulate(const fbmhull::VerifyParams& params, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const fbmhull::ExperimentConfig& cfg = params.base;
  const fbmhull::PathSampler sampler(fbmhull::HurstIndex(cfg.hurst), cfg.q_matrix(),
                                     fbmhull::TimeGrid{cfg.horizon, cfg.steps});
  std::vector<std::string> files;
  for (std::size_t i = 0; i < cfg.paths; ++i) {
    const fbmhull::VectorPath path = sampler.sample(fbmhull::RandomSeed{params.seed}, i);
    std::vector<std::string> header{"t"};
    for (int c = 0; c < cfg.dimension; ++c) header.push_back("x_" + std::to_string(c + 1));
    char name[64];
    std::snprintf(name, sizeof(name), "path_%04zu.csv", i);
    fbmhull::CsvWriter csv(out_dir + "/" + name, header);
    for (std::size_t k = 0; k < path.points(); ++k) {
      std::vector<double> row{path.grid().time(k)};
      for (int c = 0; c < cfg.dimension; ++c) row.push_back(path.coord(k, c));
      csv.row(row);
    }
    files.push_back(name);
  }
  write_manifest(out_dir, params, files, 0.0);
  std::cout << "wrote " << files.size() << " path files to " << out_dir << "\n";
  return 0;
}

int cmd_staircase(const fbmhull::VerifyParams& params, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const fbmhull::ExperimentConfig& cfg = params.base;
  const fbmhull::PathSampler sampler(fbmhull::HurstIndex(cfg.hurst), cfg.q_matrix(),
                                     fbmhull::TimeGrid{cfg.horizon, cfg.steps});
  const fbmhull::VectorPath path = sampler.sample(fbmhull::RandomSeed{params.seed}, 0);
  const fbmhull::HullTrajectory traj = fbmhull::evolve_hull(path);

  fbmhull::CsvWriter csv(out_dir + "/staircase.csv", {"t", "volume", "surface", "diameter"});
  fbmhull::HullFunctionals current;
  std::size_t next_event = 0;
  for (std::size_t k = 0; k <= cfg.steps; ++k) {
    while (next_event < traj.events().size() && traj.events()[next_event].index == k) {
      current = traj.events()[next_event].functionals;
      ++next_event;
    }
    csv.row({path.grid().time(k), current.volume, current.surface, current.diameter});
  }
  write_manifest(out_dir, params, {"staircase.csv"}, 0.0);
  std::cout << "wrote staircase trace to " << out_dir << "/staircase.csv\n";
  return 0;
}

int cmd_verify(const std::string& selector, const fbmhull::VerifyParams& params,
               const std::string& out_dir) {
  fs::create_directories(out_dir);
  const auto wall_start = std::chrono::steady_clock::now();
  const std::vector<std::string> selectors = fbmhull::selectors_for(selector);

  std::vector<std::string> files;
  std::vector<fbmhull::CriterionReport> reports;
  bool all_passed = true;
  for (const std::string& sel : selectors) {
    const fbmhull::CriterionReport rep = fbmhull::run_selector(sel, params, out_dir, &files);
    for (const auto& c : rep.checks) {
      std::cout << (c.passed ? "  [ok]   " : "  [FAIL] ") << c.name << ": " << c.detail << "\n";
    }
    std::cout << (rep.passed() ? "[PASS] " : "[FAIL] ") << "criterion " << rep.number << " ("
              << rep.selector << "): " << rep.title << " [" << std::fixed << rep.seconds
              << "s]\n";
    std::cout.unsetf(std::ios::fixed);
    all_passed = all_passed && rep.passed();
    reports.push_back(rep);
  }

  // summary.json is deterministic (no timings); the manifest carries the
  // wall time and is therefore excluded from byte-identity comparisons.
  ordered_json summary;
  summary["selector"] = selector;
  summary["passed"] = all_passed;
  ordered_json arr = ordered_json::array();
  for (const auto& rep : reports) {
    ordered_json r;
    r["criterion"] = rep.number;
    r["selector"] = rep.selector;
    r["title"] = rep.title;
    r["passed"] = rep.passed();
    ordered_json checks = ordered_json::array();
    for (const auto& c : rep.checks) {
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    r["checks"] = checks;
    arr.push_back(r);
  }
  summary["criteria"] = arr;
  {
    std::ofstream out(out_dir + "/summary.json", std::ios::binary | std::ios::trunc);
    out << summary.dump(2) << '\n';
    files.push_back("summary.json");
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  write_manifest(out_dir, params, files, wall);

  if (!all_passed) {
    std::cout << "verification FAILED; see " << out_dir << "/summary.json\n";
    return 1;
  }
  std::cout << "all selected criteria passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fbmhull: fractional Brownian motion convex hull toolkit"};
  app.set_version_flag("--version", std::string("fbmhull ") + kVersion);

  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int workers = -1;

  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "master seed (overrides config)")->each([&](const std::string&) {
    seed_set = true;
  });
  app.add_option("--workers", workers, "worker threads, 0 = all (overrides config)");

  auto* sim = app.add_subcommand("simulate", "sample paths and write CSV files");
  auto* ver = app.add_subcommand("verify", "run verification experiments");
  std::string selector = "all";
  ver->add_option("selector", selector,
                  "t1|t2|t3|reversibility|lamperti|scaling|anchor|generator|geometry|all");
  auto* stair = app.add_subcommand("staircase", "emit one path's functional staircase");
  sim->fallthrough();
  ver->fallthrough();
  stair->fallthrough();
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    fbmhull::VerifyParams params = load_params(config_path);
    if (seed_set) params.seed = seed;
    if (workers >= 0) params.workers = workers;

    if (sim->parsed()) return cmd_simulate(params, out_dir);
    if (stair->parsed()) return cmd_staircase(params, out_dir);
    if (ver->parsed()) return cmd_verify(selector, params, out_dir);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

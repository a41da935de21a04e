// Acceptance suite: runs every acceptance criterion at its specified scale
// and prints one PASS/FAIL line per criterion. Criterion 10 exercises the
// CLI end to end and compares result bytes across worker counts.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fbmhull/acceptance.hpp"

namespace fs = std::filesystem;
using namespace fbmhull;

#ifndef FBMHULL_CLI_PATH
#define FBMHULL_CLI_PATH "fbmhull"
#endif

namespace {

struct Line {
  int number;
  std::string title;
  bool passed;
  std::string detail;
};

std::map<std::string, std::string> read_dir_files(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name == "manifest.json") continue;  // carries wall time
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    out[name] = ss.str();
  }
  return out;
}

// Criterion 10: byte-identical CLI output across 1, 4 and 8 workers. Uses a
// reduced-size config so three full runs stay inside the suite budget; the
// determinism contract is scale-independent.
Line run_determinism(const std::string& cli) {
  const fs::path base = fs::temp_directory_path() / "fbmhull_determinism";
  fs::remove_all(base);
  fs::create_directories(base);
  const fs::path cfg_path = base / "config.json";
  {
    std::ofstream cfg(cfg_path);
    cfg << R"({
  "experiments": {
    "generator": {"steps": 256, "paths": 1500},
    "t1": {"steps": 1024, "paths": 80},
    "t2": {"steps": 1024, "paths": 80},
    "t3": {"ladder_log2": [8, 9, 10], "paths": 20},
    "reversibility": {"steps": 512, "paths": 200, "replicates": 3, "min_passes": 2},
    "lamperti": {"steps": 1024, "paths": 600, "window": [-3.0, 0.0, 0.1]},
    "scaling": {"steps": 1024, "paths": 100, "slope_tol": 0.5},
    "anchor": {"steps": 4096, "paths": 400, "area_rel_tol": 0.2, "perimeter_rel_tol": 0.2},
    "geometry": {"hull2_instances": 300, "hull2_max_points": 120, "hull3_instances": 50,
                 "hull3_max_points": 50, "cover_sets_per_dim": 100, "hausdorff_triples": 200}
  }
})";
  }

  std::vector<int> exit_codes;
  std::vector<std::map<std::string, std::string>> contents;
  for (int workers : {1, 4, 8}) {
    const fs::path out_dir = base / ("w" + std::to_string(workers));
    std::ostringstream cmd;
    cmd << '"' << cli << '"' << " verify all --seed 42 --workers " << workers << " --config "
        << cfg_path << " --out " << out_dir << " > " << (base / "log.txt") << " 2>&1";
    const int rc = std::system(cmd.str().c_str());
    exit_codes.push_back(rc);
    contents.push_back(read_dir_files(out_dir));
  }

  bool ok = exit_codes[0] == exit_codes[1] && exit_codes[1] == exit_codes[2];
  std::string detail;
  if (!ok) {
    detail = "exit codes differ across worker counts";
  } else if (contents[0].size() != contents[1].size() || contents[0].size() != contents[2].size()) {
    ok = false;
    detail = "file sets differ across worker counts";
  } else {
    for (const auto& [name, bytes] : contents[0]) {
      const auto it4 = contents[1].find(name);
      const auto it8 = contents[2].find(name);
      if (it4 == contents[1].end() || it8 == contents[2].end() || it4->second != bytes ||
          it8->second != bytes) {
        ok = false;
        detail = "file " + name + " differs across worker counts";
        break;
      }
    }
    if (ok) {
      std::ostringstream d;
      d << contents[0].size() << " result files byte-identical across workers 1/4/8";
      detail = d.str();
    }
  }
  return {10, "Determinism: verify all byte-identical across workers", ok, detail};
}

}  // namespace

int main() {
  VerifyParams params;  // full-scale defaults, seed 42
  const fs::path out_root = fs::temp_directory_path() / "fbmhull_acceptance_out";
  fs::remove_all(out_root);
  fs::create_directories(out_root);

  // Runtime bounds where the criteria state them, in seconds.
  const std::map<std::string, double> runtime_bounds{
      {"generator", 120.0}, {"t1", 300.0}, {"anchor", 900.0}};

  std::vector<Line> lines;
  for (const std::string& sel : selectors_for("all")) {
    std::vector<std::string> files;
    const CriterionReport rep = run_selector(sel, params, out_root.string(), &files);
    bool passed = rep.passed();
    std::ostringstream detail;
    std::size_t ok_count = 0;
    for (const auto& c : rep.checks) ok_count += c.passed ? 1 : 0;
    detail << ok_count << "/" << rep.checks.size() << " checks";
    const auto bound = runtime_bounds.find(sel);
    if (bound != runtime_bounds.end()) {
      const bool in_time = rep.seconds <= bound->second;
      passed = passed && in_time;
      detail << ", runtime " << static_cast<int>(rep.seconds) << "s (bound "
             << static_cast<int>(bound->second) << "s)";
    } else {
      detail << ", runtime " << static_cast<int>(rep.seconds) << "s";
    }
    for (const auto& c : rep.checks) {
      if (!c.passed) detail << "; FAILED " << c.name << ": " << c.detail;
    }
    lines.push_back({rep.number, rep.title, passed, detail.str()});
  }

  lines.push_back(run_determinism(FBMHULL_CLI_PATH));

  bool all = true;
  for (const Line& l : lines) {
    std::printf("%s criterion %2d: %s (%s)\n", l.passed ? "[PASS]" : "[FAIL]", l.number,
                l.title.c_str(), l.detail.c_str());
    all = all && l.passed;
  }
  std::printf("%s\n", all ? "ACCEPTANCE: all criteria passed"
                          : "ACCEPTANCE: criteria failed (see lines above)");
  return all ? 0 : 1;
}

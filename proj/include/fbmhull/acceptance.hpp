#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fbmhull/verification.hpp"

namespace fbmhull {

// Full parameter set for the verification battery. Defaults reproduce every
// acceptance criterion; a JSON config may override any block.
struct VerifyParams {
  std::uint64_t seed = 42;
  int workers = 0;

  struct Generator {
    std::size_t steps = std::size_t{1} << 10;
    std::size_t paths = 10000;
    std::vector<double> hursts{0.25, 0.5, 0.75};
    double max_dev_se = 4.0;
    double ks_alpha = 0.01;
  } generator;

  struct T1 {
    std::size_t steps = std::size_t{1} << 14;
    std::size_t paths = 500;
    std::vector<double> hursts{0.25, 0.5, 0.75};
    double min_p = 0.98;
  } t1;

  struct T2 {
    std::size_t steps = std::size_t{1} << 14;
    std::size_t paths = 500;
    std::vector<double> hursts{0.25, 0.5, 0.75};
    double min_p = 0.95;
  } t2;

  struct T3 {
    std::vector<unsigned> ladder_log2{10, 11, 12, 13, 14, 15, 16};
    std::size_t paths = 100;
    double hurst = 0.5;
    double final_ratio = 0.25;  // fraction(max) < fraction(min) * ratio
  } t3;

  struct Reversibility {
    std::size_t steps = std::size_t{1} << 12;
    std::size_t paths = 1000;
    double hurst = 0.7;
    double alpha = 0.01;
    std::size_t replicates = 10;
    std::size_t min_passes = 9;
  } reversibility;

  struct Lamperti {
    std::size_t steps = std::size_t{1} << 13;
    std::size_t paths = 6000;
    double hurst = 0.6;
    LampertiParams params;
    double max_dev_se = 4.0;
  } lamperti;

  struct Scaling {
    std::size_t steps = std::size_t{1} << 14;
    std::size_t paths = 1000;
    std::vector<double> hursts{0.5, 0.75};
    std::vector<double> t_points{0.1, 0.14, 0.2, 0.28, 0.4, 0.55, 0.75, 1.0};
    double slope_tol = 0.1;
  } scaling;

  struct Anchor {
    std::size_t steps = std::size_t{1} << 16;
    std::size_t paths = 10000;
    double area_rel_tol = 0.05;
    double perimeter_rel_tol = 0.03;
  } anchor;

  GeometryOracleParams geometry;

  // Base path parameters used by simulate / staircase.
  ExperimentConfig base;
};

struct CriterionReport {
  int number = 0;           // acceptance criterion index
  std::string selector;     // CLI selector
  std::string title;
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

// Valid selectors: generator t1 t2 t3 reversibility lamperti scaling anchor
// geometry all.
std::vector<std::string> selectors_for(const std::string& selector);

// Runs one selector; when out_dir is nonempty, writes the experiment's
// CSV result files there and records the file names.
CriterionReport run_selector(const std::string& selector, const VerifyParams& params,
                             const std::string& out_dir, std::vector<std::string>* files);

}  // namespace fbmhull

#include "fbmhull/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fbmhull/report.hpp"

namespace fbmhull {

namespace {

using Clock = std::chrono::steady_clock;

std::string hurst_tag(double h) {
  std::ostringstream os;
  os << h;
  std::string s = os.str();
  for (char& c : s) {
    if (c == '.') c = 'p';
  }
  return s;
}

CheckResult check(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok, std::move(detail)};
}

std::string maybe_file(const std::string& out_dir, const std::string& name,
                       std::vector<std::string>* files) {
  if (out_dir.empty()) return {};
  const std::string path = out_dir + "/" + name;
  if (files) files->push_back(name);
  return path;
}

ExperimentConfig base_cfg(const VerifyParams& p) {
  ExperimentConfig cfg = p.base;
  cfg.seed = p.seed;
  cfg.workers = p.workers;
  return cfg;
}

CriterionReport run_generator(const VerifyParams& p, const std::string& out_dir,
                              std::vector<std::string>* files) {
  CriterionReport rep{1, "generator", "fGn generator correctness", {}, 0.0};
  for (double h : p.generator.hursts) {
    ExperimentConfig cfg = base_cfg(p);
    cfg.hurst = h;
    cfg.steps = p.generator.steps;
    cfg.paths = p.generator.paths;
    const GeneratorResult r = generator_equivalence(cfg);

    const std::string path = maybe_file(out_dir, "generator_h" + hurst_tag(h) + ".csv", files);
    if (!path.empty()) {
      CsvWriter csv(path, {"lag", "sample", "expected", "std_error", "dev_in_se"});
      for (const auto& lag : r.lags) {
        csv.row({static_cast<double>(lag.lag), lag.sample, lag.expected, lag.std_error,
                 lag.dev_in_se});
      }
    }
    double worst = 0.0;
    for (const auto& lag : r.lags) worst = std::max(worst, lag.dev_in_se);
    std::ostringstream d1;
    d1 << "H=" << h << " max lag deviation " << worst << " se (limit " << p.generator.max_dev_se
       << ")";
    rep.checks.push_back(
        check("autocovariance lags 0..4 (H=" + hurst_tag(h) + ")", worst <= p.generator.max_dev_se, d1.str()));
    std::ostringstream d2;
    d2 << "H=" << h << " spectral-vs-cholesky KS p=" << r.marginal_ks.p_value << " (alpha "
       << p.generator.ks_alpha << ")";
    rep.checks.push_back(check("marginal KS (H=" + hurst_tag(h) + ")",
                               r.marginal_ks.p_value >= p.generator.ks_alpha, d2.str()));
  }
  return rep;
}

CriterionReport run_t1(const VerifyParams& p, const std::string& out_dir,
                       std::vector<std::string>* files) {
  CriterionReport rep{2, "t1", "origin interior to V(1)", {}, 0.0};
  for (double h : p.t1.hursts) {
    ExperimentConfig cfg = base_cfg(p);
    cfg.hurst = h;
    cfg.steps = p.t1.steps;
    cfg.paths = p.t1.paths;
    const auto probes = default_probe_indices(cfg.steps);
    const InteriorProbabilityResult r = estimate_interior_probability(cfg, probes);

    const std::string path = maybe_file(out_dir, "t1_h" + hurst_tag(h) + ".csv", files);
    if (!path.empty()) {
      CsvWriter csv(path, {"k", "p_hat", "stderr"});
      for (const auto& pt : r.curve) {
        csv.row({static_cast<double>(pt.index), pt.p_hat.estimate, pt.p_hat.std_error});
      }
    }
    const double p_final = r.curve.back().p_hat.estimate;
    std::ostringstream d1;
    d1 << "H=" << h << " p_hat=" << p_final << " (threshold " << p.t1.min_p << ", stderr "
       << r.curve.back().p_hat.std_error << ")";
    rep.checks.push_back(
        check("interior probability (H=" + hurst_tag(h) + ")", p_final >= p.t1.min_p, d1.str()));
    rep.checks.push_back(check("p-curve monotone (H=" + hurst_tag(h) + ")", r.curve_monotone,
                               "nested events imply exact monotonicity"));
    std::ostringstream d3;
    d3 << r.sufficiency_violations << " violations over " << r.paths_with_cover
       << " covered paths";
    rep.checks.push_back(check("interior index <= cover index (H=" + hurst_tag(h) + ")",
                               r.sufficiency_violations == 0, d3.str()));
  }
  return rep;
}

CriterionReport run_t2(const VerifyParams& p, const std::string& out_dir,
                       std::vector<std::string>* files) {
  CriterionReport rep{3, "t2", "endpoint interior to V(1)", {}, 0.0};
  const std::string path = maybe_file(out_dir, "t2.csv", files);
  std::optional<CsvWriter> csv;
  if (!path.empty()) csv.emplace(path, std::vector<std::string>{"hurst", "p_hat", "stderr", "disagreements"});
  for (double h : p.t2.hursts) {
    ExperimentConfig cfg = base_cfg(p);
    cfg.hurst = h;
    cfg.steps = p.t2.steps;
    cfg.paths = p.t2.paths;
    const EndpointInteriorResult r = estimate_endpoint_interior(cfg);
    if (csv) {
      csv->row({h, r.p_hat.estimate, r.p_hat.std_error, static_cast<double>(r.disagreements)});
    }
    std::ostringstream d1;
    d1 << "H=" << h << " p_hat=" << r.p_hat.estimate << " (threshold " << p.t2.min_p << ")";
    rep.checks.push_back(check("endpoint interior probability (H=" + hurst_tag(h) + ")",
                               r.p_hat.estimate >= p.t2.min_p, d1.str()));
    std::ostringstream d2;
    d2 << r.disagreements << " route disagreements over " << r.paths_total << " paths";
    rep.checks.push_back(check("direct equals reversed-origin route (H=" + hurst_tag(h) + ")",
                               r.disagreements == 0, d2.str()));
  }
  return rep;
}

CriterionReport run_t3(const VerifyParams& p, const std::string& out_dir,
                       std::vector<std::string>* files) {
  CriterionReport rep{4, "t3", "growth fraction vanishes under refinement", {}, 0.0};
  ExperimentConfig cfg = base_cfg(p);
  cfg.hurst = p.t3.hurst;
  cfg.paths = p.t3.paths;
  std::vector<std::size_t> ladder;
  for (unsigned lg : p.t3.ladder_log2) ladder.push_back(std::size_t{1} << lg);
  cfg.steps = ladder.back();
  const StaircaseResult r = staircase_profile(cfg, ladder);

  const std::string path = maybe_file(out_dir, "t3.csv", files);
  if (!path.empty()) {
    CsvWriter csv(path, {"n", "mean_growth_fraction", "stderr"});
    for (const auto& lvl : r.levels) {
      csv.row({static_cast<double>(lvl.steps), lvl.mean_fraction, lvl.std_error});
    }
  }
  const std::string trace_path = maybe_file(out_dir, "t3_trace.csv", files);
  if (!trace_path.empty()) {
    CsvWriter csv(trace_path, {"t", "volume", "surface", "diameter"});
    for (const auto& row : r.trace) csv.row({row[0], row[1], row[2], row[3]});
  }

  bool decreasing = true;
  for (std::size_t i = 1; i < r.levels.size(); ++i) {
    decreasing = decreasing && (r.levels[i].mean_fraction < r.levels[i - 1].mean_fraction);
  }
  std::ostringstream d1;
  for (const auto& lvl : r.levels) d1 << lvl.mean_fraction << " ";
  rep.checks.push_back(check("growth fraction strictly decreasing", decreasing,
                             "level means: " + d1.str()));
  const double first = r.levels.front().mean_fraction;
  const double last = r.levels.back().mean_fraction;
  std::ostringstream d2;
  d2 << "fraction(" << r.levels.back().steps << ")=" << last << " vs fraction("
     << r.levels.front().steps << ")/4=" << first * p.t3.final_ratio;
  rep.checks.push_back(
      check("final level below a quarter of the first", last < first * p.t3.final_ratio, d2.str()));
  return rep;
}

CriterionReport run_reversibility(const VerifyParams& p, const std::string& out_dir,
                                  std::vector<std::string>* files) {
  CriterionReport rep{5, "reversibility", "reversed paths equal in law", {}, 0.0};
  ExperimentConfig cfg = base_cfg(p);
  cfg.hurst = p.reversibility.hurst;
  cfg.steps = p.reversibility.steps;
  cfg.paths = p.reversibility.paths;
  const ReversibilityReplicates reps =
      reversibility_replicates(cfg, p.reversibility.replicates, p.reversibility.alpha);

  const std::string path = maybe_file(out_dir, "reversibility.csv", files);
  if (!path.empty()) {
    CsvWriter csv(path, {"replicate", "volume_D", "volume_p", "surface_D", "surface_p",
                         "diameter_D", "diameter_p"});
    for (std::size_t i = 0; i < reps.runs.size(); ++i) {
      const auto& r = reps.runs[i];
      csv.row({static_cast<double>(i), r.volume.statistic, r.volume.p_value,
               r.surface.statistic, r.surface.p_value, r.diameter.statistic,
               r.diameter.p_value});
    }
  }
  std::ostringstream d;
  d << reps.not_rejected << "/" << reps.runs.size() << " replicates not rejected at alpha="
    << reps.alpha << " (need >= " << p.reversibility.min_passes << ")";
  rep.checks.push_back(check("KS not rejected in enough replicates",
                             reps.not_rejected >= p.reversibility.min_passes, d.str()));
  return rep;
}

CriterionReport run_lamperti(const VerifyParams& p, const std::string& out_dir,
                             std::vector<std::string>* files) {
  CriterionReport rep{6, "lamperti", "Lamperti stationarity and ergodic averaging", {}, 0.0};
  ExperimentConfig cfg = base_cfg(p);
  cfg.hurst = p.lamperti.hurst;
  cfg.steps = p.lamperti.steps;
  cfg.paths = p.lamperti.paths;
  const LampertiResult r = lamperti_stationarity_test(cfg, p.lamperti.params);

  const std::string path = maybe_file(out_dir, "lamperti_marginal.csv", files);
  if (!path.empty()) {
    CsvWriter csv(path, {"u", "entry_row", "entry_col", "covariance", "stderr"});
    for (const auto& m : r.marginals) {
      const int d = cfg.dimension;
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
          csv.row({m.u, static_cast<double>(a), static_cast<double>(b),
                   m.covariance[static_cast<std::size_t>(a * d + b)],
                   m.std_error[static_cast<std::size_t>(a * d + b)]});
        }
      }
    }
  }
  const std::string shift_path = maybe_file(out_dir, "lamperti_shift.csv", files);
  if (!shift_path.empty()) {
    CsvWriter csv(shift_path, {"lag", "cov_first", "cov_second", "diff_stderr", "dev_in_se"});
    for (const auto& s : r.shifts) {
      csv.row({s.lag, s.cov_first, s.cov_second, s.diff_std_error, s.dev_in_se});
    }
  }
  const std::string erg_path = maybe_file(out_dir, "lamperti_ergodic.csv", files);
  if (!erg_path.empty()) {
    CsvWriter csv(erg_path, {"time_average_mean", "ensemble_mean", "diff_stderr", "dev_in_se",
                             "variance_ratio"});
    csv.row({r.ergodic.time_average_mean, r.ergodic.ensemble_mean, r.ergodic.diff_std_error,
             r.ergodic.dev_in_se, r.ergodic.variance_ratio});
  }

  for (const auto& m : r.marginals) {
    std::ostringstream d;
    d << "u=" << m.u << " max entry deviation " << m.max_dev_in_se << " se";
    rep.checks.push_back(check("marginal covariance equals Q (u=" + format_double(m.u) + ")",
                               m.max_dev_in_se <= p.lamperti.max_dev_se, d.str()));
  }
  double worst_shift = 0.0;
  for (const auto& s : r.shifts) worst_shift = std::max(worst_shift, s.dev_in_se);
  std::ostringstream d2;
  d2 << "max lag-covariance deviation between base points " << worst_shift << " se";
  rep.checks.push_back(
      check("shift invariance across base points", worst_shift <= p.lamperti.max_dev_se, d2.str()));
  std::ostringstream d3;
  d3 << "time-average vs ensemble deviation " << r.ergodic.dev_in_se << " se, variance ratio "
     << r.ergodic.variance_ratio;
  rep.checks.push_back(check("ergodic window average matches ensemble",
                             r.ergodic.dev_in_se <= p.lamperti.max_dev_se, d3.str()));
  return rep;
}

CriterionReport run_scaling(const VerifyParams& p, const std::string& out_dir,
                            std::vector<std::string>* files) {
  CriterionReport rep{7, "scaling", "Self-similarity: hull area grows like t^{2H}", {}, 0.0};
  for (double h : p.scaling.hursts) {
    ExperimentConfig cfg = base_cfg(p);
    cfg.hurst = h;
    cfg.steps = p.scaling.steps;
    cfg.paths = p.scaling.paths;
    const ScalingResult r = scaling_fit(cfg, p.scaling.t_points);

    const std::string path = maybe_file(out_dir, "scaling_h" + hurst_tag(h) + ".csv", files);
    if (!path.empty()) {
      CsvWriter csv(path, {"t", "mean_volume", "stderr"});
      for (std::size_t i = 0; i < r.t_points.size(); ++i) {
        csv.row({r.t_points[i], r.mean_volume[i].estimate, r.mean_volume[i].std_error});
      }
    }
    std::ostringstream d;
    d << "H=" << h << " slope=" << r.fit.slope << " expected " << 2.0 * h << " +- "
      << p.scaling.slope_tol;
    rep.checks.push_back(check("log-log slope equals 2H (H=" + hurst_tag(h) + ")",
                               std::abs(r.fit.slope - 2.0 * h) <= p.scaling.slope_tol, d.str()));
  }
  return rep;
}

CriterionReport run_anchor(const VerifyParams& p, const std::string& out_dir,
                           std::vector<std::string>* files) {
  CriterionReport rep{8, "anchor", "Brownian pipeline anchor: mean hull area and perimeter", {}, 0.0};
  ExperimentConfig cfg = base_cfg(p);
  cfg.steps = p.anchor.steps;
  cfg.paths = p.anchor.paths;
  const AnchorResult r = bm_cross_anchor(cfg);

  const std::string path = maybe_file(out_dir, "anchor.csv", files);
  if (!path.empty()) {
    CsvWriter csv(path, {"mean_area", "area_stderr", "area_reference", "mean_perimeter",
                         "perimeter_stderr", "perimeter_reference"});
    csv.row({r.area.estimate, r.area.std_error, r.area_reference, r.perimeter.estimate,
             r.perimeter.std_error, r.perimeter_reference});
  }
  const double area_rel = std::abs(r.area.estimate - r.area_reference) / r.area_reference;
  const double perim_rel =
      std::abs(r.perimeter.estimate - r.perimeter_reference) / r.perimeter_reference;
  std::ostringstream d1;
  d1 << "mean area " << r.area.estimate << " vs pi/2=" << r.area_reference << " (rel "
     << area_rel << ", tol " << p.anchor.area_rel_tol << ")";
  rep.checks.push_back(check("area within tolerance of pi/2", area_rel <= p.anchor.area_rel_tol,
                             d1.str()));
  std::ostringstream d2;
  d2 << "mean perimeter " << r.perimeter.estimate << " vs sqrt(8 pi)=" << r.perimeter_reference
     << " (rel " << perim_rel << ", tol " << p.anchor.perimeter_rel_tol << ")";
  rep.checks.push_back(check("perimeter within tolerance of sqrt(8 pi)",
                             perim_rel <= p.anchor.perimeter_rel_tol, d2.str()));
  return rep;
}

CriterionReport run_geometry(const VerifyParams& p, const std::string& out_dir,
                             std::vector<std::string>* files) {
  CriterionReport rep{9, "geometry", "Geometry oracles: hull equivalence, cover sufficiency, metric", {}, 0.0};
  ExperimentConfig cfg = base_cfg(p);
  const GeometryOracleResult r = geometry_oracles(cfg, p.geometry);

  const std::string path = maybe_file(out_dir, "geometry.csv", files);
  if (!path.empty()) {
    CsvWriter csv(path, {"hull2_instances", "hull2_mismatches", "hull3_instances",
                         "hull3_mismatches", "cover_sets_per_dim", "cover_failures",
                         "hausdorff_triples", "triangle_violations"});
    csv.row({static_cast<double>(r.hull2_instances), static_cast<double>(r.hull2_mismatches),
             static_cast<double>(r.hull3_instances), static_cast<double>(r.hull3_mismatches),
             static_cast<double>(r.cover_sets_per_dim), static_cast<double>(r.cover_failures),
             static_cast<double>(r.hausdorff_triples),
             static_cast<double>(r.triangle_violations)});
  }
  std::ostringstream d1;
  d1 << r.hull2_mismatches << "/" << r.hull2_instances << " 2d, " << r.hull3_mismatches << "/"
     << r.hull3_instances << " 3d mismatches";
  rep.checks.push_back(check("incremental equals batch hulls",
                             r.hull2_mismatches == 0 && r.hull3_mismatches == 0, d1.str()));
  std::ostringstream d2;
  d2 << r.cover_failures << " failures over " << 3 * r.cover_sets_per_dim << " sets (d=2,3,4)";
  rep.checks.push_back(check("quadrant cover implies interior", r.cover_failures == 0, d2.str()));
  std::ostringstream d3;
  d3 << r.triangle_violations << "/" << r.hausdorff_triples << " violations";
  rep.checks.push_back(check("hausdorff symmetry and triangle inequality",
                             r.triangle_violations == 0, d3.str()));
  return rep;
}

}  // namespace

std::vector<std::string> selectors_for(const std::string& selector) {
  const std::vector<std::string> all{"generator",     "t1",       "t2",      "t3",
                                     "reversibility", "lamperti", "scaling", "anchor",
                                     "geometry"};
  if (selector == "all") return all;
  for (const auto& s : all) {
    if (s == selector) return {selector};
  }
  throw std::invalid_argument("unknown verify selector: " + selector);
}

CriterionReport run_selector(const std::string& selector, const VerifyParams& params,
                             const std::string& out_dir, std::vector<std::string>* files) {
  const auto start = Clock::now();
  CriterionReport rep;
  if (selector == "generator") {
    rep = run_generator(params, out_dir, files);
  } else if (selector == "t1") {
    rep = run_t1(params, out_dir, files);
  } else if (selector == "t2") {
    rep = run_t2(params, out_dir, files);
  } else if (selector == "t3") {
    rep = run_t3(params, out_dir, files);
  } else if (selector == "reversibility") {
    rep = run_reversibility(params, out_dir, files);
  } else if (selector == "lamperti") {
    rep = run_lamperti(params, out_dir, files);
  } else if (selector == "scaling") {
    rep = run_scaling(params, out_dir, files);
  } else if (selector == "anchor") {
    rep = run_anchor(params, out_dir, files);
  } else if (selector == "geometry") {
    rep = run_geometry(params, out_dir, files);
  } else {
    throw std::invalid_argument("unknown verify selector: " + selector);
  }
  rep.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return rep;
}

}  // namespace fbmhull

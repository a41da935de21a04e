#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fbmhull/fbm.hpp"
#include "fbmhull/stats.hpp"

namespace fbmhull {

// Shared experiment knobs. Every run is a pure function of this struct plus
// the per-experiment parameters; results are bit-identical for any worker
// count because path results land in per-index slots reduced serially.
struct ExperimentConfig {
  int dimension = 2;
  double hurst = 0.5;
  std::vector<double> q_flat;  // row-major d x d; empty means identity
  double horizon = 1.0;
  std::size_t steps = std::size_t{1} << 14;
  std::size_t paths = 500;
  std::uint64_t seed = 42;
  int workers = 0;  // 0 = all hardware threads

  SpdMatrix q_matrix() const;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// --- fGn generator correctness -------------------------------------------

struct GeneratorLag {
  std::size_t lag = 0;
  double sample = 0.0;
  double expected = 0.0;
  double std_error = 0.0;
  double dev_in_se = 0.0;
};

struct GeneratorResult {
  double hurst = 0.5;
  std::vector<GeneratorLag> lags;  // 0..4
  KsResult marginal_ks;            // spectral vs cholesky mid-point marginal
};

GeneratorResult generator_equivalence(const ExperimentConfig& cfg);

// --- origin interiority ------------------------------------------------------

struct InteriorCurvePoint {
  std::size_t index = 0;
  McEstimate p_hat;
};

struct InteriorProbabilityResult {
  double hurst = 0.5;
  std::vector<InteriorCurvePoint> curve;  // probe indices, non-decreasing
  std::size_t paths_total = 0;
  std::size_t paths_with_cover = 0;
  std::size_t sufficiency_violations = 0;  // interior index later than cover
  bool curve_monotone = true;
};

InteriorProbabilityResult estimate_interior_probability(
    const ExperimentConfig& cfg, const std::vector<std::size_t>& probe_indices);

// Default probe ladder: powers of two up to the grid size.
std::vector<std::size_t> default_probe_indices(std::size_t steps);

// --- endpoint interiority ----------------------------------------------------

struct EndpointInteriorResult {
  double hurst = 0.5;
  McEstimate p_hat;                 // direct route
  std::size_t disagreements = 0;    // direct vs reversed-origin route
  std::size_t paths_total = 0;
};

EndpointInteriorResult estimate_endpoint_interior(const ExperimentConfig& cfg);

// --- staircase growth ----------------------------------------------------------

struct StaircaseLevel {
  std::size_t steps = 0;
  double mean_fraction = 0.0;  // |growth_times| / steps, averaged over paths
  double std_error = 0.0;
};

struct StaircaseResult {
  std::vector<StaircaseLevel> levels;
  // Step trace of one path at the base config: t, volume, surface, diameter.
  std::vector<std::array<double, 4>> trace;
};

StaircaseResult staircase_profile(const ExperimentConfig& cfg,
                                  const std::vector<std::size_t>& ladder);

// --- reversibility ------------------------------------------------------------

struct ReversibilityResult {
  KsResult volume;
  KsResult surface;
  KsResult diameter;
  bool rejected(double alpha) const {
    return volume.p_value < alpha || surface.p_value < alpha || diameter.p_value < alpha;
  }
};

ReversibilityResult reversibility_test(const ExperimentConfig& cfg);

struct ReversibilityReplicates {
  std::vector<ReversibilityResult> runs;
  std::size_t not_rejected = 0;
  double alpha = 0.01;
};

ReversibilityReplicates reversibility_replicates(const ExperimentConfig& cfg,
                                                 std::size_t replicate_count, double alpha);

// --- Lamperti stationarity and ergodic averaging ------------------------------

struct LampertiMarginal {
  double u = 0.0;
  std::vector<double> covariance;  // row-major d x d sample covariance
  std::vector<double> std_error;   // per entry
  double max_dev_in_se = 0.0;      // against Q
};

struct LampertiShift {
  double lag = 0.0;
  double cov_first = 0.0;   // <L(u1)e, L(u1-h)e>
  double cov_second = 0.0;  // <L(u2)e, L(u2-h)e>
  double diff_std_error = 0.0;
  double dev_in_se = 0.0;
};

struct LampertiErgodic {
  double time_average_mean = 0.0;  // mean over paths of window time-averages
  double ensemble_mean = 0.0;      // cross-path indicator mean at the anchor u
  double diff_std_error = 0.0;
  double dev_in_se = 0.0;
  double variance_ratio = 0.0;  // Var(time avg) / Var(single indicator)
};

struct LampertiResult {
  std::vector<LampertiMarginal> marginals;
  std::vector<LampertiShift> shifts;
  LampertiErgodic ergodic;
};

struct LampertiParams {
  std::vector<double> base_points{0.0, -2.0};
  std::vector<double> lags{0.25, 0.5, 1.0};
  double window_lo = -6.0;
  double window_hi = 0.0;
  double window_step = 0.075;
};

LampertiResult lamperti_stationarity_test(const ExperimentConfig& cfg,
                                          const LampertiParams& params);

// --- Self-similarity: hull volume scaling -----------------------------------

struct ScalingResult {
  double hurst = 0.5;
  std::vector<double> t_points;
  std::vector<McEstimate> mean_volume;
  SlopeFit fit;  // log mean volume vs log t
};

ScalingResult scaling_fit(const ExperimentConfig& cfg, const std::vector<double>& t_points);

// --- Brownian anchor ---------------------------------------------------------

struct AnchorResult {
  McEstimate area;
  McEstimate perimeter;
  double area_reference = 0.0;       // pi/2 for T = 1
  double perimeter_reference = 0.0;  // sqrt(8 pi T)
};

AnchorResult bm_cross_anchor(const ExperimentConfig& cfg);

// --- Geometry bulk oracles ----------------------------------------------------

struct GeometryOracleResult {
  std::size_t hull2_instances = 0;
  std::size_t hull2_mismatches = 0;
  std::size_t hull3_instances = 0;
  std::size_t hull3_mismatches = 0;
  std::size_t cover_sets_per_dim = 0;
  std::size_t cover_failures = 0;
  std::size_t hausdorff_triples = 0;
  std::size_t triangle_violations = 0;
};

struct GeometryOracleParams {
  std::size_t hull2_instances = 10000;
  std::size_t hull2_max_points = 1000;
  std::size_t hull3_instances = 10000;
  std::size_t hull3_max_points = 200;
  std::size_t cover_sets_per_dim = 3334;  // dims 2..4
  std::size_t hausdorff_triples = 10000;
};

GeometryOracleResult geometry_oracles(const ExperimentConfig& cfg,
                                      const GeometryOracleParams& params);

}  // namespace fbmhull

#include "fbmhull/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fbmhull/convex.hpp"
#include "fbmhull/fgn.hpp"
#include "fbmhull/hull_process.hpp"
#include "fbmhull/parallel.hpp"
#include "fbmhull/separation.hpp"

namespace fbmhull {

namespace {

constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

McEstimate mean_and_se(const std::vector<double>& values) {
  return McEstimate::from_samples(values);
}

// volume, surface, diameter of the hull of all samples (d = 2 or 3).
std::array<double, 3> final_hull_functionals(const VectorPath& path) {
  if (path.dim() == 2) {
    Hull2 hull;
    for (std::size_t k = 0; k < path.points(); ++k) {
      hull.insert({path.coord(k, 0), path.coord(k, 1)});
    }
    const HullFunctionals f = hull_functionals(hull);
    return {f.volume, f.surface, f.diameter};
  }
  Hull3 hull;
  for (std::size_t k = 0; k < path.points(); ++k) {
    hull.insert({path.coord(k, 0), path.coord(k, 1), path.coord(k, 2)});
  }
  const HullFunctionals f = hull_functionals(hull);
  return {f.volume, f.surface, f.diameter};
}

// Volume of V(t_k) as a step function of k from the trajectory events.
double volume_at(const HullTrajectory& traj, std::size_t k) {
  double v = 0.0;
  for (const auto& e : traj.events()) {
    if (e.index > k) break;
    v = e.functionals.volume;
  }
  return v;
}

}  // namespace

SpdMatrix ExperimentConfig::q_matrix() const {
  if (q_flat.empty()) return SpdMatrix::identity(dimension);
  return SpdMatrix(dimension, q_flat);
}

// --- generator ----------------------------------------------------------------

GeneratorResult generator_equivalence(const ExperimentConfig& cfg) {
  const HurstIndex h(cfg.hurst);
  const std::size_t n = cfg.steps;
  const std::size_t m = cfg.paths;
  const int workers = resolve_workers(cfg.workers);

  SpectralFgnEngine spectral(n, h);
  CholeskyFgnEngine cholesky(n, h);

  std::vector<std::array<double, 5>> lag_stats(m);
  std::vector<double> spectral_marginal(m), cholesky_marginal(m);
  const RandomSeed seed{cfg.seed};

  struct Ws {
    SpectralFgnEngine::Scratch scratch;
    std::vector<double> buf;
  };
  std::vector<Ws> ws(static_cast<std::size_t>(workers));

  for_each_index(m, cfg.workers, [&](std::size_t i) {
    Ws& w = ws[static_cast<std::size_t>(worker_slot())];
    w.buf.resize(n);
    GaussianRng rng(seed.stream(i));
    spectral.sample(rng, w.buf, w.scratch);
    for (std::size_t lag = 0; lag < 5; ++lag) {
      double acc = 0.0;
      for (std::size_t k = 0; k + lag < n; ++k) acc += w.buf[k] * w.buf[k + lag];
      lag_stats[i][lag] = acc / static_cast<double>(n - lag);
    }
    spectral_marginal[i] = w.buf[n / 2];
    GaussianRng rng2(seed.stream(m + i));
    cholesky.sample(rng2, w.buf);
    cholesky_marginal[i] = w.buf[n / 2];
  });

  GeneratorResult out;
  out.hurst = cfg.hurst;
  for (std::size_t lag = 0; lag < 5; ++lag) {
    std::vector<double> vals(m);
    for (std::size_t i = 0; i < m; ++i) vals[i] = lag_stats[i][lag];
    const McEstimate e = mean_and_se(vals);
    GeneratorLag g;
    g.lag = lag;
    g.sample = e.estimate;
    g.expected = fgn_autocovariance(static_cast<std::int64_t>(lag), h);
    g.std_error = e.std_error;
    g.dev_in_se = std::abs(g.sample - g.expected) / e.std_error;
    out.lags.push_back(g);
  }
  out.marginal_ks = ks_two_sample(spectral_marginal, cholesky_marginal);
  return out;
}

// --- origin interiority -----------------------------------------------------------

std::vector<std::size_t> default_probe_indices(std::size_t steps) {
  std::vector<std::size_t> probes{1};
  for (std::size_t k = 2; k < steps; k <<= 1) probes.push_back(k);
  probes.push_back(steps);
  return probes;
}

InteriorProbabilityResult estimate_interior_probability(
    const ExperimentConfig& cfg, const std::vector<std::size_t>& probe_indices) {
  const PathSampler sampler(HurstIndex(cfg.hurst), cfg.q_matrix(),
                            TimeGrid{cfg.horizon, cfg.steps});
  const int workers = resolve_workers(cfg.workers);
  const RandomSeed seed{cfg.seed};

  std::vector<std::size_t> interior_idx(cfg.paths, kNoIndex);
  std::vector<std::size_t> cover_idx(cfg.paths, kNoIndex);
  std::vector<PathSampler::Workspace> ws(static_cast<std::size_t>(workers));

  for_each_index(cfg.paths, cfg.workers, [&](std::size_t i) {
    const VectorPath path = sampler.sample(seed, i, ws[static_cast<std::size_t>(worker_slot())]);
    const CoverRecord rec = quadrant_cover(path);
    if (rec.origin_interior_index) interior_idx[i] = *rec.origin_interior_index;
    if (rec.cover_index) cover_idx[i] = *rec.cover_index;
  });

  InteriorProbabilityResult out;
  out.hurst = cfg.hurst;
  out.paths_total = cfg.paths;
  for (std::size_t i = 0; i < cfg.paths; ++i) {
    if (cover_idx[i] != kNoIndex) {
      ++out.paths_with_cover;
      if (interior_idx[i] == kNoIndex || interior_idx[i] > cover_idx[i]) {
        ++out.sufficiency_violations;
      }
    }
  }
  std::size_t prev = 0;
  for (std::size_t k : probe_indices) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < cfg.paths; ++i) {
      if (interior_idx[i] <= k) ++count;
    }
    if (count < prev) out.curve_monotone = false;
    prev = count;
    out.curve.push_back({k, McEstimate::binomial(count, cfg.paths)});
  }
  return out;
}

// --- endpoint interiority ---------------------------------------------------------

EndpointInteriorResult estimate_endpoint_interior(const ExperimentConfig& cfg) {
  const PathSampler sampler(HurstIndex(cfg.hurst), cfg.q_matrix(),
                            TimeGrid{cfg.horizon, cfg.steps});
  const int workers = resolve_workers(cfg.workers);
  const RandomSeed seed{cfg.seed};

  std::vector<unsigned char> direct(cfg.paths, 0), reversed(cfg.paths, 0);
  std::vector<PathSampler::Workspace> ws(static_cast<std::size_t>(workers));

  for_each_index(cfg.paths, cfg.workers, [&](std::size_t i) {
    const VectorPath path = sampler.sample(seed, i, ws[static_cast<std::size_t>(worker_slot())]);
    const EndpointInteriorRoutes routes = endpoint_interior_routes(path);
    direct[i] = routes.direct ? 1 : 0;
    reversed[i] = routes.reversed ? 1 : 0;
  });

  EndpointInteriorResult out;
  out.hurst = cfg.hurst;
  out.paths_total = cfg.paths;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < cfg.paths; ++i) {
    hits += direct[i];
    if (direct[i] != reversed[i]) ++out.disagreements;
  }
  out.p_hat = McEstimate::binomial(hits, cfg.paths);
  return out;
}

// --- staircase growth ---------------------------------------------------------------

StaircaseResult staircase_profile(const ExperimentConfig& cfg,
                                  const std::vector<std::size_t>& ladder) {
  StaircaseResult out;
  const int workers = resolve_workers(cfg.workers);
  for (std::size_t steps : ladder) {
    const PathSampler sampler(HurstIndex(cfg.hurst), cfg.q_matrix(),
                              TimeGrid{cfg.horizon, steps});
    const RandomSeed seed{cfg.seed};
    std::vector<double> fractions(cfg.paths);
    std::vector<PathSampler::Workspace> ws(static_cast<std::size_t>(workers));
    for_each_index(cfg.paths, cfg.workers, [&](std::size_t i) {
      const VectorPath path =
          sampler.sample(seed, i, ws[static_cast<std::size_t>(worker_slot())]);
      const HullTrajectory traj = evolve_hull(path);
      fractions[i] = static_cast<double>(growth_times(traj).size()) /
                     static_cast<double>(steps);
    });
    const McEstimate e = mean_and_se(fractions);
    out.levels.push_back({steps, e.estimate, e.std_error});
  }

  // Plot-ready staircase of one path at the base configuration.
  const PathSampler sampler(HurstIndex(cfg.hurst), cfg.q_matrix(),
                            TimeGrid{cfg.horizon, cfg.steps});
  const VectorPath path = sampler.sample(RandomSeed{cfg.seed}, 0);
  const HullTrajectory traj = evolve_hull(path);
  HullFunctionals current;
  std::size_t next_event = 0;
  for (std::size_t k = 0; k <= cfg.steps; ++k) {
    while (next_event < traj.events().size() && traj.events()[next_event].index == k) {
      current = traj.events()[next_event].functionals;
      ++next_event;
    }
    out.trace.push_back({path.grid().time(k), current.volume, current.surface, current.diameter});
  }
  return out;
}

// --- reversibility -----------------------------------------------------------------

ReversibilityResult reversibility_test(const ExperimentConfig& cfg) {
  const PathSampler sampler(HurstIndex(cfg.hurst), cfg.q_matrix(),
                            TimeGrid{cfg.horizon, cfg.steps});
  const int workers = resolve_workers(cfg.workers);
  const RandomSeed seed{cfg.seed};
  const std::size_t m = cfg.paths;

  std::vector<std::array<double, 3>> forward(m), backward(m);
  std::vector<PathSampler::Workspace> ws(static_cast<std::size_t>(workers));

  for_each_index(2 * m, cfg.workers, [&](std::size_t i) {
    PathSampler::Workspace& w = ws[static_cast<std::size_t>(worker_slot())];
    const VectorPath path = sampler.sample(seed, i, w);
    if (i < m) {
      forward[i] = final_hull_functionals(path);
    } else {
      backward[i - m] = final_hull_functionals(reverse_path(path));
    }
  });

  auto column = [](const std::vector<std::array<double, 3>>& rows, int c) {
    std::vector<double> v(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) v[i] = rows[i][static_cast<std::size_t>(c)];
    return v;
  };
  ReversibilityResult out;
  out.volume = ks_two_sample(column(forward, 0), column(backward, 0));
  out.surface = ks_two_sample(column(forward, 1), column(backward, 1));
  out.diameter = ks_two_sample(column(forward, 2), column(backward, 2));
  return out;
}

ReversibilityReplicates reversibility_replicates(const ExperimentConfig& cfg,
                                                 std::size_t replicate_count, double alpha) {
  ReversibilityReplicates out;
  out.alpha = alpha;
  for (std::size_t rep = 0; rep < replicate_count; ++rep) {
    ExperimentConfig sub = cfg;
    sub.seed = derive_stream_seed(cfg.seed, 1000003 + rep);
    const ReversibilityResult r = reversibility_test(sub);
    if (!r.rejected(alpha)) ++out.not_rejected;
    out.runs.push_back(r);
  }
  return out;
}

// --- lamperti -------------------------------------------------------------------------

LampertiResult lamperti_stationarity_test(const ExperimentConfig& cfg,
                                          const LampertiParams& params) {
  if (params.base_points.size() < 2) {
    throw std::invalid_argument("lamperti_stationarity_test: need two base points");
  }
  const HurstIndex h(cfg.hurst);
  const SpdMatrix q = cfg.q_matrix();
  const int d = cfg.dimension;
  const PathSampler sampler(h, q, TimeGrid{cfg.horizon, cfg.steps});
  const int workers = resolve_workers(cfg.workers);
  const RandomSeed seed{cfg.seed};
  const std::size_t m = cfg.paths;

  // Evaluation points: base points, lag pairs, ergodic window.
  std::vector<double> u_eval;
  for (double u : params.base_points) u_eval.push_back(u);
  for (double u : params.base_points) {
    for (double lag : params.lags) u_eval.push_back(u - lag);
  }
  std::vector<double> window;
  for (double u = params.window_lo; u <= params.window_hi + 1e-12; u += params.window_step) {
    window.push_back(u);
  }
  const std::size_t base_count = params.base_points.size();
  const std::size_t lag_count = params.lags.size();
  const std::size_t dd = static_cast<std::size_t>(d);

  // Per-path slots.
  std::vector<std::vector<double>> marg_products(
      base_count, std::vector<double>(m * dd * dd, 0.0));
  std::vector<std::vector<double>> lag_products(base_count,
                                                std::vector<double>(m * lag_count, 0.0));
  std::vector<double> time_avg(m, 0.0), anchor_ind(m, 0.0);

  std::vector<PathSampler::Workspace> ws(static_cast<std::size_t>(workers));

  for_each_index(m, cfg.workers, [&](std::size_t i) {
    const VectorPath path = sampler.sample(seed, i, ws[static_cast<std::size_t>(worker_slot())]);
    const auto at_eval = lamperti_transform(path, h, u_eval);
    for (std::size_t b = 0; b < base_count; ++b) {
      const auto& lb = at_eval[b];
      for (std::size_t r = 0; r < dd; ++r) {
        for (std::size_t c = 0; c < dd; ++c) {
          marg_products[b][(i * dd + r) * dd + c] = lb[r] * lb[c];
        }
      }
      for (std::size_t g = 0; g < lag_count; ++g) {
        const auto& lag_point = at_eval[base_count + b * lag_count + g];
        lag_products[b][i * lag_count + g] = lb[0] * lag_point[0];
      }
    }
    const auto on_window = lamperti_transform(path, h, window);
    double acc = 0.0;
    for (const auto& lw : on_window) {
      bool positive = true;
      for (double coord : lw) positive = positive && (coord > 0.0);
      acc += positive ? 1.0 : 0.0;
    }
    time_avg[i] = acc / static_cast<double>(window.size());
    const auto& la = on_window[window.size() / 2];
    bool positive = true;
    for (double coord : la) positive = positive && (coord > 0.0);
    anchor_ind[i] = positive ? 1.0 : 0.0;
  });

  LampertiResult out;
  for (std::size_t b = 0; b < base_count; ++b) {
    LampertiMarginal marg;
    marg.u = params.base_points[b];
    marg.covariance.resize(dd * dd);
    marg.std_error.resize(dd * dd);
    for (std::size_t r = 0; r < dd; ++r) {
      for (std::size_t c = 0; c < dd; ++c) {
        std::vector<double> vals(m);
        for (std::size_t i = 0; i < m; ++i) vals[i] = marg_products[b][(i * dd + r) * dd + c];
        const McEstimate e = mean_and_se(vals);
        marg.covariance[r * dd + c] = e.estimate;
        marg.std_error[r * dd + c] = e.std_error;
        const double dev = std::abs(e.estimate - q.at(static_cast<int>(r), static_cast<int>(c))) /
                           e.std_error;
        marg.max_dev_in_se = std::max(marg.max_dev_in_se, dev);
      }
    }
    out.marginals.push_back(std::move(marg));
  }

  for (std::size_t g = 0; g < lag_count; ++g) {
    LampertiShift shift;
    shift.lag = params.lags[g];
    std::vector<double> diff(m), first(m), second(m);
    for (std::size_t i = 0; i < m; ++i) {
      first[i] = lag_products[0][i * lag_count + g];
      second[i] = lag_products[1][i * lag_count + g];
      diff[i] = first[i] - second[i];
    }
    shift.cov_first = mean_and_se(first).estimate;
    shift.cov_second = mean_and_se(second).estimate;
    const McEstimate d_e = mean_and_se(diff);
    shift.diff_std_error = d_e.std_error;
    shift.dev_in_se = std::abs(d_e.estimate) / d_e.std_error;
    out.shifts.push_back(shift);
  }

  std::vector<double> diff(m);
  for (std::size_t i = 0; i < m; ++i) diff[i] = time_avg[i] - anchor_ind[i];
  const McEstimate d_e = mean_and_se(diff);
  out.ergodic.time_average_mean = mean_and_se(time_avg).estimate;
  out.ergodic.ensemble_mean = mean_and_se(anchor_ind).estimate;
  out.ergodic.diff_std_error = d_e.std_error;
  out.ergodic.dev_in_se = d_e.std_error > 0.0 ? std::abs(d_e.estimate) / d_e.std_error : 0.0;
  const McEstimate ta = mean_and_se(time_avg);
  const McEstimate ai = mean_and_se(anchor_ind);
  const double var_ta = ta.std_error * ta.std_error * static_cast<double>(m);
  const double var_ai = ai.std_error * ai.std_error * static_cast<double>(m);
  out.ergodic.variance_ratio = var_ai > 0.0 ? var_ta / var_ai : 0.0;
  return out;
}

// --- scaling ---------------------------------------------------------------------------

ScalingResult scaling_fit(const ExperimentConfig& cfg, const std::vector<double>& t_points) {
  const PathSampler sampler(HurstIndex(cfg.hurst), cfg.q_matrix(),
                            TimeGrid{cfg.horizon, cfg.steps});
  const int workers = resolve_workers(cfg.workers);
  const RandomSeed seed{cfg.seed};
  const std::size_t m = cfg.paths;
  const std::size_t tp = t_points.size();

  std::vector<std::size_t> probe_k(tp);
  for (std::size_t j = 0; j < tp; ++j) {
    probe_k[j] = static_cast<std::size_t>(
        std::llround(t_points[j] / cfg.horizon * static_cast<double>(cfg.steps)));
  }

  std::vector<double> volumes(m * tp);
  std::vector<PathSampler::Workspace> ws(static_cast<std::size_t>(workers));
  for_each_index(m, cfg.workers, [&](std::size_t i) {
    const VectorPath path = sampler.sample(seed, i, ws[static_cast<std::size_t>(worker_slot())]);
    const HullTrajectory traj = evolve_hull(path);
    for (std::size_t j = 0; j < tp; ++j) volumes[i * tp + j] = volume_at(traj, probe_k[j]);
  });

  ScalingResult out;
  out.hurst = cfg.hurst;
  out.t_points = t_points;
  std::vector<double> log_t, log_v;
  for (std::size_t j = 0; j < tp; ++j) {
    std::vector<double> vals(m);
    for (std::size_t i = 0; i < m; ++i) vals[i] = volumes[i * tp + j];
    const McEstimate e = mean_and_se(vals);
    out.mean_volume.push_back(e);
    log_t.push_back(std::log(t_points[j]));
    log_v.push_back(std::log(e.estimate));
  }
  out.fit = SlopeFit::least_squares(log_t, log_v);
  return out;
}

// --- anchor -----------------------------------------------------------------------------

AnchorResult bm_cross_anchor(const ExperimentConfig& cfg) {
  ExperimentConfig anchor_cfg = cfg;
  anchor_cfg.hurst = 0.5;
  anchor_cfg.dimension = 2;
  anchor_cfg.q_flat.clear();
  const PathSampler sampler(HurstIndex(0.5), SpdMatrix::identity(2),
                            TimeGrid{anchor_cfg.horizon, anchor_cfg.steps});
  const int workers = resolve_workers(cfg.workers);
  const RandomSeed seed{cfg.seed};
  const std::size_t m = anchor_cfg.paths;

  std::vector<double> area(m), perim(m);
  std::vector<PathSampler::Workspace> ws(static_cast<std::size_t>(workers));
  for_each_index(m, cfg.workers, [&](std::size_t i) {
    const VectorPath path = sampler.sample(seed, i, ws[static_cast<std::size_t>(worker_slot())]);
    const auto f = final_hull_functionals(path);
    area[i] = f[0];
    perim[i] = f[1];
  });

  AnchorResult out;
  out.area = mean_and_se(area);
  out.perimeter = mean_and_se(perim);
  out.area_reference = M_PI / 2.0 * anchor_cfg.horizon;
  out.perimeter_reference = std::sqrt(8.0 * M_PI * anchor_cfg.horizon);
  return out;
}

// --- geometry oracles ----------------------------------------------------------------------

GeometryOracleResult geometry_oracles(const ExperimentConfig& cfg,
                                      const GeometryOracleParams& params) {
  GeometryOracleResult out;
  out.hull2_instances = params.hull2_instances;
  out.hull3_instances = params.hull3_instances;
  out.cover_sets_per_dim = params.cover_sets_per_dim;
  out.hausdorff_triples = params.hausdorff_triples;
  const RandomSeed seed{cfg.seed};

  // Incremental vs batch, d = 2.
  std::vector<unsigned char> bad2(params.hull2_instances, 0);
  for_each_index(params.hull2_instances, cfg.workers, [&](std::size_t i) {
    GaussianRng rng(seed.stream(i));
    const std::size_t n = 3 + rng.raw() % params.hull2_max_points;
    std::vector<Vec2> pts(n);
    Hull2 inc;
    for (auto& p : pts) {
      p = {rng.normal(), rng.normal()};
      inc.insert(p);
    }
    const auto batch = batch_hull2(pts);
    bad2[i] = (inc.vertices() == batch) ? 0 : 1;
  });
  for (auto b : bad2) out.hull2_mismatches += b;

  // Incremental vs batch, d = 3.
  std::vector<unsigned char> bad3(params.hull3_instances, 0);
  for_each_index(params.hull3_instances, cfg.workers, [&](std::size_t i) {
    GaussianRng rng(seed.stream(0x3000000 + i));
    const std::size_t n = 4 + rng.raw() % params.hull3_max_points;
    std::vector<Vec3> pts(n);
    Hull3 inc;
    for (auto& p : pts) {
      p = {rng.normal(), rng.normal(), rng.normal()};
      inc.insert(p);
    }
    const TriMesh batch = batch_hull3(pts);
    bad3[i] = (inc.vertices() == batch.vertices) ? 0 : 1;
  });
  for (auto b : bad3) out.hull3_mismatches += b;

  // Quadrant cover implies interior, d = 2..4.
  for (int d = 2; d <= 4; ++d) {
    std::vector<unsigned char> fail(params.cover_sets_per_dim, 0);
    for_each_index(params.cover_sets_per_dim, cfg.workers, [&](std::size_t i) {
      GaussianRng rng(seed.stream(0x4000000 + static_cast<std::size_t>(d) * params.cover_sets_per_dim + i));
      std::vector<double> pts;
      for (unsigned theta = 0; theta < (1u << d); ++theta) {
        for (int c = 0; c < d; ++c) {
          const double mag = 0.02 + 2.0 * rng.uniform01();
          pts.push_back((theta >> c & 1u) ? mag : -mag);
        }
      }
      const std::size_t extras = rng.raw() % 8;
      for (std::size_t e = 0; e < extras; ++e) {
        for (int c = 0; c < d; ++c) pts.push_back(rng.normal());
      }
      const std::vector<double> origin(static_cast<std::size_t>(d), 0.0);
      fail[i] = separating_direction(pts, d, origin).has_value() ? 1 : 0;
      if (d == 2 && fail[i] == 0) {
        // Second route: exact hull clearance must be positive as well.
        Hull2 hull;
        for (std::size_t k = 0; k + 1 < pts.size(); k += 2) {
          hull.insert({pts[k], pts[k + 1]});
        }
        if (!(origin_inradius(hull) > 0.0)) fail[i] = 1;
      }
    });
    for (auto f : fail) out.cover_failures += f;
  }

  // Hausdorff triangle inequality.
  std::vector<unsigned char> tri_bad(params.hausdorff_triples, 0);
  for_each_index(params.hausdorff_triples, cfg.workers, [&](std::size_t i) {
    GaussianRng rng(seed.stream(0x5000000 + i));
    auto random_hull = [&](double shift_x, double shift_y) {
      Hull2 h;
      const std::size_t n = 4 + rng.raw() % 24;
      for (std::size_t k = 0; k < n; ++k) {
        h.insert({rng.normal() + shift_x, rng.normal() + shift_y});
      }
      return h;
    };
    const Hull2 a = random_hull(0.0, 0.0);
    const Hull2 b = random_hull(1.0, -0.3);
    const Hull2 c = random_hull(-0.5, 0.8);
    const double ab = hausdorff_distance(a, b), bc = hausdorff_distance(b, c),
                 ac = hausdorff_distance(a, c);
    const double ba = hausdorff_distance(b, a);
    tri_bad[i] = (ab == ba && ac <= ab + bc + 1e-9) ? 0 : 1;
  });
  for (auto b : tri_bad) out.triangle_violations += b;

  return out;
}

}  // namespace fbmhull

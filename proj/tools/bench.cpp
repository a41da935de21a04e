// Benchmark: serial reference vs OpenMP fan-out on the hot kernels
// (path synthesis, hull evolution, the combined interior-probability
// pipeline). Both drivers run identical work; the test suite asserts their
// results are bit-identical, this target reports the speedup.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "fbmhull/fbm.hpp"
#include "fbmhull/hull_process.hpp"
#include "fbmhull/parallel.hpp"

using namespace fbmhull;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct BenchCase {
  const char* name;
  std::size_t paths;
  std::size_t steps;
};

double run_pipeline(const BenchCase& bc, int workers, bool serial, double* checksum) {
  const PathSampler sampler(HurstIndex(0.5), SpdMatrix::identity(2),
                            TimeGrid{1.0, bc.steps});
  const RandomSeed seed{42};
  std::vector<double> slot(bc.paths);
  std::vector<PathSampler::Workspace> ws(
      static_cast<std::size_t>(resolve_workers(workers)));

  const auto start = Clock::now();
  auto work = [&](std::size_t i) {
    const VectorPath path = sampler.sample(seed, i, ws[static_cast<std::size_t>(worker_slot())]);
    const HullTrajectory traj = evolve_hull(path);
    slot[i] = traj.events().back().functionals.volume +
              static_cast<double>(growth_times(traj).size());
  };
  if (serial) {
    for_each_index_serial(bc.paths, work);
  } else {
    for_each_index(bc.paths, workers, work);
  }
  const double elapsed = seconds_since(start);
  double acc = 0.0;
  for (double v : slot) acc += v;
  *checksum = acc;
  return elapsed;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t scale = 1;
  if (argc > 1) scale = static_cast<std::size_t>(std::strtoull(argv[1], nullptr, 10));

  const BenchCase cases[] = {
      {"paths+hulls n=2^12", 64 * scale, std::size_t{1} << 12},
      {"paths+hulls n=2^14", 24 * scale, std::size_t{1} << 14},
      {"paths+hulls n=2^16", 8 * scale, std::size_t{1} << 16},
  };
  const int hw = hardware_workers();
  std::printf("hardware workers: %d\n", hw);
  std::printf("%-22s %10s %10s %8s  %s\n", "case", "serial[s]", "openmp[s]", "speedup",
              "checksum match");
  {
    double sink = 0.0;  // warm caches and the allocator before timing
    run_pipeline(cases[0], 0, false, &sink);
  }
  for (const BenchCase& bc : cases) {
    double sum_serial = 0.0, sum_parallel = 0.0;
    const double t_serial = run_pipeline(bc, 1, true, &sum_serial);
    const double t_parallel = run_pipeline(bc, 0, false, &sum_parallel);
    std::printf("%-22s %10.3f %10.3f %8.2fx  %s\n", bc.name, t_serial, t_parallel,
                t_serial / t_parallel, sum_serial == sum_parallel ? "yes" : "NO");
  }
  return 0;
}

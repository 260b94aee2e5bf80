// Serial vs OpenMP timing for the batch kernels.
//
//   ccl_bench [samples] [window] [seeds]
//
// Each parallel result is compared against its serial reference before the
// timings are reported.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <random>
#include <vector>

#include "ccl/evaluate.hpp"
#include "ccl/kernels.hpp"
#include "ccl/pipeline.hpp"
#include "ccl/simulate.hpp"

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct SeedScore {
  std::size_t tp = 0, fp = 0, fn = 0;
  double ignition_depth = 0.0;
  bool operator==(const SeedScore&) const = default;
};

}  // namespace

int main(int argc, char** argv) {
  const std::size_t samples = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200000;
  const std::size_t window = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 512;
  const std::size_t nseeds = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 8;

  std::printf("threads available: %d\n", omp_get_max_threads());

  std::mt19937_64 rng(12345);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> x(samples);
  for (auto& v : x) v = 3.0 + noise(rng);

  std::vector<ccl::ThresholdPair> serial, parallel;
  const double ts = seconds([&] { serial = ccl::batch_thresholds_serial(x, window, 3.0); });
  const double tp = seconds([&] { parallel = ccl::batch_thresholds_parallel(x, window, 3.0); });
  double worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, ccl::threshold_discrepancy(parallel[k], serial[k]));
  std::printf("two-pass thresholds  n=%zu N=%zu  serial %.3f s  parallel %.3f s  speedup %.2fx  max rel diff %.3g\n",
              samples, window, ts, tp, ts / tp, worst);

  const ccl::WellPlan plan = ccl::default_well_plan();
  const ccl::DetectConfig config;
  auto job = [&](std::uint64_t seed) {
    const auto run = ccl::generate_trace(plan, ccl::MotionProfile{}, ccl::InterferenceConfig::moderate(), 1000.0, seed);
    const auto result = ccl::run_detect(run.trace, plan, config);
    const auto match = ccl::match_events(result.events, run.truth, config.evaluation);
    return SeedScore{match.tp, match.fp, match.fn, result.ignition.depth_at_ignite};
  };
  std::vector<std::uint64_t> seeds(nseeds);
  std::iota(seeds.begin(), seeds.end(), 1);
  std::vector<SeedScore> s_serial, s_parallel;
  const double ss = seconds([&] { s_serial = ccl::sweep_serial(std::span<const std::uint64_t>(seeds), job); });
  const double sp = seconds([&] { s_parallel = ccl::sweep_parallel(std::span<const std::uint64_t>(seeds), job); });
  std::printf("seed sweep           seeds=%zu  serial %.3f s  parallel %.3f s  speedup %.2fx  identical %s\n", nseeds,
              ss, sp, ss / sp, s_serial == s_parallel ? "yes" : "NO");
  return (worst <= 1e-12 && s_serial == s_parallel) ? 0 : 1;
}

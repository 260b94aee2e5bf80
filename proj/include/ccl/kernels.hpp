#pragma once

// Batch kernels. The two-pass threshold recomputation is the reference the
// streaming window is checked against; the seed sweep runs independent
// simulate/detect/evaluate jobs. Each has a serial version kept as the
// reference and an OpenMP version that must produce identical results.

#include <cstddef>
#include <cstdint>
#include <exception>
#include <span>
#include <vector>

#include "ccl/omp.hpp"
#include "ccl/signal.hpp"

namespace ccl {

// out[k] is computed from x[max(0, k-window+1) .. k] by a fresh two-pass
// mean/variance, with no state carried between k. For k = 0 the variance
// is zero. Throws ContractError for window < 2 or coefficient <= 0.
std::vector<ThresholdPair> batch_thresholds_serial(std::span<const double> x, std::size_t window, double coefficient);
std::vector<ThresholdPair> batch_thresholds_parallel(std::span<const double> x, std::size_t window,
                                                     double coefficient);

// The same quantity from a RollingWindow that accepts every sample (no
// freeze), i.e. what the streaming detector computes on an excursion-free
// stream. out[0] has zero variance like the batch form.
std::vector<ThresholdPair> streaming_thresholds(std::span<const double> x, std::size_t window, double coefficient);

// Largest |a - b| over all four fields, divided by the larger threshold
// magnitude max(|upper|, |lower|) of the reference pair.
double threshold_discrepancy(const ThresholdPair& a, const ThresholdPair& reference);

// Runs job(seed) for every seed. Results are stored by position, so the
// output is independent of scheduling. The first exception (in seed order)
// is rethrown after all jobs finish.
template <class Job>
auto sweep_serial(std::span<const std::uint64_t> seeds, Job job) {
  std::vector<decltype(job(std::uint64_t{}))> out;
  out.reserve(seeds.size());
  for (const auto seed : seeds) out.push_back(job(seed));
  return out;
}

template <class Job>
auto sweep_parallel(std::span<const std::uint64_t> seeds, Job job) {
  using Result = decltype(job(std::uint64_t{}));
  std::vector<Result> out(seeds.size());
  std::vector<std::exception_ptr> errors(seeds.size());
  const auto n = static_cast<std::int64_t>(seeds.size());
  CCL_OMP(parallel for schedule(dynamic, 1))
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = job(seeds[static_cast<std::size_t>(i)]);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace ccl

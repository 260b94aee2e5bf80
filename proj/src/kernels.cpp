#include "ccl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ccl/error.hpp"

namespace ccl {

namespace {

void check_args(std::size_t window, double coefficient) {
  if (window < 2) throw ContractError("threshold window must hold at least 2 samples");
  if (!(coefficient > 0.0)) throw ContractError("threshold coefficient must be positive");
}

ThresholdPair two_pass(std::span<const double> x, std::size_t k, std::size_t window, double coefficient) {
  const std::size_t first = k + 1 >= window ? k + 1 - window : 0;
  const auto n = static_cast<double>(k + 1 - first);
  double sum = 0.0;
  for (std::size_t i = first; i <= k; ++i) sum += x[i];
  const double mu = sum / n;
  double ss = 0.0;
  for (std::size_t i = first; i <= k; ++i) {
    const double d = x[i] - mu;
    ss += d * d;
  }
  return make_thresholds(mu, ss / n, coefficient);
}

}  // namespace

std::vector<ThresholdPair> batch_thresholds_serial(std::span<const double> x, std::size_t window, double coefficient) {
  check_args(window, coefficient);
  std::vector<ThresholdPair> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = two_pass(x, k, window, coefficient);
  return out;
}

std::vector<ThresholdPair> batch_thresholds_parallel(std::span<const double> x, std::size_t window,
                                                     double coefficient) {
  check_args(window, coefficient);
  std::vector<ThresholdPair> out(x.size());
  const auto n = static_cast<std::int64_t>(x.size());
  CCL_OMP(parallel for schedule(static))
  for (std::int64_t k = 0; k < n; ++k) {
    out[static_cast<std::size_t>(k)] = two_pass(x, static_cast<std::size_t>(k), window, coefficient);
  }
  return out;
}

std::vector<ThresholdPair> streaming_thresholds(std::span<const double> x, std::size_t window, double coefficient) {
  check_args(window, coefficient);
  std::vector<ThresholdPair> out(x.size());
  RollingWindow w(window);
  for (std::size_t k = 0; k < x.size(); ++k) {
    w.push(x[k]);
    out[k] = w.count() < 2 ? make_thresholds(w.mean(), 0.0, coefficient) : thresholds(w, coefficient);
  }
  return out;
}

double threshold_discrepancy(const ThresholdPair& a, const ThresholdPair& reference) {
  const double scale =
      std::max({std::abs(reference.upper), std::abs(reference.lower), std::numeric_limits<double>::min()});
  const double d = std::max({std::abs(a.mu - reference.mu), std::abs(a.sigma - reference.sigma),
                             std::abs(a.upper - reference.upper), std::abs(a.lower - reference.lower)});
  return d / scale;
}

}  // namespace ccl

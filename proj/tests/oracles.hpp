#pragma once

// Reference computations for the tests. Each is written from the definition
// in the most direct way, sharing no code with the library, so agreement is
// evidence rather than tautology.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

struct MeanVar {
  double mean = 0.0;
  double variance = 0.0;  // population variance
};

// Two-pass: mean first, then mean squared deviation.
inline MeanVar two_pass(const std::vector<double>& v) {
  MeanVar r;
  if (v.empty()) return r;
  double s = 0.0;
  for (double x : v) s += x;
  r.mean = s / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - r.mean) * (x - r.mean);
  r.variance = ss / static_cast<double>(v.size());
  return r;
}

struct Thresholds {
  double mu, sigma, upper, lower;
};

inline Thresholds thresholds(const std::vector<double>& window, double a) {
  const auto mv = two_pass(window);
  const double sigma = std::sqrt(mv.variance);
  return {mv.mean, sigma, mv.mean + a * sigma, mv.mean - a * sigma};
}

// Closed-form constant-acceleration kinematics without clamping.
inline double kinematics(double depth, double speed, double accel, double dt) {
  return depth + speed * dt + 0.5 * accel * dt * dt;
}

// Runs of non-inside samples (region != 0), bridging up to `gap` inside
// samples. Returns [first, last] index pairs of the non-inside extremes.
inline std::vector<std::pair<std::size_t, std::size_t>> excursions(const std::vector<int>& regions, std::size_t gap) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::optional<std::size_t> start;
  std::size_t last_out = 0;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (regions[i] != 0) {
      if (start && i - last_out - 1 > gap) {
        out.emplace_back(*start, last_out);
        start.reset();
      }
      if (!start) start = i;
      last_out = i;
    }
  }
  if (start) out.emplace_back(*start, last_out);
  return out;
}

// Maximum cardinality one-to-one assignment by exhaustive search; only for
// tiny inputs. distance(i, j) < 0 means "not allowed".
template <class Dist>
std::size_t brute_force_matching(std::size_t n_events, std::size_t n_truth, Dist distance) {
  std::vector<bool> used(n_truth, false);
  std::size_t best = 0;
  auto rec = [&](auto&& self, std::size_t i, std::size_t count) -> void {
    if (i == n_events) {
      best = std::max(best, count);
      return;
    }
    self(self, i + 1, count);
    for (std::size_t j = 0; j < n_truth; ++j) {
      if (!used[j] && distance(i, j) >= 0.0) {
        used[j] = true;
        self(self, i + 1, count + 1);
        used[j] = false;
      }
    }
  };
  rec(rec, 0, 0);
  return best;
}

// Simpson quadrature.
template <class F>
double integrate(F f, double a, double b, int intervals) {
  if (intervals % 2) ++intervals;
  const double h = (b - a) / intervals;
  double s = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace oracle

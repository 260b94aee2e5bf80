#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ccl/plausibility.hpp"
#include "ccl/simulate.hpp"

namespace ccl {

struct MatchedPair {
  std::size_t event = 0;  // position in the event sequence passed to match_events
  std::size_t truth = 0;  // position in truth.crossings
  double distance = 0.0;  // meters between true tool depth at the event and the collar
};

struct MatchReport {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::vector<MatchedPair> pairs;
  std::vector<std::size_t> unmatched_events;
  std::vector<std::size_t> unmatched_truth;
  double neighborhood = 2.0;
};

struct MatchOptions {
  double neighborhood = 2.0;
  bool count_patches = true;
};

// One-to-one greedy matching by depth: the location of an event is the true
// tool depth at the event time. Candidate (event, collar) pairs within the
// neighborhood are taken closest first. Rejected-fake events are ignored;
// patch events are ignored unless count_patches. Unmatched counted events
// are false positives, unmatched collars false negatives; tn stays 0.
MatchReport match_events(std::span<const CollarEvent> events, const GroundTruth& truth, const MatchOptions& options);

// Each metric is absent when its denominator is zero.
struct Metrics {
  std::optional<double> accuracy;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
};

// accuracy = tp / (tp + tn + fp + fn), precision = tp / (tp + fp),
// recall = tp / (tp + fn), f1 = 2PR / (P + R).
Metrics metrics(std::size_t tp, std::size_t tn, std::size_t fp, std::size_t fn);
Metrics metrics(const MatchReport& report);

}  // namespace ccl

#include "ccl/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "ccl/error.hpp"

namespace ccl {

MatchReport match_events(std::span<const CollarEvent> events, const GroundTruth& truth, const MatchOptions& options) {
  if (!(options.neighborhood > 0.0)) throw ContractError("matching neighborhood must be positive");
  MatchReport report;
  report.neighborhood = options.neighborhood;

  std::vector<std::size_t> counted;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto kind = events[i].kind;
    if (kind == CollarKind::real || (kind == CollarKind::patch && options.count_patches)) counted.push_back(i);
  }

  std::vector<MatchedPair> candidates;
  const auto& crossings = truth.crossings;
  for (std::size_t i : counted) {
    const double at = truth.depth_at(events[i].t);
    auto lo = std::lower_bound(crossings.begin(), crossings.end(), at - options.neighborhood,
                               [](const CollarCrossing& c, double d) { return c.depth < d; });
    for (auto it = lo; it != crossings.end() && it->depth <= at + options.neighborhood; ++it) {
      candidates.push_back({i, static_cast<std::size_t>(it - crossings.begin()), std::abs(it->depth - at)});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const MatchedPair& a, const MatchedPair& b) {
    return std::tie(a.distance, a.event, a.truth) < std::tie(b.distance, b.event, b.truth);
  });

  std::vector<bool> event_used(events.size(), false), truth_used(crossings.size(), false);
  for (const auto& c : candidates) {
    if (event_used[c.event] || truth_used[c.truth]) continue;
    event_used[c.event] = truth_used[c.truth] = true;
    report.pairs.push_back(c);
  }
  std::sort(report.pairs.begin(), report.pairs.end(),
            [](const MatchedPair& a, const MatchedPair& b) { return a.event < b.event; });

  for (std::size_t i : counted) {
    if (!event_used[i]) report.unmatched_events.push_back(i);
  }
  for (std::size_t j = 0; j < crossings.size(); ++j) {
    if (!truth_used[j]) report.unmatched_truth.push_back(j);
  }
  report.tp = report.pairs.size();
  report.fp = report.unmatched_events.size();
  report.fn = report.unmatched_truth.size();
  return report;
}

Metrics metrics(std::size_t tp, std::size_t tn, std::size_t fp, std::size_t fn) {
  Metrics m;
  const auto ratio = [](std::size_t num, std::size_t den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  m.accuracy = ratio(tp, tp + tn + fp + fn);
  m.precision = ratio(tp, tp + fp);
  m.recall = ratio(tp, tp + fn);
  // 2PR / (P + R) written over counts, which stays defined (as 0) when tp == 0.
  if (m.precision && m.recall) m.f1 = ratio(2 * tp, 2 * tp + fp + fn);
  return m;
}

Metrics metrics(const MatchReport& report) { return metrics(report.tp, report.tn, report.fp, report.fn); }

}  // namespace ccl

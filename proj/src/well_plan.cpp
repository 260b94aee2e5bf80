#include "ccl/well_plan.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ccl/error.hpp"

namespace ccl {

double PerforatingInterval::fire_from() const { return target ? std::max(lo, *target) : lo; }

void WellPlan::validate() const {
  using Kind = PlanError::Kind;
  if (collars.empty()) throw PlanError(Kind::empty, 0, "well plan has no collars");
  if (!(nominal_joint_length > 0.0) || !std::isfinite(nominal_joint_length)) {
    throw PlanError(Kind::malformed, 0, "nominal joint length must be positive");
  }
  for (std::size_t i = 0; i < collars.size(); ++i) {
    const auto& c = collars[i];
    if (!std::isfinite(c.depth) || c.depth < 0.0) {
      throw PlanError(Kind::malformed, i + 1, "collar record " + std::to_string(i + 1) + " has an invalid depth");
    }
    if (c.index < 1) {
      throw PlanError(Kind::malformed, i + 1, "collar record " + std::to_string(i + 1) + " has index < 1");
    }
    if (i > 0 && (c.depth <= collars[i - 1].depth || c.index <= collars[i - 1].index)) {
      throw PlanError(Kind::non_monotone, i + 1,
                      "collar record " + std::to_string(i + 1) + " does not increase in depth and index");
    }
  }
  const double first = collars.front().depth;
  const double last = collars.back().depth;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const auto& iv = intervals[i];
    const std::string name = "interval " + std::to_string(i + 1);
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.lo < iv.hi)) {
      throw PlanError(Kind::bad_interval, i + 1, name + " needs lo < hi");
    }
    if (iv.target && !(*iv.target >= iv.lo && *iv.target <= iv.hi)) {
      throw PlanError(Kind::bad_interval, i + 1, name + " target lies outside the interval");
    }
    if (i > 0 && iv.lo <= intervals[i - 1].hi) {
      throw PlanError(Kind::overlapping_intervals, i + 1, name + " overlaps or precedes its predecessor");
    }
    if (iv.lo < first || iv.hi > last) {
      throw PlanError(Kind::interval_out_of_range, i + 1, name + " lies outside the collar list");
    }
  }
}

std::optional<std::size_t> WellPlan::position_of(int index) const {
  auto it = std::lower_bound(collars.begin(), collars.end(), index,
                             [](const CollarRecord& c, int i) { return c.index < i; });
  if (it == collars.end() || it->index != index) return std::nullopt;
  return static_cast<std::size_t>(it - collars.begin());
}

double WellPlan::depth_of(int index) const {
  auto pos = position_of(index);
  if (!pos) throw ContractError("collar index " + std::to_string(index) + " is not in the well plan");
  return collars[*pos].depth;
}

std::size_t WellPlan::nearest(double depth) const {
  auto it = std::lower_bound(collars.begin(), collars.end(), depth,
                             [](const CollarRecord& c, double d) { return c.depth < d; });
  if (it == collars.begin()) return 0;
  if (it == collars.end()) return collars.size() - 1;
  const auto hi = static_cast<std::size_t>(it - collars.begin());
  return (depth - collars[hi - 1].depth <= collars[hi].depth - depth) ? hi - 1 : hi;
}

std::optional<std::size_t> WellPlan::first_after(int index) const {
  auto it = std::upper_bound(collars.begin(), collars.end(), index,
                             [](int i, const CollarRecord& c) { return i < c.index; });
  if (it == collars.end()) return std::nullopt;
  return static_cast<std::size_t>(it - collars.begin());
}

WellPlan default_well_plan(int collar_count) {
  WellPlan plan;
  plan.nominal_joint_length = 9.59;
  for (int k = 1; k <= collar_count; ++k) {
    const double depth = std::round((1097.47 + (k - 110) * 9.59) * 100.0) / 100.0;
    plan.collars.push_back({k, depth});
  }
  if (collar_count >= 111) plan.intervals.push_back({1097.47, 1107.06, 1100.0});
  return plan;
}

}  // namespace ccl

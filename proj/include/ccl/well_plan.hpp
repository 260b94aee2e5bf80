#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace ccl {

struct CollarRecord {
  int index = 0;       // 1-based collar number
  double depth = 0.0;  // meters below the wellhead
};

struct PerforatingInterval {
  double lo = 0.0;
  double hi = 0.0;
  // Aim point inside [lo, hi]. Ignition fires from max(lo, target) onward.
  std::optional<double> target;

  double fire_from() const;
};

// The list of collars plus the designated perforating intervals.
struct WellPlan {
  std::vector<CollarRecord> collars;
  std::vector<PerforatingInterval> intervals;
  double nominal_joint_length = 9.59;

  // Throws PlanError naming the offending record.
  void validate() const;

  // Position of the collar with this index in `collars`, if present.
  std::optional<std::size_t> position_of(int index) const;
  // Throws ContractError for an unknown index.
  double depth_of(int index) const;
  // Position of the collar closest in depth; collars must be non-empty.
  std::size_t nearest(double depth) const;
  // Position of the first collar with index greater than `index`.
  std::optional<std::size_t> first_after(int index) const;
};

// Collar k sits at 1097.47 + (k - 110) * 9.59 m, rounded to centimeters, for
// k = 1..collar_count. One interval [1097.47, 1107.06] aimed at 1100 m when
// collar 111 exists.
WellPlan default_well_plan(int collar_count = 120);

}  // namespace ccl

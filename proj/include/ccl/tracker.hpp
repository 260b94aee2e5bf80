#pragma once

#include <string>

#include "ccl/motion.hpp"
#include "ccl/plausibility.hpp"
#include "ccl/well_plan.hpp"

namespace ccl {

// Depth is set to the plan depth of the event's collar exactly; speed and
// acceleration come from estimate_motion. Throws ContractError for rejected
// events or indices outside the plan.
MotionState calibrate(const MotionState& state, const CollarEvent& event, const WellPlan& plan);

enum class IgnitionState { armed, ignited, inhibited };

struct IgnitionDecision {
  IgnitionState state = IgnitionState::armed;
  double t_ignite = 0.0;
  double depth_at_ignite = 0.0;
  int interval_index = -1;  // 0-based, -1 until ignited
  std::string cause;        // why the decision left the armed state
};

// Latching one-shot: armed -> ignited when depth_now lies in
// [interval.fire_from(), interval.hi] of some interval, the state has at
// least min_calibrations calibrations and was last calibrated by a collar or
// patch event. Any other state is returned unchanged.
IgnitionDecision ignition_step(const IgnitionDecision& dec, double now, double depth_now, const MotionState& state,
                               const WellPlan& plan, int min_calibrations);

// armed -> inhibited once a calibration places the tool below every interval.
IgnitionDecision inhibit_if_passed(const IgnitionDecision& dec, const MotionState& state, const WellPlan& plan);

// armed -> inhibited at end of run.
IgnitionDecision finalize_ignition(const IgnitionDecision& dec);

const char* to_string(IgnitionState s);

}  // namespace ccl

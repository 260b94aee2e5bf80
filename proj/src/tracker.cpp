#include "ccl/tracker.hpp"

#include "ccl/error.hpp"

namespace ccl {

MotionState calibrate(const MotionState& state, const CollarEvent& event, const WellPlan& plan) {
  if (event.kind == CollarKind::rejected_fake || !event.collar_index) {
    throw ContractError("only real or patch events calibrate depth");
  }
  const double depth = plan.depth_of(*event.collar_index);
  const auto source = event.kind == CollarKind::real ? MotionSource::collar_calibrated
                                                     : MotionSource::patch_calibrated;
  MotionState next = estimate_motion(state, event.t, depth, source);
  next.depth = depth;
  next.calibration_count = state.calibration_count + 1;
  next.last_index = *event.collar_index;
  return next;
}

IgnitionDecision ignition_step(const IgnitionDecision& dec, double now, double depth_now, const MotionState& state,
                               const WellPlan& plan, int min_calibrations) {
  if (dec.state != IgnitionState::armed) return dec;
  if (state.calibration_count < min_calibrations || state.source == MotionSource::dead_reckoned) return dec;
  for (std::size_t i = 0; i < plan.intervals.size(); ++i) {
    const auto& iv = plan.intervals[i];
    if (depth_now >= iv.fire_from() && depth_now <= iv.hi) {
      IgnitionDecision out = dec;
      out.state = IgnitionState::ignited;
      out.t_ignite = now;
      out.depth_at_ignite = depth_now;
      out.interval_index = static_cast<int>(i);
      out.cause = "inside-interval";
      return out;
    }
  }
  return dec;
}

IgnitionDecision inhibit_if_passed(const IgnitionDecision& dec, const MotionState& state, const WellPlan& plan) {
  if (dec.state != IgnitionState::armed || plan.intervals.empty()) return dec;
  if (state.calibration_count == 0 || state.depth <= plan.intervals.back().hi) return dec;
  IgnitionDecision out = dec;
  out.state = IgnitionState::inhibited;
  out.cause = "passed-last-interval";
  return out;
}

IgnitionDecision finalize_ignition(const IgnitionDecision& dec) {
  if (dec.state != IgnitionState::armed) return dec;
  IgnitionDecision out = dec;
  out.state = IgnitionState::inhibited;
  out.cause = "end-of-run";
  return out;
}

const char* to_string(IgnitionState s) {
  switch (s) {
    case IgnitionState::armed: return "armed";
    case IgnitionState::ignited: return "ignited";
    case IgnitionState::inhibited: return "inhibited";
  }
  return "?";
}

}  // namespace ccl

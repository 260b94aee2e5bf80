#include "ccl/motion.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ccl/error.hpp"

namespace ccl {

double MotionPrior::speed_at(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= ramp_time) return v_target;
  return v_target * t / ramp_time;
}

double MotionPrior::accel_at(double t) const {
  if (t < 0.0 || t >= ramp_time) return 0.0;
  return v_target / ramp_time;
}

double MotionPrior::depth_at(double t) const {
  if (t <= 0.0) return start_depth;
  if (t < ramp_time) return start_depth + 0.5 * v_target * t * t / ramp_time;
  return start_depth + 0.5 * v_target * ramp_time + v_target * (t - ramp_time);
}

double MotionPrior::time_at(double depth) const {
  const double d = depth - start_depth;
  if (d <= 0.0) return 0.0;
  const double ramp_distance = 0.5 * v_target * ramp_time;
  if (d < ramp_distance) return std::sqrt(2.0 * d * ramp_time / v_target);
  return ramp_time + (d - ramp_distance) / v_target;
}

MotionState MotionPrior::initial_state() const {
  MotionState s;
  s.depth = start_depth;
  return s;
}

void MotionPrior::validate() const {
  if (!(v_target > 0.0) || !std::isfinite(v_target)) throw ConfigError("prior.v_target must be positive");
  if (!(ramp_time >= 0.0) || !std::isfinite(ramp_time)) throw ConfigError("prior.ramp_time must be >= 0");
  if (!(start_depth >= 0.0) || !std::isfinite(start_depth)) throw ConfigError("prior.start_depth must be >= 0");
}

MotionState estimate_motion(const MotionState& prev, double event_t, double event_depth,
                            MotionSource source) {
  const double dt = event_t - prev.t_updated;
  if (!(dt > 0.0)) throw ContractError("motion update needs a positive time step");
  MotionState next = prev;
  next.speed = (event_depth - prev.depth) / dt;
  next.accel = (next.speed - prev.speed) / dt;
  next.depth = event_depth;
  next.t_updated = event_t;
  next.source = source;
  return next;
}

double dead_reckon(const MotionState& state, double now, double speed_max) {
  const double dt = now - state.t_updated;
  if (dt <= 0.0) return state.depth;
  const double v0 = std::clamp(state.speed, 0.0, speed_max);
  const double a = state.accel;
  // Time at which the projected speed hits a bound, if it does within dt.
  double t_sat = dt;
  double v_after = v0;
  if (a > 0.0 && v0 + a * dt > speed_max) {
    t_sat = (speed_max - v0) / a;
    v_after = speed_max;
  } else if (a < 0.0 && v0 + a * dt < 0.0) {
    t_sat = -v0 / a;
    v_after = 0.0;
  }
  return state.depth + v0 * t_sat + 0.5 * a * t_sat * t_sat + v_after * (dt - t_sat);
}

double predict_depth(const MotionState& state, const MotionPrior& prior, double now, double speed_max) {
  if (state.calibration_count == 0) {
    return state.depth + prior.depth_at(now) - prior.depth_at(state.t_updated);
  }
  return dead_reckon(state, now, speed_max);
}

MotionSmoother::MotionSmoother(const MotionPrior& prior, std::size_t history, std::size_t min_joints)
    : prior_(prior), history_(std::max<std::size_t>(history, 1)), min_joints_(min_joints) {}

namespace {

double median(const std::deque<double>& values) {
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

MotionState MotionSmoother::track(const MotionState& calibrated) {
  MotionState out = calibrated;
  // The first calibration measures the average speed since the start of the
  // run, not the current speed.
  if (calibrated.calibration_count >= 2) {
    speeds_.push_back(calibrated.speed);
    accels_.push_back(calibrated.accel);
    if (speeds_.size() > history_) {
      speeds_.pop_front();
      accels_.pop_front();
    }
  }
  if (speeds_.size() < std::max<std::size_t>(min_joints_, 1)) {
    out.speed = prior_.speed_at(calibrated.t_updated);
    out.accel = prior_.accel_at(calibrated.t_updated);
  } else {
    out.speed = median(speeds_);
    out.accel = median(accels_);
  }
  return out;
}

const char* to_string(MotionSource s) {
  switch (s) {
    case MotionSource::dead_reckoned: return "dead-reckoned";
    case MotionSource::collar_calibrated: return "collar-calibrated";
    case MotionSource::patch_calibrated: return "patch-calibrated";
  }
  return "?";
}

}  // namespace ccl

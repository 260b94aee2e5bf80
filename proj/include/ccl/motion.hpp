#pragma once

#include <cstddef>
#include <deque>

namespace ccl {

enum class MotionSource { dead_reckoned, collar_calibrated, patch_calibrated };

struct MotionState {
  double depth = 0.0;  // meters, positive downward
  double speed = 0.0;  // m/s, positive descending
  double accel = 0.0;  // m/s^2
  double t_updated = 0.0;
  int calibration_count = 0;
  MotionSource source = MotionSource::dead_reckoned;
  int last_index = 0;  // collar index of the last calibration, 0 before any
};

// Winch descent profile assumed before collar calibrations exist: linear ramp
// from rest to v_target over ramp_time, constant afterwards.
struct MotionPrior {
  double start_depth = 0.0;
  double v_target = 8.0 / 3.6;
  double ramp_time = 30.0;

  double speed_at(double t) const;
  double accel_at(double t) const;
  double depth_at(double t) const;
  // Inverse of depth_at for depths at or below start_depth.
  double time_at(double depth) const;
  MotionState initial_state() const;
  // Throws ConfigError.
  void validate() const;
};

// Finite-difference speed and acceleration from the previous state to a new
// (time, depth) boundary condition. Throws ContractError unless
// event_t > prev.t_updated. calibration_count and last_index are copied.
MotionState estimate_motion(const MotionState& prev, double event_t, double event_depth,
                            MotionSource source);

// depth + v*dt + a*dt^2/2, with the projected speed held inside [0, speed_max].
double dead_reckon(const MotionState& state, double now, double speed_max);

// Dead reckoning once calibrated; before the first calibration the prior
// trajectory anchored at the state's depth.
double predict_depth(const MotionState& state, const MotionPrior& prior, double now, double speed_max);

// Replaces the finite-difference speed of a freshly calibrated state with a
// robust tracking estimate: the prior profile speed until `min_joints` joint
// speeds have been observed, then the median of the most recent `history`
// joint speeds. A single mis-timed calibration therefore cannot skew the
// prediction for the next collar.
class MotionSmoother {
 public:
  MotionSmoother(const MotionPrior& prior, std::size_t history = 5, std::size_t min_joints = 3);

  // `calibrated` is the output of calibrate(); returns the tracking state.
  MotionState track(const MotionState& calibrated);

  std::size_t joints_observed() const { return speeds_.size(); }

 private:
  MotionPrior prior_;
  std::size_t history_;
  std::size_t min_joints_;
  std::deque<double> speeds_;
  std::deque<double> accels_;
};

const char* to_string(MotionSource s);

}  // namespace ccl

#pragma once

// Physical-plausibility filtering of candidate pulses.
//
// A pulse is accepted as a real collar only if treating it as the next
// upcoming collar implies a speed and acceleration inside the configured
// limits, preserves collar order, and lands within the match tolerance of
// the dead-reckoned depth. Collars that should have been seen but were not
// are inserted as patch events at their predicted time, unless a pulse that
// was rejected only for landing too far from the prediction explains the
// missing collar better (see recover_missed).

#include <optional>
#include <span>
#include <vector>

#include "ccl/motion.hpp"
#include "ccl/signal.hpp"
#include "ccl/well_plan.hpp"

namespace ccl {

struct PlausibilityLimits {
  double speed_max = 5.0;
  double accel_max = 2.0;
  double patch_overdue_factor = 1.5;
  double match_tolerance = 2.0;
  // Before two calibrations the speed is not measured yet, so the match window
  // widens to this fraction of the nominal joint length.
  double bootstrap_joint_fraction = 0.4;
  // How far (as a fraction of the nominal joint length) a mismatch-rejected
  // pulse may sit from an overdue collar and still be promoted instead of a
  // patch. Zero disables recovery.
  double recovery_joint_fraction = 0.4;

  // Throws ConfigError.
  void validate() const;
  double tolerance_for(const MotionState& prev, const WellPlan& plan) const;
  double recovery_tolerance(const WellPlan& plan) const;
};

enum class CollarKind { real, patch, rejected_fake };

enum class RejectReason { none, order, speed, accel, mismatch, no_collar };

struct CollarEvent {
  CollarKind kind = CollarKind::real;
  double t = 0.0;
  std::optional<int> collar_index;
  std::optional<double> depth;
  std::optional<CandidatePulse> pulse;
  RejectReason reason = RejectReason::none;
  double predicted_depth = 0.0;  // dead-reckoned depth at t
  // A real event promoted from an earlier mismatch rejection.
  bool recovered = false;
};

// `prior` is required while prev has no calibration; throws ContractError
// otherwise. Throws ConfigError for an empty plan.
CollarEvent validate_event(const CandidatePulse& pulse, const MotionState& prev, const WellPlan& plan,
                           const PlausibilityLimits& limits, const MotionPrior* prior);

// Patch event for the next collar once the time since the last calibration
// exceeds patch_overdue_factor times the expected travel time. Requires a
// positive speed and at least two calibrations.
std::optional<CollarEvent> check_patch_due(double now, const MotionState& prev, const WellPlan& plan,
                                           const PlausibilityLimits& limits);

// Called when `patch` is due: among pulses rejected for mismatch since the
// last calibration, picks the one whose predicted depth is closest to the
// patched collar, provided it lies within recovery_tolerance and treating it
// as that collar passes the speed and acceleration limits. The result is a
// real event (recovered = true) that replaces the patch.
std::optional<CollarEvent> recover_missed(const CollarEvent& patch, const MotionState& prev,
                                          std::span<const CollarEvent> rejected, const PlausibilityLimits& limits,
                                          const WellPlan& plan);

// Patch events for plan collars skipped between the last calibration and a
// real event that matched further ahead, in collar order. Times are
// interpolated in depth between the two boundary conditions (along the prior
// trajectory when nothing is calibrated yet).
std::vector<CollarEvent> fill_skipped(const MotionState& prev, const CollarEvent& real, const WellPlan& plan,
                                      const MotionPrior* prior);

const char* to_string(CollarKind k);
const char* to_string(RejectReason r);

}  // namespace ccl

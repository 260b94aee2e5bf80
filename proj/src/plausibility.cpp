#include "ccl/plausibility.hpp"

#include <algorithm>
#include <cmath>

#include "ccl/error.hpp"

namespace ccl {

void PlausibilityLimits::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(speed_max)) throw ConfigError("plausibility.speed_max must be positive");
  if (!positive(accel_max)) throw ConfigError("plausibility.accel_max must be positive");
  if (!positive(match_tolerance)) throw ConfigError("plausibility.match_tolerance must be positive");
  if (!(patch_overdue_factor > 1.0) || !std::isfinite(patch_overdue_factor)) {
    throw ConfigError("plausibility.patch_overdue_factor must exceed 1");
  }
  if (!(bootstrap_joint_fraction >= 0.0 && bootstrap_joint_fraction < 0.5)) {
    throw ConfigError("plausibility.bootstrap_joint_fraction must lie in [0, 0.5)");
  }
  if (!(recovery_joint_fraction >= 0.0 && recovery_joint_fraction < 0.5)) {
    throw ConfigError("plausibility.recovery_joint_fraction must lie in [0, 0.5)");
  }
}

double PlausibilityLimits::tolerance_for(const MotionState& prev, const WellPlan& plan) const {
  if (prev.calibration_count >= 2) return match_tolerance;
  return std::max(match_tolerance, bootstrap_joint_fraction * plan.nominal_joint_length);
}

double PlausibilityLimits::recovery_tolerance(const WellPlan& plan) const {
  return recovery_joint_fraction * plan.nominal_joint_length;
}

CollarEvent validate_event(const CandidatePulse& pulse, const MotionState& prev, const WellPlan& plan,
                           const PlausibilityLimits& limits, const MotionPrior* prior) {
  if (plan.collars.empty()) throw ConfigError("well plan has no collars");
  if (prev.calibration_count == 0 && prior == nullptr) {
    throw ContractError("an uncalibrated motion state needs a motion prior");
  }

  CollarEvent ev;
  ev.kind = CollarKind::rejected_fake;
  ev.t = pulse.t_center;
  ev.pulse = pulse;
  const double predicted = prev.calibration_count == 0
                               ? predict_depth(prev, *prior, ev.t, limits.speed_max)
                               : dead_reckon(prev, ev.t, limits.speed_max);
  ev.predicted_depth = predicted;

  auto reject = [&ev](RejectReason r) {
    ev.reason = r;
    return ev;
  };

  const double dt = ev.t - prev.t_updated;
  if (!(dt > 0.0)) return reject(RejectReason::order);

  const double tolerance = limits.tolerance_for(prev, plan);

  // A pulse that sits on a collar already accounted for is a duplicate.
  if (prev.last_index > 0) {
    const auto& nearest = plan.collars[plan.nearest(predicted)];
    if (nearest.index <= prev.last_index && std::abs(nearest.depth - predicted) <= tolerance) {
      return reject(RejectReason::order);
    }
  }

  const auto first = plan.first_after(prev.last_index);
  if (!first) return reject(RejectReason::no_collar);
  const auto& candidate = plan.collars[std::max(*first, plan.nearest(predicted))];

  const double implied_speed = (candidate.depth - prev.depth) / dt;
  if (implied_speed < 0.0 || implied_speed > limits.speed_max) return reject(RejectReason::speed);
  const double implied_accel = (implied_speed - prev.speed) / dt;
  if (std::abs(implied_accel) > limits.accel_max) return reject(RejectReason::accel);
  if (std::abs(candidate.depth - predicted) > tolerance) return reject(RejectReason::mismatch);

  ev.kind = CollarKind::real;
  ev.reason = RejectReason::none;
  ev.collar_index = candidate.index;
  ev.depth = candidate.depth;
  return ev;
}

std::optional<CollarEvent> check_patch_due(double now, const MotionState& prev, const WellPlan& plan,
                                           const PlausibilityLimits& limits) {
  if (prev.calibration_count < 2 || !(prev.speed > 0.0)) return std::nullopt;
  const auto next = plan.first_after(prev.last_index);
  if (!next) return std::nullopt;
  const auto& collar = plan.collars[*next];
  const double travel = (collar.depth - prev.depth) / prev.speed;
  if (!(now > prev.t_updated + limits.patch_overdue_factor * travel)) return std::nullopt;

  CollarEvent ev;
  ev.kind = CollarKind::patch;
  ev.t = prev.t_updated + travel;
  ev.collar_index = collar.index;
  ev.depth = collar.depth;
  ev.predicted_depth = collar.depth;
  return ev;
}

std::optional<CollarEvent> recover_missed(const CollarEvent& patch, const MotionState& prev,
                                          std::span<const CollarEvent> rejected, const PlausibilityLimits& limits,
                                          const WellPlan& plan) {
  if (patch.kind != CollarKind::patch || !patch.depth) return std::nullopt;
  const double target = *patch.depth;
  const double tolerance = limits.recovery_tolerance(plan);
  if (!(tolerance > 0.0)) return std::nullopt;
  const CollarEvent* best = nullptr;
  for (const auto& e : rejected) {
    if (e.kind != CollarKind::rejected_fake || e.reason != RejectReason::mismatch || !e.pulse) continue;
    const double dt = e.t - prev.t_updated;
    if (!(dt > 0.0)) continue;
    const double miss = std::abs(target - e.predicted_depth);
    if (miss > tolerance) continue;
    const double implied_speed = (target - prev.depth) / dt;
    if (implied_speed < 0.0 || implied_speed > limits.speed_max) continue;
    if (std::abs((implied_speed - prev.speed) / dt) > limits.accel_max) continue;
    if (!best || miss < std::abs(target - best->predicted_depth)) best = &e;
  }
  if (!best) return std::nullopt;
  CollarEvent ev = *best;
  ev.kind = CollarKind::real;
  ev.reason = RejectReason::none;
  ev.collar_index = patch.collar_index;
  ev.depth = patch.depth;
  ev.recovered = true;
  return ev;
}

std::vector<CollarEvent> fill_skipped(const MotionState& prev, const CollarEvent& real, const WellPlan& plan,
                                      const MotionPrior* prior) {
  std::vector<CollarEvent> out;
  if (real.kind != CollarKind::real || !real.collar_index || !real.depth) return out;
  auto pos = plan.first_after(prev.last_index);
  for (; pos && plan.collars[*pos].index < *real.collar_index; pos = plan.first_after(plan.collars[*pos].index)) {
    const auto& collar = plan.collars[*pos];
    double t = 0.0;
    if (prev.calibration_count == 0 && prior != nullptr) {
      const double shift = prior->depth_at(real.t) - *real.depth;
      t = prior->time_at(collar.depth + shift);
    } else {
      const double span = *real.depth - prev.depth;
      const double frac = span > 0.0 ? (collar.depth - prev.depth) / span : 0.5;
      t = prev.t_updated + frac * (real.t - prev.t_updated);
    }
    // Keep patch times strictly between the two boundary conditions.
    const double lo = out.empty() ? prev.t_updated : out.back().t;
    if (!(t > lo) || !(t < real.t)) t = 0.5 * (lo + real.t);

    CollarEvent ev;
    ev.kind = CollarKind::patch;
    ev.t = t;
    ev.collar_index = collar.index;
    ev.depth = collar.depth;
    ev.predicted_depth = collar.depth;
    out.push_back(ev);
  }
  return out;
}

const char* to_string(CollarKind k) {
  switch (k) {
    case CollarKind::real: return "real";
    case CollarKind::patch: return "patch";
    case CollarKind::rejected_fake: return "rejected-fake";
  }
  return "?";
}

const char* to_string(RejectReason r) {
  switch (r) {
    case RejectReason::none: return "none";
    case RejectReason::order: return "order";
    case RejectReason::speed: return "speed";
    case RejectReason::accel: return "accel";
    case RejectReason::mismatch: return "mismatch";
    case RejectReason::no_collar: return "no-collar";
  }
  return "?";
}

}  // namespace ccl

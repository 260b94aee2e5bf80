#pragma once

// The embedded processing chain: signal -> plausibility -> tracker, driven
// one sample at a time. Every state change is emitted as an event log record.
//
// Per sample the order is fixed: pulse verdict (gate, validation, gap-fill
// patches, calibration), overdue collar (recovered pulse or patch), ignition
// check, then the periodic sample/threshold snapshots.

#include <functional>
#include <span>
#include <vector>

#include "ccl/config.hpp"
#include "ccl/event_log.hpp"
#include "ccl/motion.hpp"
#include "ccl/plausibility.hpp"
#include "ccl/signal.hpp"
#include "ccl/tracker.hpp"
#include "ccl/well_plan.hpp"

namespace ccl {

using RecordSink = std::function<void(const ordered_json&)>;

class DetectionPipeline {
 public:
  // Throws ConfigError / PlanError. The sink, when set, sees every record.
  DetectionPipeline(WellPlan plan, DetectConfig config, RecordSink sink = {});

  // Throws IngestError with the stream index for invalid samples.
  void push(const Sample& s);
  // Flushes an open excursion and latches the ignition decision.
  void finish();

  const WellPlan& plan() const { return plan_; }
  const DetectConfig& config() const { return config_; }
  const std::vector<CollarEvent>& events() const { return events_; }
  const MotionState& motion() const { return motion_; }
  const IgnitionDecision& ignition() const { return ignition_; }
  const SignalDetector& detector() const { return detector_; }
  bool finished() const { return finished_; }
  // Depth estimate at the last processed sample.
  double depth_now() const { return depth_now_; }

 private:
  void emit(ordered_json record);
  void handle_verdict(const PulseVerdict& v, double now);
  void accept(const CollarEvent& e, double now);
  void step_ignition(double now);

  WellPlan plan_;
  DetectConfig config_;
  RecordSink sink_;
  SignalDetector detector_;
  MotionSmoother smoother_;
  MotionState motion_;
  IgnitionDecision ignition_;
  std::vector<CollarEvent> events_;
  std::vector<CollarEvent> rejected_since_calibration_;
  std::int64_t seq_ = 0;
  double now_ = 0.0;
  double depth_now_ = 0.0;
  bool finished_ = false;
};

struct DetectResult {
  EventLog log;
  std::vector<CollarEvent> events;
  MotionState final_motion;
  IgnitionDecision ignition;
};

// Offline run over a whole trace.
DetectResult run_detect(std::span<const Sample> trace, const WellPlan& plan, const DetectConfig& config);

}  // namespace ccl

#include "ccl/pipeline.hpp"

#include "ccl/error.hpp"

namespace ccl {

namespace {

ordered_json record(std::int64_t seq, const char* type, double t) {
  ordered_json r;
  r["seq"] = seq;
  r["type"] = type;
  r["t"] = t;
  return r;
}

}  // namespace

DetectionPipeline::DetectionPipeline(WellPlan plan, DetectConfig config, RecordSink sink)
    : plan_(std::move(plan)),
      config_(std::move(config)),
      sink_(std::move(sink)),
      detector_((config_.validate(), config_.signal)),
      smoother_(config_.prior, config_.tracker.speed_history, config_.tracker.min_joints),
      motion_(config_.prior.initial_state()) {
  plan_.validate();
  depth_now_ = motion_.depth;

  auto r = record(seq_, "start", 0.0);
  ordered_json intervals = ordered_json::array();
  for (const auto& iv : plan_.intervals) {
    ordered_json j = {{"lo", iv.lo}, {"hi", iv.hi}};
    if (iv.target) j["target"] = *iv.target;
    intervals.push_back(j);
  }
  r["plan"] = {{"collars", plan_.collars.size()},
               {"first_index", plan_.collars.front().index},
               {"last_index", plan_.collars.back().index},
               {"nominal_joint_length", plan_.nominal_joint_length},
               {"intervals", intervals}};
  r["config"] = to_json(config_);
  emit(std::move(r));
}

void DetectionPipeline::emit(ordered_json r) {
  ++seq_;
  if (sink_) sink_(r);
}

void DetectionPipeline::push(const Sample& s) {
  if (finished_) throw ContractError("pipeline already finished");
  const auto verdict = detector_.push(s);
  now_ = s.t;
  if (verdict) handle_verdict(*verdict, now_);
  if (auto patch = check_patch_due(now_, motion_, plan_, config_.limits)) {
    const auto recovered = recover_missed(*patch, motion_, rejected_since_calibration_, config_.limits, plan_);
    accept(recovered ? *recovered : *patch, now_);
  }
  step_ignition(now_);

  const std::uint64_t index = detector_.samples_seen() - 1;
  if (config_.log.sample_every && index % config_.log.sample_every == 0) {
    auto r = record(seq_, "sample", now_);
    r["index"] = index;
    r["x"] = s.x;
    emit(std::move(r));
  }
  const auto& th = detector_.last_thresholds();
  if (config_.log.threshold_every && index % config_.log.threshold_every == 0 && th) {
    auto r = record(seq_, "threshold", now_);
    r["index"] = index;
    r["x"] = s.x;
    r["mu"] = th->mu;
    r["sigma"] = th->sigma;
    r["upper"] = th->upper;
    r["lower"] = th->lower;
    r["depth"] = depth_now_;
    emit(std::move(r));
  }
}

void DetectionPipeline::handle_verdict(const PulseVerdict& v, double now) {
  if (v.gate != GateResult::accept) {
    auto r = record(seq_, "gate", now);
    r["result"] = to_string(v.gate);
    r["pulse"] = to_json(v.pulse);
    emit(std::move(r));
    return;
  }
  const CollarEvent ev = validate_event(v.pulse, motion_, plan_, config_.limits, &config_.prior);
  if (ev.kind != CollarKind::real) {
    events_.push_back(ev);
    rejected_since_calibration_.push_back(ev);
    auto r = record(seq_, "collar", now);
    r.update(to_json(ev));
    emit(std::move(r));
    return;
  }
  for (const auto& patch : fill_skipped(motion_, ev, plan_, &config_.prior)) accept(patch, now);
  accept(ev, now);
}

void DetectionPipeline::accept(const CollarEvent& e, double now) {
  events_.push_back(e);
  auto r = record(seq_, "collar", now);
  r.update(to_json(e));
  emit(std::move(r));

  rejected_since_calibration_.clear();
  const MotionState raw = calibrate(motion_, e, plan_);
  motion_ = smoother_.track(raw);
  auto c = record(seq_, "calibration", now);
  c["event_t"] = motion_.t_updated;
  c["index"] = motion_.last_index;
  c["depth"] = motion_.depth;
  c["speed"] = motion_.speed;
  c["accel"] = motion_.accel;
  c["raw_speed"] = raw.speed;
  c["raw_accel"] = raw.accel;
  c["count"] = motion_.calibration_count;
  c["source"] = to_string(motion_.source);
  emit(std::move(c));

  const auto next = inhibit_if_passed(ignition_, motion_, plan_);
  if (next.state != ignition_.state) {
    ignition_ = next;
    auto ig = record(seq_, "ignition", now);
    ig["state"] = to_string(ignition_.state);
    ig["cause"] = ignition_.cause;
    ig["depth"] = motion_.depth;
    ig["last_index"] = motion_.last_index;
    emit(std::move(ig));
  }
}

void DetectionPipeline::step_ignition(double now) {
  depth_now_ = predict_depth(motion_, config_.prior, now, config_.limits.speed_max);
  const auto next = ignition_step(ignition_, now, depth_now_, motion_, plan_, config_.tracker.min_calibrations);
  if (next.state == ignition_.state) return;
  ignition_ = next;
  auto r = record(seq_, "ignition", now);
  r["state"] = to_string(ignition_.state);
  r["cause"] = ignition_.cause;
  r["depth"] = ignition_.depth_at_ignite;
  r["interval"] = ignition_.interval_index;
  r["last_index"] = motion_.last_index;
  emit(std::move(r));
}

void DetectionPipeline::finish() {
  if (finished_) return;
  if (auto v = detector_.finish()) {
    handle_verdict(*v, now_);
    step_ignition(now_);
  }
  const auto final_decision = finalize_ignition(ignition_);
  if (final_decision.state != ignition_.state) {
    ignition_ = final_decision;
    auto r = record(seq_, "ignition", now_);
    r["state"] = to_string(ignition_.state);
    r["cause"] = ignition_.cause;
    r["depth"] = depth_now_;
    r["last_index"] = motion_.last_index;
    emit(std::move(r));
  }
  auto r = record(seq_, "end", now_);
  r["samples"] = detector_.samples_seen();
  r["final_depth"] = depth_now_;
  r["last_index"] = motion_.last_index;
  r["calibrations"] = motion_.calibration_count;
  r["ignition"] = to_string(ignition_.state);
  emit(std::move(r));
  finished_ = true;
}

DetectResult run_detect(std::span<const Sample> trace, const WellPlan& plan, const DetectConfig& config) {
  DetectResult result;
  DetectionPipeline pipeline(plan, config, [&result](const ordered_json& r) { result.log.records.push_back(r); });
  for (const auto& s : trace) pipeline.push(s);
  pipeline.finish();
  result.events = pipeline.events();
  result.final_motion = pipeline.motion();
  result.ignition = pipeline.ignition();
  return result;
}

}  // namespace ccl

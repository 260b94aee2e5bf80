#include "ccl/signal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ccl/error.hpp"

namespace ccl {

RollingWindow::RollingWindow(std::size_t capacity) : buffer_(capacity, 0.0) {
  if (capacity == 0) throw ContractError("window capacity must be positive");
}

void RollingWindow::push(double x) {
  if (!std::isfinite(x)) throw IngestError(pushed_, "non-finite amplitude");
  ++pushed_;
  if (count_ == 0) {
    pivot_ = x;
    s1_ = 0.0;
    s2_ = 0.0;
  }
  const double d = x - pivot_;
  if (full()) {
    const double old = buffer_[head_] - pivot_;
    s1_ -= old;
    s2_ -= old * old;
    buffer_[head_] = x;
    head_ = (head_ + 1) % buffer_.size();
    ++evictions_;
  } else {
    buffer_[(head_ + count_) % buffer_.size()] = x;
    ++count_;
  }
  s1_ += d;
  s2_ += d * d;
  if (evictions_ >= buffer_.size()) resync();
}

void RollingWindow::clear() {
  head_ = 0;
  count_ = 0;
  evictions_ = 0;
  pivot_ = s1_ = s2_ = 0.0;
}

void RollingWindow::resync() {
  evictions_ = 0;
  double total = 0.0;
  for (std::size_t i = 0; i < count_; ++i) total += buffer_[i];
  pivot_ = total / static_cast<double>(count_);
  s1_ = 0.0;
  s2_ = 0.0;
  for (std::size_t i = 0; i < count_; ++i) {
    const double d = buffer_[i] - pivot_;
    s1_ += d;
    s2_ += d * d;
  }
}

double RollingWindow::sum() const { return static_cast<double>(count_) * pivot_ + s1_; }

double RollingWindow::sum_sq() const {
  const double n = static_cast<double>(count_);
  return n * pivot_ * pivot_ + 2.0 * pivot_ * s1_ + s2_;
}

double RollingWindow::mean() const {
  if (count_ == 0) return 0.0;
  return pivot_ + s1_ / static_cast<double>(count_);
}

double RollingWindow::raw_variance() const {
  if (count_ == 0) return 0.0;
  const double n = static_cast<double>(count_);
  const double m = s1_ / n;
  return s2_ / n - m * m;
}

std::vector<double> RollingWindow::contents() const {
  std::vector<double> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < count_; ++i) out.push_back(buffer_[(head_ + i) % buffer_.size()]);
  return out;
}

ThresholdPair make_thresholds(double mu, double variance, double coefficient) {
  ThresholdPair th;
  th.mu = mu;
  th.sigma = std::sqrt(std::max(0.0, variance));
  th.upper = mu + coefficient * th.sigma;
  th.lower = mu - coefficient * th.sigma;
  return th;
}

ThresholdPair thresholds(const RollingWindow& window, double coefficient) {
  if (!(coefficient > 0.0)) throw ContractError("threshold coefficient must be positive");
  if (window.count() < 2) throw InsufficientData("window holds fewer than 2 samples");
  return make_thresholds(window.mean(), window.raw_variance(), coefficient);
}

Region classify_sample(double x, const ThresholdPair& th) {
  if (x > th.upper) return Region::above_upper;
  if (x < th.lower) return Region::below_lower;
  return Region::inside;
}

std::optional<CandidatePulse> ExcursionTracker::update(const Sample& s, std::uint64_t index,
                                                       Region region, const ThresholdPair& th) {
  if (region == Region::inside) {
    if (open_ && ++trailing_inside_ > gap_tolerance_) return close();
    return std::nullopt;
  }
  if (!open_) {
    open_ = true;
    saw_above_ = saw_below_ = false;
    peak_excess_ = -1.0;
    current_ = CandidatePulse{};
    current_.index_start = index;
    current_.t_start = s.t;
    current_.thresholds_at_start = th;
  }
  trailing_inside_ = 0;
  current_.index_end = index;
  current_.t_end = s.t;
  (region == Region::above_upper ? saw_above_ : saw_below_) = true;
  const double excess = std::abs(s.x - current_.thresholds_at_start.mu);
  if (excess > peak_excess_) {
    peak_excess_ = excess;
    current_.peak_amplitude = s.x;
  }
  return std::nullopt;
}

std::optional<CandidatePulse> ExcursionTracker::flush() {
  if (!open_) return std::nullopt;
  return close();
}

CandidatePulse ExcursionTracker::close() {
  open_ = false;
  trailing_inside_ = 0;
  CandidatePulse p = current_;
  p.width_samples = p.index_end - p.index_start + 1;
  p.width_seconds = p.t_end - p.t_start;
  p.t_center = 0.5 * (p.t_start + p.t_end);
  if (saw_above_ && saw_below_) {
    p.polarity = Polarity::mixed;
  } else {
    p.polarity = saw_above_ ? Polarity::above_upper : Polarity::below_lower;
  }
  return p;
}

GateResult gate_pulse(const CandidatePulse& p, std::uint64_t min_width, std::uint64_t max_width) {
  if (min_width < 1 || max_width <= min_width) {
    throw ContractError("pulse gate requires 1 <= min_width < max_width");
  }
  if (p.width_samples < min_width) return GateResult::reject_spike;
  if (p.width_samples > max_width) return GateResult::reject_overlong;
  return GateResult::accept;
}

void SignalConfig::validate() const {
  if (window < 2) throw ConfigError("signal.window must be at least 2");
  if (!(coefficient > 0.0) || !std::isfinite(coefficient)) {
    throw ConfigError("signal.coefficient must be positive");
  }
  if (min_width < 1 || max_width <= min_width) {
    throw ConfigError("signal widths must satisfy 1 <= min_width < max_width");
  }
}

SignalDetector::SignalDetector(const SignalConfig& config)
    : config_(config), window_(config.window), excursions_(config.gap_tolerance) {
  config_.validate();
}

std::optional<PulseVerdict> SignalDetector::verdict(std::optional<CandidatePulse> p) const {
  if (!p) return std::nullopt;
  return PulseVerdict{*p, gate_pulse(*p, config_.min_width, config_.max_width)};
}

std::optional<PulseVerdict> SignalDetector::push(const Sample& s) {
  const std::uint64_t index = next_index_;
  if (!std::isfinite(s.t) || s.t < 0.0) throw IngestError(index, "time must be finite and non-negative");
  if (index > 0 && s.t < last_t_) throw IngestError(index, "time went backwards");
  if (!std::isfinite(s.x)) throw IngestError(index, "non-finite amplitude");
  ++next_index_;
  last_t_ = s.t;

  if (window_.count() >= 2) {
    last_thresholds_ = thresholds(window_, config_.coefficient);
  } else {
    last_thresholds_.reset();
  }

  Region region = Region::inside;
  std::optional<CandidatePulse> closed;
  if (warmed_up_) {
    region = classify_sample(s.x, *last_thresholds_);
    closed = excursions_.update(s, index, region, *last_thresholds_);
  }
  last_region_ = region;

  if (region == Region::inside || excursions_.span_to(index) > window_.capacity()) {
    window_.push(s.x);
    if (!warmed_up_ && window_.full()) warmed_up_ = true;
  }
  return verdict(closed);
}

std::optional<PulseVerdict> SignalDetector::finish() { return verdict(excursions_.flush()); }

const char* to_string(Region r) {
  switch (r) {
    case Region::inside: return "inside";
    case Region::above_upper: return "above-upper";
    case Region::below_lower: return "below-lower";
  }
  return "?";
}

const char* to_string(Polarity p) {
  switch (p) {
    case Polarity::above_upper: return "above-upper";
    case Polarity::below_lower: return "below-lower";
    case Polarity::mixed: return "mixed";
  }
  return "?";
}

const char* to_string(GateResult g) {
  switch (g) {
    case GateResult::accept: return "accept";
    case GateResult::reject_spike: return "reject-spike";
    case GateResult::reject_overlong: return "reject-overlong";
  }
  return "?";
}

}  // namespace ccl

#pragma once

// Dynamic 2-norm threshold detection of collar pulses in a CCL sample stream.
//
// Thresholds are mu +/- A * sigma over the last N accepted samples, where
// sigma = sqrt(mean(x^2) - mu^2). Samples beyond the thresholds are grouped
// into excursions; each finished excursion becomes a CandidatePulse whose
// width is gated against [min_width, max_width].

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ccl {

struct Sample {
  double t = 0.0;  // seconds since stream start
  double x = 0.0;  // normalized CCL amplitude
};

// Fixed-capacity window of the most recent samples with O(1) running sums.
//
// The sums are kept relative to a pivot value (shifted-data form) and are
// recomputed from the buffer once every `capacity` evictions, which bounds
// accumulated rounding drift on long streams.
class RollingWindow {
 public:
  explicit RollingWindow(std::size_t capacity);

  // Throws IngestError for a non-finite amplitude.
  void push(double x);
  void clear();

  std::size_t capacity() const { return buffer_.size(); }
  std::size_t count() const { return count_; }
  bool full() const { return count_ == buffer_.size(); }

  double sum() const;
  double sum_sq() const;
  double mean() const;
  // sum_sq/count - mean^2 before clamping; may be a tiny negative number.
  double raw_variance() const;

  // Oldest first.
  std::vector<double> contents() const;

 private:
  void resync();

  std::vector<double> buffer_;
  std::size_t head_ = 0;  // slot of the oldest sample once full
  std::size_t count_ = 0;
  std::size_t evictions_ = 0;
  std::uint64_t pushed_ = 0;
  double pivot_ = 0.0;
  double s1_ = 0.0;  // sum of (x - pivot)
  double s2_ = 0.0;  // sum of (x - pivot)^2
};

struct ThresholdPair {
  double mu = 0.0;
  double sigma = 0.0;
  double upper = 0.0;
  double lower = 0.0;
};

// Throws InsufficientData when the window holds fewer than two samples and
// ContractError when coefficient is not positive.
ThresholdPair thresholds(const RollingWindow& window, double coefficient);

// Same formula from explicit statistics; used by the batch kernels.
ThresholdPair make_thresholds(double mu, double variance, double coefficient);

enum class Region { inside, above_upper, below_lower };

// Exceedance is strict: x == upper or x == lower is inside.
Region classify_sample(double x, const ThresholdPair& th);

enum class Polarity { above_upper, below_lower, mixed };

struct CandidatePulse {
  double t_start = 0.0;
  double t_end = 0.0;
  double t_center = 0.0;
  Polarity polarity = Polarity::above_upper;
  double peak_amplitude = 0.0;
  std::uint64_t width_samples = 0;
  double width_seconds = 0.0;
  std::uint64_t index_start = 0;
  std::uint64_t index_end = 0;
  ThresholdPair thresholds_at_start;
};

// Groups non-inside samples into excursions. Up to gap_tolerance consecutive
// inside samples are absorbed without closing, so the two lobes of a
// bimodal collar signal form one pulse.
class ExcursionTracker {
 public:
  explicit ExcursionTracker(std::uint64_t gap_tolerance = 0) : gap_tolerance_(gap_tolerance) {}

  std::optional<CandidatePulse> update(const Sample& s, std::uint64_t index, Region region,
                                       const ThresholdPair& th);
  // Closes an excursion still open at end of stream.
  std::optional<CandidatePulse> flush();

  bool open() const { return open_; }
  // Samples from the excursion start through `index`, inclusive.
  std::uint64_t span_to(std::uint64_t index) const { return open_ ? index - current_.index_start + 1 : 0; }

 private:
  CandidatePulse close();

  std::uint64_t gap_tolerance_;
  bool open_ = false;
  bool saw_above_ = false;
  bool saw_below_ = false;
  std::uint64_t trailing_inside_ = 0;
  double peak_excess_ = 0.0;
  CandidatePulse current_;
};

enum class GateResult { accept, reject_spike, reject_overlong };

// Throws ContractError unless 1 <= min_width < max_width.
GateResult gate_pulse(const CandidatePulse& p, std::uint64_t min_width, std::uint64_t max_width);

struct SignalConfig {
  std::size_t window = 4096;
  double coefficient = 3.0;
  std::uint64_t min_width = 60;
  std::uint64_t max_width = 400;
  std::uint64_t gap_tolerance = 15;

  // Throws ConfigError.
  void validate() const;
};

struct PulseVerdict {
  CandidatePulse pulse;
  GateResult gate = GateResult::accept;
};

// Streaming front end: validates samples, maintains the window, classifies,
// tracks excursions and gates finished pulses.
//
// Statistics accumulation is frozen while a sample is outside the thresholds
// so a collar pulse does not raise its own threshold. An excursion longer
// than the window itself is treated as a baseline change and the window
// resumes accumulating. No pulses are produced until the window has been
// full once.
class SignalDetector {
 public:
  explicit SignalDetector(const SignalConfig& config);

  // Throws IngestError (with the stream index) for invalid samples.
  std::optional<PulseVerdict> push(const Sample& s);
  std::optional<PulseVerdict> finish();

  const SignalConfig& config() const { return config_; }
  std::uint64_t samples_seen() const { return next_index_; }
  bool warmed_up() const { return warmed_up_; }
  // Thresholds used for the most recent sample, absent during early warm-up.
  const std::optional<ThresholdPair>& last_thresholds() const { return last_thresholds_; }
  Region last_region() const { return last_region_; }
  const RollingWindow& window() const { return window_; }

 private:
  std::optional<PulseVerdict> verdict(std::optional<CandidatePulse> p) const;

  SignalConfig config_;
  RollingWindow window_;
  ExcursionTracker excursions_;
  std::uint64_t next_index_ = 0;
  double last_t_ = 0.0;
  bool warmed_up_ = false;
  std::optional<ThresholdPair> last_thresholds_;
  Region last_region_ = Region::inside;
};

const char* to_string(Region r);
const char* to_string(Polarity p);
const char* to_string(GateResult g);

}  // namespace ccl

#pragma once

// Synthetic CCL traces with ground truth.
//
// The tool is lowered by a winch that ramps from rest to a target speed; a
// bimodal collar waveform is emitted each time the true depth passes a plan
// collar, and interference from the usual field sources is added on top:
// isolated spikes, continuous spike bursts, saturated (clipped) collars,
// baseline Gaussian noise and attenuated (missing) collars.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ccl/signal.hpp"
#include "ccl/well_plan.hpp"

namespace ccl {

struct MotionProfile {
  double v_target = 8.0 / 3.6;  // m/s
  double ramp_time = 30.0;      // s
  double jitter = 0.02;         // relative speed noise amplitude

  // Nominal speed without jitter.
  double nominal_speed(double t) const;
  void validate() const;
};

struct InterferenceConfig {
  double noise_sigma = 1.0;

  // Collar amplitude is log-normal: median * exp(spread * N(0, 1)).
  double collar_amplitude = 10.0;
  double collar_amplitude_spread = 0.3;
  double lobe_length = 0.05;  // m; lobe width in time is lobe_length / speed

  double spike_rate = 0.05;  // per second
  double spike_amplitude = 10.0;
  double spike_amplitude_spread = 0.4;
  double spike_width_min = 0.0005;  // s, Gaussian sigma
  double spike_width_max = 0.040;

  double burst_rate = 0.01;  // per second
  double burst_duration_min = 0.5;
  double burst_duration_max = 3.0;
  double burst_spike_rate = 300.0;  // spikes per second inside a burst
  double burst_amplitude = 6.0;

  double saturation_probability = 0.05;  // per collar
  double saturation_gain_min = 3.0;
  double saturation_gain_max = 6.0;
  double clip_level = 25.0;

  double attenuation_probability = 0.02;  // per collar
  double attenuation_gain = 0.0;

  static InterferenceConfig none();
  static InterferenceConfig moderate();
  void validate() const;
};

// Collar-shaped pulse added on top of the generated trace (fake collars).
struct InjectedPulse {
  double t_center = 0.0;
  double scale = 10.0;
  double lobe_width = 0.0225;
};

struct SimulationOptions {
  std::vector<int> suppress;  // collar indices forced to attenuation_gain 0
  std::vector<InjectedPulse> inject;
  double max_duration = 7200.0;
  // Distance travelled past the last collar; negative means one nominal joint.
  double tail_length = -1.0;
};

struct CollarCrossing {
  int index = 0;
  double depth = 0.0;
  double t = 0.0;
  double amplitude = 0.0;  // waveform scale actually emitted
  double lobe_width = 0.0;
  bool suppressed = false;
  bool saturated = false;
};

enum class InterferenceKind { spike, burst, injected };

struct InterferenceInterval {
  InterferenceKind kind = InterferenceKind::spike;
  double t_start = 0.0;
  double t_end = 0.0;
  double amplitude = 0.0;
};

struct GroundTruth {
  double sample_rate = 1000.0;
  std::size_t depth_stride = 1;  // depth[i] is the true depth at sample i * depth_stride
  std::vector<double> depth;
  std::vector<CollarCrossing> crossings;
  std::vector<InterferenceInterval> interference;

  // Linear interpolation, clamped to the recorded span.
  double depth_at(double t) const;
  std::vector<int> suppressed_indices() const;
  // Copy holding every `stride`-th depth sample.
  GroundTruth decimated(std::size_t stride) const;
};

struct SimulatedRun {
  std::vector<Sample> trace;
  GroundTruth truth;
};

// Antisymmetric bimodal pulse: -scale * u * exp((1 - u^2) / 2), u = t_rel / lobe_width,
// truncated to |u| <= 4. Peak magnitude is `scale` at u = -1 and u = +1.
double collar_waveform(double t_rel, double scale, double lobe_width);
inline constexpr double kWaveformSupport = 4.0;  // in lobe widths

// Deterministic in all arguments. Throws GenerationError when the profile
// cannot pass the last collar within options.max_duration.
SimulatedRun generate_trace(const WellPlan& plan, const MotionProfile& profile, const InterferenceConfig& noise,
                            double sample_rate, std::uint64_t seed, const SimulationOptions& options = {});

const char* to_string(InterferenceKind k);

}  // namespace ccl

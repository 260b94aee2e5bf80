#include "ccl/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "ccl/error.hpp"

namespace ccl {

double MotionProfile::nominal_speed(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= ramp_time) return v_target;
  return v_target * t / ramp_time;
}

void MotionProfile::validate() const {
  if (!(v_target > 0.0) || !std::isfinite(v_target)) throw ConfigError("profile.v_target must be positive");
  if (!(ramp_time >= 0.0) || !std::isfinite(ramp_time)) throw ConfigError("profile.ramp_time must be >= 0");
  if (!(jitter >= 0.0 && jitter < 1.0)) throw ConfigError("profile.jitter must lie in [0, 1)");
}

InterferenceConfig InterferenceConfig::none() {
  InterferenceConfig c;
  c.noise_sigma = 0.0;
  c.spike_rate = 0.0;
  c.burst_rate = 0.0;
  c.saturation_probability = 0.0;
  c.attenuation_probability = 0.0;
  return c;
}

InterferenceConfig InterferenceConfig::moderate() { return InterferenceConfig{}; }

void InterferenceConfig::validate() const {
  auto non_negative = [](double v) { return v >= 0.0 && std::isfinite(v); };
  auto probability = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!non_negative(noise_sigma) || !non_negative(spike_rate) || !non_negative(burst_rate) ||
      !non_negative(burst_spike_rate)) {
    throw ConfigError("interference rates and noise level must be >= 0");
  }
  if (!non_negative(collar_amplitude) || !non_negative(collar_amplitude_spread) || !non_negative(spike_amplitude) ||
      !non_negative(spike_amplitude_spread) || !non_negative(burst_amplitude)) {
    throw ConfigError("interference amplitudes must be >= 0");
  }
  if (!(lobe_length > 0.0)) throw ConfigError("interference.lobe_length must be positive");
  if (!(spike_width_min > 0.0 && spike_width_max >= spike_width_min)) {
    throw ConfigError("interference spike widths must satisfy 0 < min <= max");
  }
  if (!(burst_duration_min > 0.0 && burst_duration_max >= burst_duration_min)) {
    throw ConfigError("interference burst durations must satisfy 0 < min <= max");
  }
  if (!(saturation_gain_min > 0.0 && saturation_gain_max >= saturation_gain_min)) {
    throw ConfigError("interference saturation gains must satisfy 0 < min <= max");
  }
  if (!probability(saturation_probability) || !probability(attenuation_probability)) {
    throw ConfigError("interference probabilities must lie in [0, 1]");
  }
  if (!non_negative(attenuation_gain)) throw ConfigError("interference.attenuation_gain must be >= 0");
  if (!(clip_level > 0.0)) throw ConfigError("interference.clip_level must be positive");
}

double GroundTruth::depth_at(double t) const {
  if (depth.empty()) return 0.0;
  const double pos = t * sample_rate / static_cast<double>(depth_stride);
  if (pos <= 0.0) return depth.front();
  const auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= depth.size()) return depth.back();
  const double f = pos - static_cast<double>(i);
  return depth[i] + f * (depth[i + 1] - depth[i]);
}

std::vector<int> GroundTruth::suppressed_indices() const {
  std::vector<int> out;
  for (const auto& c : crossings) {
    if (c.suppressed) out.push_back(c.index);
  }
  return out;
}

GroundTruth GroundTruth::decimated(std::size_t stride) const {
  GroundTruth out = *this;
  if (stride <= 1) return out;
  out.depth_stride = depth_stride * stride;
  out.depth.clear();
  for (std::size_t i = 0; i < depth.size(); i += stride) out.depth.push_back(depth[i]);
  return out;
}

double collar_waveform(double t_rel, double scale, double lobe_width) {
  const double u = t_rel / lobe_width;
  if (std::abs(u) > kWaveformSupport) return 0.0;
  return -scale * u * std::exp(0.5 * (1.0 - u * u));
}

namespace {

enum Stream : std::uint64_t { kMotion = 1, kCollars, kSpikes, kBursts, kNoise };

std::mt19937_64 make_engine(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

// Smooth bounded speed fluctuation in [-1, 1]: three slow sinusoids.
struct Jitter {
  std::array<double, 3> weight{};
  std::array<double, 3> freq{};
  std::array<double, 3> phase{};

  explicit Jitter(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> w(0.2, 1.0), f(0.005, 0.05), p(0.0, 2.0 * std::numbers::pi);
    double total = 0.0;
    for (int i = 0; i < 3; ++i) {
      weight[i] = w(rng);
      freq[i] = f(rng);
      phase[i] = p(rng);
      total += weight[i];
    }
    for (auto& v : weight) v /= total;
  }

  double operator()(double t) const {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += weight[i] * std::sin(2.0 * std::numbers::pi * freq[i] * t + phase[i]);
    return s;
  }
};

void add_bump(std::vector<double>& x, double sample_rate, double t0, double amp, double sigma) {
  const double half = 4.0 * sigma;
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const auto k0 = std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(std::ceil((t0 - half) * sample_rate)));
  const auto k1 = std::min<std::ptrdiff_t>(n - 1, static_cast<std::ptrdiff_t>(std::floor((t0 + half) * sample_rate)));
  for (auto k = k0; k <= k1; ++k) {
    const double d = (static_cast<double>(k) / sample_rate - t0) / sigma;
    x[static_cast<std::size_t>(k)] += amp * std::exp(-0.5 * d * d);
  }
}

void add_collar(std::vector<double>& x, double sample_rate, double tc, double scale, double lobe_width) {
  if (scale == 0.0) return;
  const double half = kWaveformSupport * lobe_width;
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const auto k0 = std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(std::ceil((tc - half) * sample_rate)));
  const auto k1 = std::min<std::ptrdiff_t>(n - 1, static_cast<std::ptrdiff_t>(std::floor((tc + half) * sample_rate)));
  for (auto k = k0; k <= k1; ++k) {
    x[static_cast<std::size_t>(k)] += collar_waveform(static_cast<double>(k) / sample_rate - tc, scale, lobe_width);
  }
}

}  // namespace

SimulatedRun generate_trace(const WellPlan& plan, const MotionProfile& profile, const InterferenceConfig& noise,
                            double sample_rate, std::uint64_t seed, const SimulationOptions& options) {
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) throw ConfigError("sample_rate must be positive");
  plan.validate();
  profile.validate();
  noise.validate();

  const double tail = options.tail_length < 0.0 ? plan.nominal_joint_length : options.tail_length;
  const double end_depth = plan.collars.back().depth + tail;
  const double dt = 1.0 / sample_rate;

  // Trajectory: trapezoidal integration of the jittered speed.
  auto motion_rng = make_engine(seed, kMotion);
  const Jitter jitter(motion_rng);
  auto speed_at = [&](double t) { return profile.nominal_speed(t) * (1.0 + profile.jitter * jitter(t)); };

  SimulatedRun run;
  GroundTruth& truth = run.truth;
  truth.sample_rate = sample_rate;
  std::vector<double>& depth = truth.depth;
  depth.push_back(0.0);
  double v_prev = speed_at(0.0);
  for (std::size_t k = 1; depth.back() < end_depth; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (t > options.max_duration) {
      throw GenerationError("profile does not pass the last collar within " + std::to_string(options.max_duration) +
                            " s");
    }
    const double v = speed_at(t);
    depth.push_back(depth.back() + 0.5 * (v_prev + v) * dt);
    v_prev = v;
  }
  const std::size_t n = depth.size();
  std::vector<double> x(n, 0.0);

  // Collar crossings and waveforms.
  auto collar_rng = make_engine(seed, kCollars);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t k = 0;
  for (const auto& collar : plan.collars) {
    const double z = gauss(collar_rng);
    const double u_sat = unit(collar_rng);
    const double u_gain = unit(collar_rng);
    const double u_att = unit(collar_rng);
    if (collar.depth <= depth.front()) continue;
    while (k + 1 < n && depth[k + 1] < collar.depth) ++k;
    if (k + 1 >= n) break;
    const double frac = (collar.depth - depth[k]) / (depth[k + 1] - depth[k]);
    CollarCrossing c;
    c.index = collar.index;
    c.depth = collar.depth;
    c.t = (static_cast<double>(k) + frac) * dt;
    c.lobe_width = noise.lobe_length / std::max(speed_at(c.t), 1e-3);
    c.amplitude = noise.collar_amplitude * std::exp(noise.collar_amplitude_spread * z);
    if (u_sat < noise.saturation_probability) {
      c.saturated = true;
      c.amplitude *= noise.saturation_gain_min + u_gain * (noise.saturation_gain_max - noise.saturation_gain_min);
    }
    const bool forced = std::find(options.suppress.begin(), options.suppress.end(), c.index) != options.suppress.end();
    if (forced || u_att < noise.attenuation_probability) {
      c.suppressed = true;
      c.amplitude *= forced ? 0.0 : noise.attenuation_gain;
    }
    add_collar(x, sample_rate, c.t, c.amplitude, c.lobe_width);
    truth.crossings.push_back(c);
  }

  const double duration = static_cast<double>(n - 1) * dt;

  // Isolated spikes.
  if (noise.spike_rate > 0.0) {
    auto rng = make_engine(seed, kSpikes);
    std::exponential_distribution<double> gap(noise.spike_rate);
    std::uniform_real_distribution<double> width(noise.spike_width_min, noise.spike_width_max);
    for (double t = gap(rng); t < duration; t += gap(rng)) {
      const double amp = noise.spike_amplitude * std::exp(noise.spike_amplitude_spread * gauss(rng));
      const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
      const double sigma = width(rng);
      add_bump(x, sample_rate, t, sign * amp, sigma);
      truth.interference.push_back({InterferenceKind::spike, t - 2.0 * sigma, t + 2.0 * sigma, amp});
    }
  }

  // Continuous spike bursts.
  if (noise.burst_rate > 0.0) {
    auto rng = make_engine(seed, kBursts);
    std::exponential_distribution<double> gap(noise.burst_rate);
    std::exponential_distribution<double> inner(noise.burst_spike_rate);
    std::uniform_real_distribution<double> length(noise.burst_duration_min, noise.burst_duration_max);
    std::uniform_real_distribution<double> width(0.0005, 0.002);
    for (double t = gap(rng); t < duration; t += gap(rng)) {
      const double len = length(rng);
      double peak = 0.0;
      for (double s = t; s < t + len; s += inner(rng)) {
        const double amp = noise.burst_amplitude * std::exp(0.3 * gauss(rng));
        const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
        add_bump(x, sample_rate, s, sign * amp, width(rng));
        peak = std::max(peak, amp);
      }
      truth.interference.push_back({InterferenceKind::burst, t, t + len, peak});
      t += len;
    }
  }

  for (const auto& p : options.inject) {
    add_collar(x, sample_rate, p.t_center, p.scale, p.lobe_width);
    const double half = kWaveformSupport * p.lobe_width;
    truth.interference.push_back({InterferenceKind::injected, p.t_center - half, p.t_center + half, p.scale});
  }
  std::sort(truth.interference.begin(), truth.interference.end(),
            [](const auto& a, const auto& b) { return a.t_start < b.t_start; });

  if (noise.noise_sigma > 0.0) {
    auto rng = make_engine(seed, kNoise);
    for (auto& v : x) v += noise.noise_sigma * gauss(rng);
  }

  run.trace.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    run.trace[i] = {static_cast<double>(i) * dt, std::clamp(x[i], -noise.clip_level, noise.clip_level)};
  }
  return run;
}

const char* to_string(InterferenceKind k) {
  switch (k) {
    case InterferenceKind::spike: return "spike";
    case InterferenceKind::burst: return "burst";
    case InterferenceKind::injected: return "injected";
  }
  return "?";
}

}  // namespace ccl

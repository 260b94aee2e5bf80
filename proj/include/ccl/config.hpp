#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "json.hpp"

#include "ccl/evaluate.hpp"
#include "ccl/motion.hpp"
#include "ccl/plausibility.hpp"
#include "ccl/signal.hpp"

namespace ccl {

using ordered_json = nlohmann::ordered_json;

struct TrackerConfig {
  int min_calibrations = 3;
  std::size_t speed_history = 5;  // joint speeds in the tracking median
  std::size_t min_joints = 3;     // joint speeds needed before leaving the prior
};

struct LogConfig {
  std::uint64_t threshold_every = 100;  // 0 disables threshold snapshots
  std::uint64_t sample_every = 0;       // 0 disables raw sample records
};

// Every tunable of a detection run. A run is reproducible from
// (trace, plan, config).
struct DetectConfig {
  SignalConfig signal;
  PlausibilityLimits limits;
  MotionPrior prior;
  TrackerConfig tracker;
  LogConfig log;
  MatchOptions evaluation;

  // Throws ConfigError.
  void validate() const;
};

inline constexpr int kConfigSchemaVersion = 1;

ordered_json to_json(const DetectConfig& config);
// Missing keys take their defaults; unknown keys are a ConfigError. A missing
// signal.gap_tolerance defaults to 25% of signal.min_width.
DetectConfig config_from_json(const ordered_json& doc);

DetectConfig load_config(const std::string& path);
void save_config(const std::string& path, const DetectConfig& config);

}  // namespace ccl

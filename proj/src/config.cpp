#include "ccl/config.hpp"

#include <fstream>
#include <set>

#include "ccl/error.hpp"

namespace ccl {

void DetectConfig::validate() const {
  signal.validate();
  limits.validate();
  prior.validate();
  if (tracker.min_calibrations < 1) throw ConfigError("tracker.min_calibrations must be >= 1");
  if (tracker.speed_history < 1) throw ConfigError("tracker.speed_history must be >= 1");
  if (!(evaluation.neighborhood > 0.0)) throw ConfigError("evaluation.neighborhood must be positive");
}

ordered_json to_json(const DetectConfig& c) {
  ordered_json doc;
  doc["format"] = "ccl-config";
  doc["schema_version"] = kConfigSchemaVersion;
  doc["signal"] = {{"window", c.signal.window},
                   {"coefficient", c.signal.coefficient},
                   {"min_width", c.signal.min_width},
                   {"max_width", c.signal.max_width},
                   {"gap_tolerance", c.signal.gap_tolerance}};
  doc["plausibility"] = {{"speed_max", c.limits.speed_max},
                         {"accel_max", c.limits.accel_max},
                         {"patch_overdue_factor", c.limits.patch_overdue_factor},
                         {"match_tolerance", c.limits.match_tolerance},
                         {"bootstrap_joint_fraction", c.limits.bootstrap_joint_fraction},
                         {"recovery_joint_fraction", c.limits.recovery_joint_fraction}};
  doc["prior"] = {{"start_depth", c.prior.start_depth},
                  {"v_target", c.prior.v_target},
                  {"ramp_time", c.prior.ramp_time}};
  doc["tracker"] = {{"min_calibrations", c.tracker.min_calibrations},
                    {"speed_history", c.tracker.speed_history},
                    {"min_joints", c.tracker.min_joints}};
  doc["log"] = {{"threshold_every", c.log.threshold_every}, {"sample_every", c.log.sample_every}};
  doc["evaluation"] = {{"neighborhood", c.evaluation.neighborhood},
                       {"count_patches", c.evaluation.count_patches}};
  return doc;
}

namespace {

void check_keys(const ordered_json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  const std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items()) {
    if (!known.count(key)) throw ConfigError("unknown config key " + where + "." + key);
  }
}

template <typename T>
void read(const ordered_json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config key " + where + "." + key + " has the wrong type");
  }
}

}  // namespace

DetectConfig config_from_json(const ordered_json& doc) {
  DetectConfig c;
  check_keys(doc, "config",
             {"format", "schema_version", "signal", "plausibility", "prior", "tracker", "log", "evaluation"});
  if (doc.contains("format") && doc["format"] != "ccl-config") throw ConfigError("not a ccl-config document");
  if (doc.contains("schema_version") && doc["schema_version"] != kConfigSchemaVersion) {
    throw ConfigError("unsupported config schema_version");
  }
  if (doc.contains("signal")) {
    const auto& s = doc["signal"];
    check_keys(s, "signal", {"window", "coefficient", "min_width", "max_width", "gap_tolerance"});
    read(s, "window", c.signal.window, "signal");
    read(s, "coefficient", c.signal.coefficient, "signal");
    read(s, "min_width", c.signal.min_width, "signal");
    read(s, "max_width", c.signal.max_width, "signal");
    c.signal.gap_tolerance = c.signal.min_width / 4;
    read(s, "gap_tolerance", c.signal.gap_tolerance, "signal");
  }
  if (doc.contains("plausibility")) {
    const auto& p = doc["plausibility"];
    check_keys(p, "plausibility",
               {"speed_max", "accel_max", "patch_overdue_factor", "match_tolerance", "bootstrap_joint_fraction",
                "recovery_joint_fraction"});
    read(p, "speed_max", c.limits.speed_max, "plausibility");
    read(p, "accel_max", c.limits.accel_max, "plausibility");
    read(p, "patch_overdue_factor", c.limits.patch_overdue_factor, "plausibility");
    read(p, "match_tolerance", c.limits.match_tolerance, "plausibility");
    read(p, "bootstrap_joint_fraction", c.limits.bootstrap_joint_fraction, "plausibility");
    read(p, "recovery_joint_fraction", c.limits.recovery_joint_fraction, "plausibility");
  }
  if (doc.contains("prior")) {
    const auto& p = doc["prior"];
    check_keys(p, "prior", {"start_depth", "v_target", "ramp_time"});
    read(p, "start_depth", c.prior.start_depth, "prior");
    read(p, "v_target", c.prior.v_target, "prior");
    read(p, "ramp_time", c.prior.ramp_time, "prior");
  }
  if (doc.contains("tracker")) {
    const auto& t = doc["tracker"];
    check_keys(t, "tracker", {"min_calibrations", "speed_history", "min_joints"});
    read(t, "min_calibrations", c.tracker.min_calibrations, "tracker");
    read(t, "speed_history", c.tracker.speed_history, "tracker");
    read(t, "min_joints", c.tracker.min_joints, "tracker");
  }
  if (doc.contains("log")) {
    const auto& l = doc["log"];
    check_keys(l, "log", {"threshold_every", "sample_every"});
    read(l, "threshold_every", c.log.threshold_every, "log");
    read(l, "sample_every", c.log.sample_every, "log");
  }
  if (doc.contains("evaluation")) {
    const auto& e = doc["evaluation"];
    check_keys(e, "evaluation", {"neighborhood", "count_patches"});
    read(e, "neighborhood", c.evaluation.neighborhood, "evaluation");
    read(e, "count_patches", c.evaluation.count_patches, "evaluation");
  }
  c.validate();
  return c;
}

DetectConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(doc);
}

void save_config(const std::string& path, const DetectConfig& config) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write config file " + path);
  out << to_json(config).dump(2) << '\n';
}

}  // namespace ccl

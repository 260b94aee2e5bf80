#pragma once

// File formats. Every format starts with a versioned magic marker: the trace
// file on its first line, the JSON documents in their "format" and
// "schema_version" fields.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccl/config.hpp"
#include "ccl/evaluate.hpp"
#include "ccl/signal.hpp"
#include "ccl/simulate.hpp"
#include "ccl/well_plan.hpp"

namespace ccl {

// ---------------------------------------------------------------------------
// Trace file: line-oriented text.
//
//   #CCL-TRACE 1
//   # sample_rate 1000
//   # <key> <value>        (any number of header entries, order preserved)
//   t x
//   0 0.1234
//   ...
//
// Numbers are written in shortest round-trip form, so a file produced by
// write_trace parses and re-serializes byte for byte.

inline constexpr const char* kTraceMagic = "#CCL-TRACE 1";

struct TraceFile {
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<Sample> rows;

  std::optional<std::string> header_value(const std::string& key) const;
  // Throws FormatError when absent or not a positive number.
  double sample_rate() const;
};

// Throws FormatError with the offending line number.
TraceFile parse_trace(std::istream& in);
void write_trace(std::ostream& out, const TraceFile& trace);
TraceFile load_trace(const std::string& path);
void save_trace(const std::string& path, const TraceFile& trace);

// Incremental reader for the same format; rows are validated as they arrive.
class TraceReader {
 public:
  // Reads the header. Throws FormatError.
  explicit TraceReader(std::istream& in);
  std::optional<Sample> next();
  const std::vector<std::pair<std::string, std::string>>& header() const { return header_; }

 private:
  std::istream& in_;
  std::vector<std::pair<std::string, std::string>> header_;
  std::size_t line_ = 0;
  std::optional<double> last_t_;
};

std::string format_double(double v);

// ---------------------------------------------------------------------------
// Well plan: JSON, format "ccl-wellplan".

inline constexpr int kPlanSchemaVersion = 1;

ordered_json to_json(const WellPlan& plan);
// Throws PlanError (malformed for schema problems; the WellPlan::validate
// kinds otherwise).
WellPlan plan_from_json(const ordered_json& doc);
WellPlan load_well_plan(const std::string& path);
void save_well_plan(const std::string& path, const WellPlan& plan);

// ---------------------------------------------------------------------------
// Ground truth: JSON, format "ccl-truth".

inline constexpr int kTruthSchemaVersion = 1;

ordered_json to_json(const GroundTruth& truth);
GroundTruth truth_from_json(const ordered_json& doc);
GroundTruth load_truth(const std::string& path);
void save_truth(const std::string& path, const GroundTruth& truth);

// ---------------------------------------------------------------------------
// Metrics report: JSON, format "ccl-metrics".

inline constexpr int kMetricsSchemaVersion = 1;

struct IgnitionOutcome {
  std::string state;  // armed | ignited | inhibited
  double t = 0.0;
  double estimated_depth = 0.0;
  std::optional<double> true_depth;
  // Distance from the true depth to the nearest point of the fired interval.
  std::optional<double> interval_deviation;
};

struct MetricsReport {
  std::string label;
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
  Metrics values;
  double neighborhood = 2.0;
  bool count_patches = true;
  std::size_t real_events = 0, patch_events = 0, rejected_fakes = 0;
  std::optional<IgnitionOutcome> ignition;
};

ordered_json to_json(const MetricsReport& report);
MetricsReport metrics_report_from_json(const ordered_json& doc);
MetricsReport load_metrics_report(const std::string& path);
void save_metrics_report(const std::string& path, const MetricsReport& report);

// Reads a whole JSON document; throws FormatError.
ordered_json load_json(const std::string& path);
void save_json(const std::string& path, const ordered_json& doc);

}  // namespace ccl

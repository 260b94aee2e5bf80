#include "ccl/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ccl/error.hpp"

namespace ccl {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

namespace {

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

Sample parse_row(const std::string& line, std::size_t line_no, const std::optional<double>& last_t) {
  const auto space = line.find(' ');
  if (space == std::string::npos) throw FormatError(line_no, "expected 't x' row");
  Sample s;
  if (!parse_double(std::string_view(line).substr(0, space), s.t) ||
      !parse_double(std::string_view(line).substr(space + 1), s.x)) {
    throw FormatError(line_no, "malformed number in row");
  }
  if (!std::isfinite(s.t) || s.t < 0.0) throw FormatError(line_no, "time must be finite and non-negative");
  if (!std::isfinite(s.x)) throw FormatError(line_no, "amplitude must be finite");
  if (last_t && s.t < *last_t) throw FormatError(line_no, "rows are not time-ordered");
  return s;
}

// Header up to and including the "t x" column line.
std::vector<std::pair<std::string, std::string>> read_trace_header(std::istream& in, std::size_t& line_no) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError(1, "empty trace file");
  line_no = 1;
  if (line != kTraceMagic) throw FormatError(1, std::string("missing magic line '") + kTraceMagic + "'");
  std::vector<std::pair<std::string, std::string>> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line == "t x") return header;
    if (line.rfind("# ", 0) != 0) throw FormatError(line_no, "expected '# key value' header or 't x'");
    const auto rest = line.substr(2);
    const auto space = rest.find(' ');
    if (space == std::string::npos || space == 0) throw FormatError(line_no, "header entry needs a key and a value");
    header.emplace_back(rest.substr(0, space), rest.substr(space + 1));
  }
  throw FormatError(line_no, "header not terminated by 't x'");
}

template <typename Fn>
auto with_file_error(const std::string& path, Fn fn) {
  try {
    return fn();
  } catch (const FormatError& e) {
    throw FormatError(e.line(), path + ": " + e.what());
  }
}

}  // namespace

std::optional<std::string> TraceFile::header_value(const std::string& key) const {
  for (const auto& [k, v] : header) {
    if (k == key) return v;
  }
  return std::nullopt;
}

double TraceFile::sample_rate() const {
  const auto v = header_value("sample_rate");
  double rate = 0.0;
  if (!v || !parse_double(*v, rate) || !(rate > 0.0)) throw FormatError(0, "trace header lacks a positive sample_rate");
  return rate;
}

TraceFile parse_trace(std::istream& in) {
  TraceFile trace;
  std::size_t line_no = 0;
  trace.header = read_trace_header(in, line_no);
  std::string line;
  std::optional<double> last_t;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) throw FormatError(line_no, "blank line in trace data");
    trace.rows.push_back(parse_row(line, line_no, last_t));
    last_t = trace.rows.back().t;
  }
  return trace;
}

void write_trace(std::ostream& out, const TraceFile& trace) {
  out << kTraceMagic << '\n';
  for (const auto& [k, v] : trace.header) out << "# " << k << ' ' << v << '\n';
  out << "t x\n";
  std::string buf;
  for (const auto& s : trace.rows) {
    buf.clear();
    buf += format_double(s.t);
    buf += ' ';
    buf += format_double(s.x);
    buf += '\n';
    out << buf;
  }
}

TraceFile load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(0, "cannot open trace file " + path);
  return with_file_error(path, [&] { return parse_trace(in); });
}

void save_trace(const std::string& path, const TraceFile& trace) {
  std::ofstream out(path);
  if (!out) throw FormatError(0, "cannot write trace file " + path);
  write_trace(out, trace);
}

TraceReader::TraceReader(std::istream& in) : in_(in) { header_ = read_trace_header(in_, line_); }

std::optional<Sample> TraceReader::next() {
  std::string line;
  if (!std::getline(in_, line)) return std::nullopt;
  ++line_;
  if (line.empty()) throw FormatError(line_, "blank line in trace data");
  Sample s = parse_row(line, line_, last_t_);
  last_t_ = s.t;
  return s;
}

// ---------------------------------------------------------------------------

ordered_json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(0, "cannot open " + path);
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(0, path + ": invalid JSON: " + e.what());
  }
}

void save_json(const std::string& path, const ordered_json& doc) {
  std::ofstream out(path);
  if (!out) throw FormatError(0, "cannot write " + path);
  out << doc.dump(1) << '\n';
}

namespace {

void expect_format(const ordered_json& doc, const char* format, int version) {
  if (!doc.is_object() || !doc.contains("format") || doc["format"] != format) {
    throw FormatError(0, std::string("document is not a ") + format + " file");
  }
  if (!doc.contains("schema_version") || doc["schema_version"] != version) {
    throw FormatError(0, std::string("unsupported ") + format + " schema_version");
  }
}

}  // namespace

ordered_json to_json(const WellPlan& plan) {
  ordered_json doc;
  doc["format"] = "ccl-wellplan";
  doc["schema_version"] = kPlanSchemaVersion;
  doc["nominal_joint_length"] = plan.nominal_joint_length;
  doc["collars"] = ordered_json::array();
  for (const auto& c : plan.collars) doc["collars"].push_back({{"index", c.index}, {"depth", c.depth}});
  doc["intervals"] = ordered_json::array();
  for (const auto& iv : plan.intervals) {
    ordered_json j = {{"lo", iv.lo}, {"hi", iv.hi}};
    if (iv.target) j["target"] = *iv.target;
    doc["intervals"].push_back(j);
  }
  return doc;
}

WellPlan plan_from_json(const ordered_json& doc) {
  using Kind = PlanError::Kind;
  try {
    expect_format(doc, "ccl-wellplan", kPlanSchemaVersion);
  } catch (const FormatError& e) {
    throw PlanError(Kind::malformed, 0, e.what());
  }
  WellPlan plan;
  std::size_t record = 0;
  try {
    plan.nominal_joint_length = doc.at("nominal_joint_length").get<double>();
    for (const auto& c : doc.at("collars")) {
      ++record;
      plan.collars.push_back({c.at("index").get<int>(), c.at("depth").get<double>()});
    }
    record = 0;
    for (const auto& iv : doc.at("intervals")) {
      ++record;
      PerforatingInterval p{iv.at("lo").get<double>(), iv.at("hi").get<double>(), std::nullopt};
      if (iv.contains("target")) p.target = iv.at("target").get<double>();
      plan.intervals.push_back(p);
    }
  } catch (const nlohmann::json::exception& e) {
    throw PlanError(Kind::malformed, record, std::string("malformed well plan: ") + e.what());
  }
  plan.validate();
  return plan;
}

WellPlan load_well_plan(const std::string& path) {
  ordered_json doc;
  try {
    doc = load_json(path);
  } catch (const FormatError& e) {
    throw PlanError(PlanError::Kind::malformed, 0, e.what());
  }
  return plan_from_json(doc);
}

void save_well_plan(const std::string& path, const WellPlan& plan) { save_json(path, to_json(plan)); }

// ---------------------------------------------------------------------------

ordered_json to_json(const GroundTruth& truth) {
  ordered_json doc;
  doc["format"] = "ccl-truth";
  doc["schema_version"] = kTruthSchemaVersion;
  doc["sample_rate"] = truth.sample_rate;
  doc["depth_stride"] = truth.depth_stride;
  doc["crossings"] = ordered_json::array();
  for (const auto& c : truth.crossings) {
    doc["crossings"].push_back({{"index", c.index},
                                {"depth", c.depth},
                                {"t", c.t},
                                {"amplitude", c.amplitude},
                                {"lobe_width", c.lobe_width},
                                {"suppressed", c.suppressed},
                                {"saturated", c.saturated}});
  }
  doc["interference"] = ordered_json::array();
  for (const auto& i : truth.interference) {
    doc["interference"].push_back(
        {{"kind", to_string(i.kind)}, {"t_start", i.t_start}, {"t_end", i.t_end}, {"amplitude", i.amplitude}});
  }
  doc["depth"] = truth.depth;
  return doc;
}

GroundTruth truth_from_json(const ordered_json& doc) {
  expect_format(doc, "ccl-truth", kTruthSchemaVersion);
  GroundTruth truth;
  try {
    truth.sample_rate = doc.at("sample_rate").get<double>();
    truth.depth_stride = doc.at("depth_stride").get<std::size_t>();
    for (const auto& c : doc.at("crossings")) {
      truth.crossings.push_back({c.at("index").get<int>(), c.at("depth").get<double>(), c.at("t").get<double>(),
                                 c.at("amplitude").get<double>(), c.at("lobe_width").get<double>(),
                                 c.at("suppressed").get<bool>(), c.at("saturated").get<bool>()});
    }
    for (const auto& i : doc.at("interference")) {
      const auto kind = i.at("kind").get<std::string>();
      InterferenceKind k = InterferenceKind::spike;
      if (kind == "burst") {
        k = InterferenceKind::burst;
      } else if (kind == "injected") {
        k = InterferenceKind::injected;
      } else if (kind != "spike") {
        throw FormatError(0, "unknown interference kind " + kind);
      }
      truth.interference.push_back(
          {k, i.at("t_start").get<double>(), i.at("t_end").get<double>(), i.at("amplitude").get<double>()});
    }
    truth.depth = doc.at("depth").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(0, std::string("malformed truth file: ") + e.what());
  }
  if (!(truth.sample_rate > 0.0) || truth.depth_stride == 0) throw FormatError(0, "truth file has a bad sampling");
  return truth;
}

GroundTruth load_truth(const std::string& path) {
  return with_file_error(path, [&] { return truth_from_json(load_json(path)); });
}

void save_truth(const std::string& path, const GroundTruth& truth) {
  std::ofstream out(path);
  if (!out) throw FormatError(0, "cannot write " + path);
  out << to_json(truth).dump() << '\n';
}

// ---------------------------------------------------------------------------

namespace {

ordered_json optional_number(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

std::optional<double> read_optional(const ordered_json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  return doc.at(key).get<double>();
}

}  // namespace

ordered_json to_json(const MetricsReport& r) {
  ordered_json doc;
  doc["format"] = "ccl-metrics";
  doc["schema_version"] = kMetricsSchemaVersion;
  doc["label"] = r.label;
  doc["tp"] = r.tp;
  doc["tn"] = r.tn;
  doc["fp"] = r.fp;
  doc["fn"] = r.fn;
  doc["accuracy"] = optional_number(r.values.accuracy);
  doc["precision"] = optional_number(r.values.precision);
  doc["recall"] = optional_number(r.values.recall);
  doc["f1"] = optional_number(r.values.f1);
  doc["neighborhood"] = r.neighborhood;
  doc["count_patches"] = r.count_patches;
  doc["events"] = {{"real", r.real_events}, {"patch", r.patch_events}, {"rejected_fake", r.rejected_fakes}};
  if (r.ignition) {
    const auto& ig = *r.ignition;
    doc["ignition"] = {{"state", ig.state},
                       {"t", ig.t},
                       {"estimated_depth", ig.estimated_depth},
                       {"true_depth", optional_number(ig.true_depth)},
                       {"interval_deviation", optional_number(ig.interval_deviation)}};
  } else {
    doc["ignition"] = nullptr;
  }
  return doc;
}

MetricsReport metrics_report_from_json(const ordered_json& doc) {
  expect_format(doc, "ccl-metrics", kMetricsSchemaVersion);
  MetricsReport r;
  try {
    r.label = doc.at("label").get<std::string>();
    r.tp = doc.at("tp").get<std::size_t>();
    r.tn = doc.at("tn").get<std::size_t>();
    r.fp = doc.at("fp").get<std::size_t>();
    r.fn = doc.at("fn").get<std::size_t>();
    r.values.accuracy = read_optional(doc, "accuracy");
    r.values.precision = read_optional(doc, "precision");
    r.values.recall = read_optional(doc, "recall");
    r.values.f1 = read_optional(doc, "f1");
    r.neighborhood = doc.at("neighborhood").get<double>();
    r.count_patches = doc.at("count_patches").get<bool>();
    const auto& ev = doc.at("events");
    r.real_events = ev.at("real").get<std::size_t>();
    r.patch_events = ev.at("patch").get<std::size_t>();
    r.rejected_fakes = ev.at("rejected_fake").get<std::size_t>();
    if (doc.contains("ignition") && !doc.at("ignition").is_null()) {
      const auto& ig = doc.at("ignition");
      IgnitionOutcome o;
      o.state = ig.at("state").get<std::string>();
      o.t = ig.at("t").get<double>();
      o.estimated_depth = ig.at("estimated_depth").get<double>();
      o.true_depth = read_optional(ig, "true_depth");
      o.interval_deviation = read_optional(ig, "interval_deviation");
      r.ignition = o;
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(0, std::string("malformed metrics report: ") + e.what());
  }
  return r;
}

MetricsReport load_metrics_report(const std::string& path) {
  return with_file_error(path, [&] { return metrics_report_from_json(load_json(path)); });
}

void save_metrics_report(const std::string& path, const MetricsReport& report) { save_json(path, to_json(report)); }

}  // namespace ccl

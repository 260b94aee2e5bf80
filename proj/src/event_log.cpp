#include "ccl/event_log.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "ccl/error.hpp"

namespace ccl {

std::string serialize_record(const ordered_json& record) { return record.dump(); }

void write_event_log(std::ostream& out, const EventLog& log) {
  out << kEventLogMagic << '\n';
  for (const auto& r : log.records) out << serialize_record(r) << '\n';
}

EventLog parse_event_log(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kEventLogMagic) {
    throw FormatError(1, std::string("missing magic line '") + kEventLogMagic + "'");
  }
  EventLog log;
  std::size_t line_no = 1;
  std::optional<std::int64_t> last_seq;
  bool ignited = false;
  while (std::getline(in, line)) {
    ++line_no;
    ordered_json rec;
    try {
      rec = ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
      throw FormatError(line_no, "record is not valid JSON");
    }
    if (!rec.is_object() || !rec.contains("seq") || !rec["seq"].is_number_integer() || !rec.contains("type") ||
        !rec.contains("t")) {
      throw FormatError(line_no, "record lacks seq/type/t");
    }
    const auto seq = rec["seq"].get<std::int64_t>();
    if (last_seq && seq <= *last_seq) throw FormatError(line_no, "sequence numbers must strictly increase");
    last_seq = seq;
    if (rec["type"] == "ignition" && rec.value("state", "") == "ignited") {
      if (ignited) throw FormatError(line_no, "second ignited record");
      ignited = true;
    }
    log.records.push_back(std::move(rec));
  }
  return log;
}

EventLog load_event_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(0, "cannot open event log " + path);
  try {
    return parse_event_log(in);
  } catch (const FormatError& e) {
    throw FormatError(e.line(), path + ": " + e.what());
  }
}

void save_event_log(const std::string& path, const EventLog& log) {
  std::ofstream out(path);
  if (!out) throw FormatError(0, "cannot write event log " + path);
  write_event_log(out, log);
}

ordered_json to_json(const CandidatePulse& p) {
  return {{"t_start", p.t_start},
          {"t_end", p.t_end},
          {"t_center", p.t_center},
          {"polarity", to_string(p.polarity)},
          {"peak", p.peak_amplitude},
          {"width_samples", p.width_samples},
          {"width_seconds", p.width_seconds},
          {"index_start", p.index_start},
          {"index_end", p.index_end},
          {"mu", p.thresholds_at_start.mu},
          {"upper", p.thresholds_at_start.upper},
          {"lower", p.thresholds_at_start.lower}};
}

CandidatePulse pulse_from_json(const ordered_json& j) {
  CandidatePulse p;
  p.t_start = j.at("t_start").get<double>();
  p.t_end = j.at("t_end").get<double>();
  p.t_center = j.at("t_center").get<double>();
  const auto pol = j.at("polarity").get<std::string>();
  p.polarity = pol == "mixed" ? Polarity::mixed : pol == "below-lower" ? Polarity::below_lower : Polarity::above_upper;
  p.peak_amplitude = j.at("peak").get<double>();
  p.width_samples = j.at("width_samples").get<std::uint64_t>();
  p.width_seconds = j.at("width_seconds").get<double>();
  p.index_start = j.at("index_start").get<std::uint64_t>();
  p.index_end = j.at("index_end").get<std::uint64_t>();
  p.thresholds_at_start.mu = j.at("mu").get<double>();
  p.thresholds_at_start.upper = j.at("upper").get<double>();
  p.thresholds_at_start.lower = j.at("lower").get<double>();
  p.thresholds_at_start.sigma = 0.0;
  return p;
}

ordered_json to_json(const CollarEvent& e) {
  ordered_json j;
  j["event_t"] = e.t;
  j["kind"] = to_string(e.kind);
  if (e.collar_index) j["index"] = *e.collar_index;
  if (e.depth) j["depth"] = *e.depth;
  j["predicted_depth"] = e.predicted_depth;
  if (e.kind == CollarKind::rejected_fake) j["reason"] = to_string(e.reason);
  if (e.recovered) j["recovered"] = true;
  if (e.pulse) j["pulse"] = to_json(*e.pulse);
  return j;
}

CollarEvent collar_event_from_json(const ordered_json& j) {
  CollarEvent e;
  try {
    e.t = j.at("event_t").get<double>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "real") {
      e.kind = CollarKind::real;
    } else if (kind == "patch") {
      e.kind = CollarKind::patch;
    } else if (kind == "rejected-fake") {
      e.kind = CollarKind::rejected_fake;
    } else {
      throw FormatError(0, "unknown collar event kind " + kind);
    }
    if (j.contains("index")) e.collar_index = j.at("index").get<int>();
    if (j.contains("depth")) e.depth = j.at("depth").get<double>();
    e.predicted_depth = j.at("predicted_depth").get<double>();
    if (j.contains("reason")) {
      static const std::pair<const char*, RejectReason> names[] = {
          {"order", RejectReason::order},       {"speed", RejectReason::speed},
          {"accel", RejectReason::accel},       {"mismatch", RejectReason::mismatch},
          {"no-collar", RejectReason::no_collar}};
      const auto r = j.at("reason").get<std::string>();
      for (const auto& [name, value] : names) {
        if (r == name) e.reason = value;
      }
    }
    e.recovered = j.value("recovered", false);
    if (j.contains("pulse")) e.pulse = pulse_from_json(j.at("pulse"));
  } catch (const nlohmann::json::exception& ex) {
    throw FormatError(0, std::string("malformed collar record: ") + ex.what());
  }
  return e;
}

std::vector<CollarEvent> collar_events(const EventLog& log) {
  std::vector<CollarEvent> out;
  for (const auto& r : log.records) {
    if (r.at("type") == "collar") out.push_back(collar_event_from_json(r));
  }
  return out;
}

std::optional<ordered_json> ignition_record(const EventLog& log) {
  for (const auto& r : log.records) {
    if (r.at("type") == "ignition") return r;
  }
  return std::nullopt;
}

}  // namespace ccl

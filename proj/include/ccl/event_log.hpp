#pragma once

// Append-only run log: a magic line followed by one compact JSON record per
// line. Every record carries a strictly increasing "seq", a "type" and the
// stream time "t" at which it was produced.
//
// Record types: start, sample, threshold, gate, collar, calibration,
// ignition, end.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ccl/config.hpp"
#include "ccl/plausibility.hpp"
#include "ccl/signal.hpp"

namespace ccl {

inline constexpr const char* kEventLogMagic = "#CCL-EVENTLOG 1";

struct EventLog {
  std::vector<ordered_json> records;
};

// Throws FormatError for a bad magic line, malformed JSON, non-increasing
// sequence numbers or more than one "ignited" record.
EventLog parse_event_log(std::istream& in);
void write_event_log(std::ostream& out, const EventLog& log);
std::string serialize_record(const ordered_json& record);
EventLog load_event_log(const std::string& path);
void save_event_log(const std::string& path, const EventLog& log);

ordered_json to_json(const CandidatePulse& p);
CandidatePulse pulse_from_json(const ordered_json& j);

// Record fields for a collar event (without seq/type/t).
ordered_json to_json(const CollarEvent& e);
CollarEvent collar_event_from_json(const ordered_json& j);

// All "collar" records, in log order.
std::vector<CollarEvent> collar_events(const EventLog& log);

// The ignition record that left the armed state, if any.
std::optional<ordered_json> ignition_record(const EventLog& log);

}  // namespace ccl

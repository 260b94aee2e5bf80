#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ccl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A sample rejected at ingestion. index is the position in the input stream.
class IngestError : public Error {
 public:
  IngestError(std::uint64_t index, const std::string& what)
      : Error("sample " + std::to_string(index) + ": " + what), index_(index) {}
  std::uint64_t index() const { return index_; }

 private:
  std::uint64_t index_;
};

// Not enough samples in the window to form a threshold (warm-up).
class InsufficientData : public Error {
 public:
  using Error::Error;
};

// Precondition violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

// Malformed file content. line is 1-based, 0 when not applicable.
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class PlanError : public Error {
 public:
  enum class Kind {
    malformed,
    empty,
    non_monotone,
    bad_interval,
    overlapping_intervals,
    interval_out_of_range,
  };

  // record is the 1-based position of the offending collar or interval.
  PlanError(Kind kind, std::size_t record, const std::string& what)
      : Error(what), kind_(kind), record_(record) {}
  Kind kind() const { return kind_; }
  std::size_t record() const { return record_; }

 private:
  Kind kind_;
  std::size_t record_;
};

}  // namespace ccl

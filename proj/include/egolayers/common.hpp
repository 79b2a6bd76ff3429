#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace egolayers {

using UserId = std::uint64_t;
using Count = std::uint64_t;
using Timestamp = std::int64_t;  // seconds since epoch, UTC

inline constexpr double kDaysPerYear = 365.25;
inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kSecondsPerYear = kDaysPerYear * kSecondsPerDay;
inline constexpr double kMonthsPerYear = 12.0;

// Smallest duration a relationship can have: one day. Prevents division by
// zero for same-day first contact.
inline constexpr double kMinDurationYears = 1.0 / kDaysPerYear;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input (wrong arity, non-numeric field, bad header).
struct ParseError : Error {
  ParseError(std::size_t line_no, const std::string& what)
      : Error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
  std::size_t line;
};

/// Well-formed input that violates a documented data constraint.
struct ValidationError : Error {
  using Error::Error;
};

/// Caller broke an operation precondition.
struct ArgumentError : Error {
  using Error::Error;
};

/// Bad run configuration (unusable flag combination, missing option).
struct ConfigError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace egolayers

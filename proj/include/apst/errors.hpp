#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace apst {

// Every failure mode the library reports. The enum name is embedded verbatim
// in Error::what(), so callers (and the CLI) can surface it in diagnostics.
enum class ErrorCode {
  ZeroSize,
  NotPowerOfSegmentSize,
  EmptySeries,
  LengthMismatch,
  SeriesTooShort,
  NoCandidates,
  NoNeighborsWithinThreshold,
  ZeroPeriodMean,
  InsufficientHistory,
  EmptyHistory,
  FileNotFound,
  ParseError,
  EmptyFile,
  InvalidSeries,
  InvalidConfig,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroSize: return "ZeroSize";
    case ErrorCode::NotPowerOfSegmentSize: return "NotPowerOfSegmentSize";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::NoCandidates: return "NoCandidates";
    case ErrorCode::NoNeighborsWithinThreshold: return "NoNeighborsWithinThreshold";
    case ErrorCode::ZeroPeriodMean: return "ZeroPeriodMean";
    case ErrorCode::InsufficientHistory: return "InsufficientHistory";
    case ErrorCode::EmptyHistory: return "EmptyHistory";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::InvalidSeries: return "InvalidSeries";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace apst

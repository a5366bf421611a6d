#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vas {

enum class ErrorCode {
  ZeroExtent,
  DuplicateId,
  UnknownId,
  EmptyIndex,
  EmptyDataset,
  KTooLarge,
  InvalidArgument,
  InsufficientData,
  BudgetExceeded,
  NoEdges,
  InvalidGraph,
  DomainRejection,
  EmptySample,
  MissingCounts,
  ParseError,
  EmptyFile,
  Io,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroExtent: return "ZeroExtent";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::EmptyIndex: return "EmptyIndex";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NoEdges: return "NoEdges";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::DomainRejection: return "DomainRejection";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::MissingCounts: return "MissingCounts";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Base exception for every failure raised by the library. The code lets
/// callers (the CLI in particular) branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// CSV parse failure; line numbers are 1-based and count the header.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace vas

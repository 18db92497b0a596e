#pragma once

#include <stdexcept>
#include <string>

namespace cmt {

enum class ErrorKind {
  NonExactDivision,
  NotASquare,
  FactorizationTimeout,
  DegreeBudgetExceeded,
  NotSplit,
  NotCoprime,
  NotPrime,
  BadReduction,
  FactorExtractionFailed,
  ParseError,
  InvariantViolation,
  BackendUnavailable,
  BackendError,
  NegativeRelativeRank,
  NoData,
  NotSquarefree,
  NotCubefree,
  SingularParameters,
  WrongResidueClass,
  IoError,
  InvalidArgument,
  Internal,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& msg);

}  // namespace cmt

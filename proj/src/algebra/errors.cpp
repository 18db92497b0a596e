#include "cmt/errors.hpp"

namespace cmt {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonExactDivision: return "NonExactDivision";
    case ErrorKind::NotASquare: return "NotASquare";
    case ErrorKind::FactorizationTimeout: return "FactorizationTimeout";
    case ErrorKind::DegreeBudgetExceeded: return "DegreeBudgetExceeded";
    case ErrorKind::NotSplit: return "NotSplit";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::BadReduction: return "BadReduction";
    case ErrorKind::FactorExtractionFailed: return "FactorExtractionFailed";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::BackendUnavailable: return "BackendUnavailable";
    case ErrorKind::BackendError: return "BackendError";
    case ErrorKind::NegativeRelativeRank: return "NegativeRelativeRank";
    case ErrorKind::NoData: return "NoData";
    case ErrorKind::NotSquarefree: return "NotSquarefree";
    case ErrorKind::NotCubefree: return "NotCubefree";
    case ErrorKind::SingularParameters: return "SingularParameters";
    case ErrorKind::WrongResidueClass: return "WrongResidueClass";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& msg)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}

void raise(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace cmt

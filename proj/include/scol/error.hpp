#ifndef SCOL_ERROR_HPP
#define SCOL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace scol {

enum class ErrorCode {
  SelfLoop,
  DuplicateEdge,
  BadVertex,
  EmptyList,
  ColorOutOfRange,
  BadParams,
  NonExtendable,
  NotNeighbor,
  ColorNotInList,
  IsolatedVertex,
  TooLarge,
  Unsatisfiable,
  ZeroConditioning,
  DegenerateMarginal,
  SingleVertex,
  NotErgodic,
  ComplexEigenvalue,
  NumericalFailure,
  GreedyStuck,
  HypothesisViolated,
  ParseError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::BadVertex: return "BadVertex";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::ColorOutOfRange: return "ColorOutOfRange";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::NonExtendable: return "NonExtendable";
    case ErrorCode::NotNeighbor: return "NotNeighbor";
    case ErrorCode::ColorNotInList: return "ColorNotInList";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Unsatisfiable: return "Unsatisfiable";
    case ErrorCode::ZeroConditioning: return "ZeroConditioning";
    case ErrorCode::DegenerateMarginal: return "DegenerateMarginal";
    case ErrorCode::SingleVertex: return "SingleVertex";
    case ErrorCode::NotErgodic: return "NotErgodic";
    case ErrorCode::ComplexEigenvalue: return "ComplexEigenvalue";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::GreedyStuck: return "GreedyStuck";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit contract) can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace scol

#endif  // SCOL_ERROR_HPP

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stein {

enum class Errc {
  // numbers
  NotSquarefree,
  NoRootInInterval,
  MultipleRootsInInterval,
  ZeroLeadingCoefficient,
  DivisionByZero,
  FieldMismatch,
  // Gamma / Lambda
  NotInvariant,
  NonDense,
  LinearlyDependent,
  NotInGamma,
  UnsupportedComparison,
  UnsupportedSlopeGroup,
  UnsupportedGamma,
  // elements
  BreakpointNotInGamma,
  SlopeNotInLambda,
  NotBijective,
  UnorderedBreakpoints,
  ContextMismatch,
  OutOfDomain,
  EmptyLibrary,
  WrongContext,
  NotAntichain,
  NotComplete,
  // words
  ForbiddenFactor,
  EmptyWord,
  UnparsableWord,
  // classification / io
  UnsupportedInput,
  ParseError,
  InvalidArgument,
};

constexpr std::string_view to_string(Errc e) noexcept {
  switch (e) {
    case Errc::NotSquarefree: return "NotSquarefree";
    case Errc::NoRootInInterval: return "NoRootInInterval";
    case Errc::MultipleRootsInInterval: return "MultipleRootsInInterval";
    case Errc::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::NotInvariant: return "NotInvariant";
    case Errc::NonDense: return "NonDense";
    case Errc::LinearlyDependent: return "LinearlyDependent";
    case Errc::NotInGamma: return "NotInGamma";
    case Errc::UnsupportedComparison: return "UnsupportedComparison";
    case Errc::UnsupportedSlopeGroup: return "UnsupportedSlopeGroup";
    case Errc::UnsupportedGamma: return "UnsupportedGamma";
    case Errc::BreakpointNotInGamma: return "BreakpointNotInGamma";
    case Errc::SlopeNotInLambda: return "SlopeNotInLambda";
    case Errc::NotBijective: return "NotBijective";
    case Errc::UnorderedBreakpoints: return "UnorderedBreakpoints";
    case Errc::ContextMismatch: return "ContextMismatch";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::EmptyLibrary: return "EmptyLibrary";
    case Errc::WrongContext: return "WrongContext";
    case Errc::NotAntichain: return "NotAntichain";
    case Errc::NotComplete: return "NotComplete";
    case Errc::ForbiddenFactor: return "ForbiddenFactor";
    case Errc::EmptyWord: return "EmptyWord";
    case Errc::UnparsableWord: return "UnparsableWord";
    case Errc::UnsupportedInput: return "UnsupportedInput";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), message_(what) {}

  Errc code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }

 private:
  Errc code_;
  std::string message_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace stein

#pragma once

#include <stdexcept>
#include <string>

namespace msch {

enum class ErrorCode {
  Parse,
  // precondition family
  NotPointed,
  NotCancellative,
  ZeroMonoid,
  NotInMonoid,
  UnsupportedPushout,
  UnsupportedPullback,
  BadGluing,
  BadIdealSheaf,
  NotToric,
  NotSimplicial,
  NotInSupport,
  NotSmooth,
  NotSubdivision,
  NotGenericPreserving,
  NotSeparated,
  NotCartesian,
  WitnessInvalid,
  EmptyProj,
  InvalidFan,
  InvalidMorphism,
  BoundTooSmall,
  Precondition,
  // budget family
  SearchBoundExceeded,
  BudgetExceeded,
};

const char* to_string(ErrorCode code);

/// Exit status family used by the command-line driver: 1 parse, 2 precondition, 3 budget.
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace msch

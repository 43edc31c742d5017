#include "msch/error.hpp"

namespace msch {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::NotPointed: return "NotPointed";
    case ErrorCode::NotCancellative: return "NotCancellative";
    case ErrorCode::ZeroMonoid: return "ZeroMonoid";
    case ErrorCode::NotInMonoid: return "NotInMonoid";
    case ErrorCode::UnsupportedPushout: return "UnsupportedPushout";
    case ErrorCode::UnsupportedPullback: return "UnsupportedPullback";
    case ErrorCode::BadGluing: return "BadGluing";
    case ErrorCode::BadIdealSheaf: return "BadIdealSheaf";
    case ErrorCode::NotToric: return "NotToric";
    case ErrorCode::NotSimplicial: return "NotSimplicial";
    case ErrorCode::NotInSupport: return "NotInSupport";
    case ErrorCode::NotSmooth: return "NotSmooth";
    case ErrorCode::NotSubdivision: return "NotSubdivision";
    case ErrorCode::NotGenericPreserving: return "NotGenericPreserving";
    case ErrorCode::NotSeparated: return "NotSeparated";
    case ErrorCode::NotCartesian: return "NotCartesian";
    case ErrorCode::WitnessInvalid: return "WitnessInvalid";
    case ErrorCode::EmptyProj: return "EmptyProj";
    case ErrorCode::InvalidFan: return "InvalidFan";
    case ErrorCode::InvalidMorphism: return "InvalidMorphism";
    case ErrorCode::BoundTooSmall: return "BoundTooSmall";
    case ErrorCode::Precondition: return "PreconditionViolated";
    case ErrorCode::SearchBoundExceeded: return "SearchBoundExceeded";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return 1;
    case ErrorCode::SearchBoundExceeded:
    case ErrorCode::BudgetExceeded: return 3;
    default: return 2;
  }
}

}  // namespace msch

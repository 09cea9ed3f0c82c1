#include "garnier/error.hpp"

namespace garnier {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NumericOverflow: return "NumericOverflow";
    case ErrorKind::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorKind::EvalAtPole: return "EvalAtPole";
    case ErrorKind::GammaPole: return "GammaPole";
    case ErrorKind::CutViolation: return "CutViolation";
    case ErrorKind::OutOfRegion: return "OutOfRegion";
    case ErrorKind::NonGenericParams: return "NonGenericParams";
    case ErrorKind::SingularTime: return "SingularTime";
    case ErrorKind::DegenerateLambda: return "DegenerateLambda";
    case ErrorKind::CollidingSingularities: return "CollidingSingularities";
    case ErrorKind::UnsupportedLimit: return "UnsupportedLimit";
    case ErrorKind::NotASingularity: return "NotASingularity";
    case ErrorKind::EvalAtSingularity: return "EvalAtSingularity";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::PathTooClose: return "PathTooClose";
  }
  return "Unknown";
}

}  // namespace garnier

#include "qhist/error.hpp"

namespace qhist {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::NormOutOfTolerance: return "NormOutOfTolerance";
    case Errc::NonFinite: return "NonFinite";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DimensionOutOfRange: return "DimensionOutOfRange";
    case Errc::NotUnitary: return "NotUnitary";
    case Errc::DuplicateEvent: return "DuplicateEvent";
    case Errc::InvalidName: return "InvalidName";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownToken: return "UnknownToken";
    case Errc::UnknownEvent: return "UnknownEvent";
    case Errc::NestedSequenceInSlot: return "NestedSequenceInSlot";
    case Errc::NonOrthogonalAlternatives: return "NonOrthogonalAlternatives";
    case Errc::NoAlternatives: return "NoAlternatives";
    case Errc::AlternativeEndpoint: return "AlternativeEndpoint";
    case Errc::ForbiddenHistory: return "ForbiddenHistory";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::InternalConsistency: return "InternalConsistency";
    case Errc::FileNotFound: return "FileNotFound";
    case Errc::SchemaError: return "SchemaError";
    case Errc::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::InternalConsistency:
      return 4;
    case Errc::UnknownEvent:
    case Errc::NestedSequenceInSlot:
    case Errc::NonOrthogonalAlternatives:
    case Errc::NoAlternatives:
    case Errc::AlternativeEndpoint:
    case Errc::ForbiddenHistory:
    case Errc::IndexOutOfRange:
    case Errc::NotUnitary:
      return 3;
    default:
      return 2;
  }
}

}  // namespace qhist

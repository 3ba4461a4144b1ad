#include "toposm/error.hpp"

namespace toposm {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorKind::MissingInverse: return "MissingInverse";
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::MissingIdentity: return "MissingIdentity";
    case ErrorKind::BadComposition: return "BadComposition";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::GroupoidMismatch: return "GroupoidMismatch";
    case ErrorKind::CarrierMismatch: return "CarrierMismatch";
    case ErrorKind::MissingOrbitWeight: return "MissingOrbitWeight";
    case ErrorKind::NegativeWeight: return "NegativeWeight";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NotWellSupported: return "NotWellSupported";
    case ErrorKind::NotOrbitConstant: return "NotOrbitConstant";
    case ErrorKind::NotEpi: return "NotEpi";
    case ErrorKind::NoCover: return "NoCover";
    case ErrorKind::DescentFailure: return "DescentFailure";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotEquivariant: return "NotEquivariant";
    case ErrorKind::NotInAlgebra: return "NotInAlgebra";
    case ErrorKind::NotComponentConstant: return "NotComponentConstant";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "UnknownError";
}

}  // namespace toposm

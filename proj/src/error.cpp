#include "bent/error.hpp"

namespace bent {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorKind::Reducible: return "Reducible";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ZeroBeta: return "ZeroBeta";
    case ErrorKind::MixedP: return "MixedP";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::AmbiguousMatch: return "AmbiguousMatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::EmptyQuadraticPart: return "EmptyQuadraticPart";
    case ErrorKind::DegenerateExponents: return "DegenerateExponents";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::DegenerateForm: return "DegenerateForm";
    case ErrorKind::RootOfUnityNotFound: return "RootOfUnityNotFound";
    case ErrorKind::KernelMismatch: return "KernelMismatch";
    case ErrorKind::NotNearBent: return "NotNearBent";
    case ErrorKind::InvalidWitness: return "InvalidWitness";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "UnknownError";
}

}  // namespace bent

#pragma once

#include <stdexcept>
#include <string>

namespace rrb {

enum class Err {
  NoIdentityAtZero,
  MissingInverse,
  NotAssociative,
  IndexOutOfRange,
  NotSubgroup,
  NotNormal,
  NotIdeal,
  SearchBoundExceeded,
  PhiNotAction,
  PhiNotAutomorphism,
  RBIdentityFails,
  CompatibilityFails,
  ShapeMismatch,
  ConsistencyError,
  NotNormalized,
  DimensionMismatch,
  NotInSubgroup,
  SectionInvalid,
  HypothesisFails,
  ModuleMismatch,
  TheoremViolation,
  BraidFails,
  DegenerateComponent,
  ParseError,
  InternalError,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::NoIdentityAtZero: return "NoIdentityAtZero";
    case Err::MissingInverse: return "MissingInverse";
    case Err::NotAssociative: return "NotAssociative";
    case Err::IndexOutOfRange: return "IndexOutOfRange";
    case Err::NotSubgroup: return "NotSubgroup";
    case Err::NotNormal: return "NotNormal";
    case Err::NotIdeal: return "NotIdeal";
    case Err::SearchBoundExceeded: return "SearchBoundExceeded";
    case Err::PhiNotAction: return "PhiNotAction";
    case Err::PhiNotAutomorphism: return "PhiNotAutomorphism";
    case Err::RBIdentityFails: return "RBIdentityFails";
    case Err::CompatibilityFails: return "CompatibilityFails";
    case Err::ShapeMismatch: return "ShapeMismatch";
    case Err::ConsistencyError: return "ConsistencyError";
    case Err::NotNormalized: return "NotNormalized";
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::NotInSubgroup: return "NotInSubgroup";
    case Err::SectionInvalid: return "SectionInvalid";
    case Err::HypothesisFails: return "HypothesisFails";
    case Err::ModuleMismatch: return "ModuleMismatch";
    case Err::TheoremViolation: return "TheoremViolation";
    case Err::BraidFails: return "BraidFails";
    case Err::DegenerateComponent: return "DegenerateComponent";
    case Err::ParseError: return "ParseError";
    case Err::InternalError: return "InternalError";
  }
  return "Unknown";
}

/// Library error carrying a machine-readable code plus a witness message
/// (the first failing element/tuple where one exists).
class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}

  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Err code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace rrb

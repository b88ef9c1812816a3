#pragma once

#include <stdexcept>
#include <string>

namespace chen {

enum class Errc {
  RankDeficient,
  BadIndex,
  DimensionMismatch,
  SingularKappa,
  NotCTotallyReal,
  BadFrame,
  AsymmetricSigma,
  NotTangent,
  DimensionTooSmall,
  DimensionTooLarge,
  BadDimension,
  VectorNotInSubspace,
  TupleNotInS,
  BadK,
  NotUnit,
  BadPlane,
  BadTuple,
  NotSasakianMode,
  HypothesisViolated,
  BadSpec,
  TraceMismatch,
  IncompatibleXiConstraint,
  TooLarge,
  IoError,
  ValidationFailed,
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

inline const char* to_string(Errc code) {
  switch (code) {
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::BadIndex: return "BadIndex";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::SingularKappa: return "SingularKappa";
    case Errc::NotCTotallyReal: return "NotCTotallyReal";
    case Errc::BadFrame: return "BadFrame";
    case Errc::AsymmetricSigma: return "AsymmetricSigma";
    case Errc::NotTangent: return "NotTangent";
    case Errc::DimensionTooSmall: return "DimensionTooSmall";
    case Errc::DimensionTooLarge: return "DimensionTooLarge";
    case Errc::BadDimension: return "BadDimension";
    case Errc::VectorNotInSubspace: return "VectorNotInSubspace";
    case Errc::TupleNotInS: return "TupleNotInS";
    case Errc::BadK: return "BadK";
    case Errc::NotUnit: return "NotUnit";
    case Errc::BadPlane: return "BadPlane";
    case Errc::BadTuple: return "BadTuple";
    case Errc::NotSasakianMode: return "NotSasakianMode";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::BadSpec: return "BadSpec";
    case Errc::TraceMismatch: return "TraceMismatch";
    case Errc::IncompatibleXiConstraint: return "IncompatibleXiConstraint";
    case Errc::TooLarge: return "TooLarge";
    case Errc::IoError: return "IoError";
    case Errc::ValidationFailed: return "ValidationFailed";
  }
  return "UnknownError";
}

}  // namespace chen

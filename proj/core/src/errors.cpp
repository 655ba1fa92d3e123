// SPDX-License-Identifier: Apache-2.0
#include "passnet/errors.hpp"

namespace passnet {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kShapeMismatch: return "ShapeMismatch";
    case ErrorKind::kToleranceRequired: return "ToleranceRequired";
    case ErrorKind::kRankDeficient: return "RankDeficient";
    case ErrorKind::kZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::kDependentRows: return "DependentRows";
    case ErrorKind::kNoPartition: return "NoPartition";
    case ErrorKind::kPartitionInvalid: return "PartitionInvalid";
    case ErrorKind::kNotReciprocal: return "NotReciprocal";
    case ErrorKind::kSingularDPlusDT: return "SingularDPlusDT";
    case ErrorKind::kNoNonnegativeSolution: return "NoNonnegativeSolution";
    case ErrorKind::kInfeasible: return "Infeasible";
    case ErrorKind::kNotPSD: return "NotPSD";
    case ErrorKind::kMissingSignatures: return "MissingSignatures";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kNonPositiveParameter: return "NonPositiveParameter";
    case ErrorKind::kDanglingNode: return "DanglingNode";
    case ErrorKind::kCapacitorLoop: return "CapacitorLoop";
    case ErrorKind::kInductorCutset: return "InductorCutset";
    case ErrorKind::kDependentStates: return "DependentStates";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {
std::string compose(ErrorKind kind, const std::string& message, int line) {
  std::string out(to_string(kind));
  if (line > 0) out += " (line " + std::to_string(line) + ")";
  return out + ": " + message;
}
}  // namespace

Error::Error(ErrorKind kind, const std::string& message, int line)
    : std::runtime_error(compose(kind, message, line)), kind_(kind), line_(line) {}

}  // namespace passnet

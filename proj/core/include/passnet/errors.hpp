// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace passnet {

enum class ErrorKind {
  kShapeMismatch,
  kToleranceRequired,
  kRankDeficient,
  kZeroPolynomial,
  kDependentRows,
  kNoPartition,
  kPartitionInvalid,
  kNotReciprocal,
  kSingularDPlusDT,
  kNoNonnegativeSolution,
  kInfeasible,
  kNotPSD,
  kMissingSignatures,
  kParseError,
  kNonPositiveParameter,
  kDanglingNode,
  kCapacitorLoop,
  kInductorCutset,
  kDependentStates,
  kInvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// All library failures are reported through this exception type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, int line = 0);

  ErrorKind kind() const noexcept { return kind_; }
  /// Source line for parse errors, 0 otherwise.
  int line() const noexcept { return line_; }

 private:
  ErrorKind kind_;
  int line_;
};

}  // namespace passnet

#pragma once

#include <stdexcept>
#include <string>

namespace netctl {

enum class ErrorKind {
  DuplicateEdge,
  ParseError,
  EmptyDriverSet,
  NonConvergence,
  DimensionMismatch,
  SingularGramian,
  IllConditioned,
  NoPathToTarget,
  NoCapture,
  NoCompensation,
  InfeasibleConstraints,
  MissingTrajectory,
  DisconnectedGraph,
  NoPinnedNodes,
  SingularB,
  RejectionFailure,
  InvalidArgument,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg);
  ErrorKind kind() const noexcept { return kind_; }
  const char* name() const noexcept { return kind_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& msg);

}  // namespace netctl

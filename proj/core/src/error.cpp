#include "netctl/error.hpp"

namespace netctl {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptyDriverSet: return "EmptyDriverSet";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SingularGramian: return "SingularGramian";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::NoPathToTarget: return "NoPathToTarget";
    case ErrorKind::NoCapture: return "NoCapture";
    case ErrorKind::NoCompensation: return "NoCompensation";
    case ErrorKind::InfeasibleConstraints: return "InfeasibleConstraints";
    case ErrorKind::MissingTrajectory: return "MissingTrajectory";
    case ErrorKind::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorKind::NoPinnedNodes: return "NoPinnedNodes";
    case ErrorKind::SingularB: return "SingularB";
    case ErrorKind::RejectionFailure: return "RejectionFailure";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& msg)
    : std::runtime_error(std::string(kind_name(kind)) + ": " + msg), kind_(kind) {}

void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace netctl

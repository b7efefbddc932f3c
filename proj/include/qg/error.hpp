#pragma once

#include <stdexcept>
#include <string>

namespace qg {

/// Category of a failure, used by the CLI to pick an exit code.
enum class ErrorKind {
  InvalidElement,
  InvalidGroup,
  InvalidSubgroup,
  InvalidRepresentation,
  ShapeMismatch,
  GroupMismatch,
  InvalidGraph,
  InvalidAction,
  InvalidArgument,
  Construction,
  Inconsistency,
  Solver,
  Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qg

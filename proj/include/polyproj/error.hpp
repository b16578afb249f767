#pragma once

#include <stdexcept>
#include <string>

namespace polyproj {

enum class ErrorKind {
  DimensionMismatch,
  SingularGram,
  EmptySet,
  DependentNormals,
  ZeroNormal,
  TooManyConstraints,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

/// Exception carrying a machine-readable kind. Infeasibility that the
/// caller is expected to branch on (reduced systems, certificates) is
/// returned as data instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace polyproj

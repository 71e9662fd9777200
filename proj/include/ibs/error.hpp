#pragma once

#include <stdexcept>
#include <string>

namespace ibs {

enum class ErrorKind {
  InvalidArgument,
  Singularity,
  WellStretchedViolation,
  SelfIntersection,
  NonClosable,
  NumericalBreakdown,
  Config,
  Io,
  Domain,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised when a well-posedness margin falls below its threshold.
class MarginError : public Error {
 public:
  MarginError(ErrorKind kind, const std::string& what, double margin)
      : Error(kind, what), margin_(margin) {}
  double margin() const { return margin_; }

 private:
  double margin_;
};

}  // namespace ibs

#pragma once

#include <stdexcept>
#include <string>

namespace blowup {

enum class ErrorKind {
  Configuration,
  Domain,
  Usage,
  OutsideCone,
  EndpointLimit,
  UndefinedRatio,
  ReductionDomain,
  Instability,
  IterationFailure,
  ResolventSingularity,
  EigenvalueCollision,
  Continuation,
  Resonance,
  NumericalFailure,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace blowup

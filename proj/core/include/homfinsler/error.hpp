#pragma once

#include <stdexcept>
#include <string>

namespace homfinsler {

enum class ErrorKind {
  structural,   // inconsistent dimensions or malformed input data
  domain,       // argument outside the domain of the operation
  singularity,  // a coefficient hit a singular locus
  quadrature,   // adaptive integration failed to converge
  validation,   // validated mode refused a model or metric
  config,       // configuration could not be parsed
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace homfinsler

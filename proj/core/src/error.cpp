#include "homfinsler/error.hpp"

namespace homfinsler {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::structural: return "structural";
    case ErrorKind::domain: return "domain";
    case ErrorKind::singularity: return "singularity";
    case ErrorKind::quadrature: return "quadrature";
    case ErrorKind::validation: return "validation";
    case ErrorKind::config: return "config";
  }
  return "unknown";
}

}  // namespace homfinsler

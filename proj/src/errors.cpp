#include "pprad/errors.hpp"

namespace pprad {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Range: return "range";
    case ErrorKind::Geometry: return "geometry";
    case ErrorKind::CoincidentPoint: return "coincident_point";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::Resonance: return "resonance";
    case ErrorKind::NonConvergence: return "non_convergence";
    case ErrorKind::Accuracy: return "accuracy";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

}  // namespace pprad

#include "orderflow/error.hpp"

namespace orderflow {

  std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
      case ErrorKind::invalid_argument: return "InvalidArgument";
      case ErrorKind::parse_error: return "ParseError";
      case ErrorKind::duplicate_value: return "DuplicateValue";
      case ErrorKind::length_too_small: return "LengthTooSmall";
      case ErrorKind::length_mismatch: return "LengthMismatch";
      case ErrorKind::dimension_mismatch: return "DimensionMismatch";
      case ErrorKind::cap_exceeded: return "CapExceeded";
      case ErrorKind::endpoint_mismatch: return "EndpointMismatch";
      case ErrorKind::not_a_loop: return "NotALoop";
      case ErrorKind::not_face_subgraph: return "NotFaceSubgraph";
      case ErrorKind::saturation_cap_exceeded: return "SaturationCapExceeded";
      case ErrorKind::drift_obstruction: return "DriftObstruction";
      case ErrorKind::not_a_flow: return "NotAFlow";
      case ErrorKind::not_realizable: return "NotRealizable";
      case ErrorKind::cyclic_obstruction: return "CyclicObstruction";
      case ErrorKind::unknown_builtin: return "UnknownBuiltin";
      case ErrorKind::irrational_tail: return "IrrationalTail";
      case ErrorKind::not_piecewise_affine: return "NotPiecewiseAffine";
      case ErrorKind::degenerate_orbit: return "DegenerateOrbit";
      case ErrorKind::incompatible_sequence: return "IncompatibleSequence";
      case ErrorKind::depth_mismatch: return "DepthMismatch";
    }
    return "Unknown";
  }

}  // namespace orderflow

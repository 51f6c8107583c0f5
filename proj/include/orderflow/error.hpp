#ifndef ORDERFLOW_ERROR_HPP_
#define ORDERFLOW_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace orderflow {

  enum class ErrorKind {
    invalid_argument,
    parse_error,
    duplicate_value,
    length_too_small,
    length_mismatch,
    dimension_mismatch,
    cap_exceeded,
    endpoint_mismatch,
    not_a_loop,
    not_face_subgraph,
    saturation_cap_exceeded,
    drift_obstruction,
    not_a_flow,
    not_realizable,
    cyclic_obstruction,
    unknown_builtin,
    irrational_tail,
    not_piecewise_affine,
    degenerate_orbit,
    incompatible_sequence,
    depth_mismatch,
  };

  std::string_view to_string(ErrorKind kind) noexcept;

  // Every domain failure in the library is reported through this type; the
  // kind is stable and maps onto the CLI's exit codes and diagnostics.
  class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, std::string const& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message),
          kind_(kind) {}

    ErrorKind kind() const noexcept {
      return kind_;
    }

   private:
    ErrorKind kind_;
  };

}  // namespace orderflow

#endif  // ORDERFLOW_ERROR_HPP_

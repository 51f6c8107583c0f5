#ifndef ORDERFLOW_CAPS_HPP_
#define ORDERFLOW_CAPS_HPP_

#include <cstddef>

namespace orderflow {

  // Hard representation limit for Perm; the runtime cap below can only lower it.
  inline constexpr int kMaxPermLength = 16;

  // Global size limits guarding the exponential enumerations.  The defaults
  // can be overridden once at startup; ORDERFLOW_CAP sets perm_length.
  struct Caps {
    int         perm_length             = 12;
    int         loop_vertices           = 24;
    int         lift_enumeration        = 9;
    int         extension_count         = 14;
    std::size_t saturation_profiles     = 20000;
    std::size_t cyclic_lift_length      = 200000;
    std::size_t synthesized_loop_length = 100000;
    std::size_t subdivision_intervals   = 4000000;
    int         separator_depth         = 6;
    int         cantor_scale_depth      = 24;
  };

  Caps const& caps() noexcept;
  void        set_caps(Caps const& caps) noexcept;

}  // namespace orderflow

#endif  // ORDERFLOW_CAPS_HPP_

#include "orderflow/caps.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace orderflow {

  namespace {
    Caps initial_caps() {
      Caps c;
      if (char const* env = std::getenv("ORDERFLOW_CAP")) {
        try {
          int v = std::stoi(env);
          c.perm_length = std::clamp(v, 1, kMaxPermLength);
        } catch (...) {
          // malformed values leave the default in place
        }
      }
      return c;
    }

    Caps& global_caps() {
      static Caps c = initial_caps();
      return c;
    }
  }  // namespace

  Caps const& caps() noexcept {
    return global_caps();
  }

  void set_caps(Caps const& c) noexcept {
    global_caps() = c;
    global_caps().perm_length = std::clamp(c.perm_length, 1, kMaxPermLength);
  }

}  // namespace orderflow

#ifndef ORDERFLOW_EXECUTION_HPP_
#define ORDERFLOW_EXECUTION_HPP_

namespace orderflow {

  // Selects the serial reference or the OpenMP implementation of a kernel.
  enum class Execution { serial, parallel };

}  // namespace orderflow

#endif  // ORDERFLOW_EXECUTION_HPP_

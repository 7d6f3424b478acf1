#pragma once
#include <stdexcept>
#include <string>

namespace qm {

// Error taxonomy shared by the library and the CLI exit codes:
// validation (bad input) -> 2, numerical gate missed -> 3, solver failure -> 4.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct validation_error : error {
  using error::error;
};
struct numerical_error : error {
  using error::error;
};
struct solver_error : error {
  using error::error;
};

}  // namespace qm

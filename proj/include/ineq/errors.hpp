#pragma once

#include <stdexcept>
#include <string>

namespace ineq {

// Error taxonomy shared by all modules. Everything derives from ineq::error
// so callers can catch the library as a whole.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct invalid_parameter : error {
  using error::error;
};
struct degenerate_input : error {
  using error::error;
};
struct precondition_error : error {
  using error::error;
};
struct resolution_error : error {
  using error::error;
};
struct domain_error : error {
  using error::error;
};
struct integration_error : error {
  using error::error;
};
struct stiffness_error : error {
  using error::error;
};
struct integrability_error : error {
  using error::error;
};
struct undefined_quotient : error {
  using error::error;
};
struct empty_sample : error {
  using error::error;
};
struct config_error : error {
  using error::error;
};

}  // namespace ineq

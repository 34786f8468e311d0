#pragma once

#include <stdexcept>
#include <string>

namespace multifield {

// Constitutive closure produced a non-finite value or tangent.
struct EvalError : std::runtime_error {
  std::string entry;  // which derived quantity, e.g. "piola(0,2)"
  explicit EvalError(const std::string& what_, std::string entry_ = {})
      : std::runtime_error(what_), entry(std::move(entry_)) {}
};

// Momentum-to-velocity inversion failed to converge.
struct LegendreError : std::runtime_error {
  long node = -1;
  double residual = 0.0;
  LegendreError(const std::string& what_, long node_, double residual_)
      : std::runtime_error(what_), node(node_), residual(residual_) {}
};

// Bad model definition caught at registration time.
struct RegistrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid grid, boundary, scenario, or state input.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two characteristics collapsed onto each other; the generating-function
// window must be shortened.
struct CausticError : std::runtime_error {
  double time = 0.0;
  CausticError(const std::string& what_, double time_)
      : std::runtime_error(what_), time(time_) {}
};

// Functional outside the class a bracket operation supports.
struct FunctionalClassError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace multifield

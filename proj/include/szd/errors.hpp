#pragma once

#include <stdexcept>
#include <string>

namespace szd {

/// Invalid argument outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The inner integral of s_{u,j}(t) g(t) does not exist because g grows
/// at least as fast as e^{u t}.
class DivergentIntegral : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature ran out of refinement budget.
class ConvergenceFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace szd

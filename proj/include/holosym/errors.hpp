#pragma once

#include <stdexcept>
#include <string>

namespace holosym {

// Bad arguments: wrong ranks, mismatched dimensions, degenerate planes,
// malformed manifold ids.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A point or curve leaves the chart domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Singular or indefinite metric, non-finite values.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Double sectional curvature requested for a pair of planes whose Tachibana
// value is below tolerance.
class NotCurvatureDependentError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace holosym

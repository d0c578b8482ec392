#pragma once

#include <stdexcept>
#include <string>

namespace hkt {

/// Input data violates a structural invariant (Jacobi, quaternion relations,
/// integrability, compatibility, positivity, unimodularity).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was asked for outside its hypotheses (e.g. an HKT-only
/// identity on a non-HKT structure).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two computations that must agree did not; indicates a bug or data that
/// slipped past validation.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hkt

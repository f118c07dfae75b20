#pragma once

#include <stdexcept>
#include <string>

namespace rdfront {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of a formula (negative radicand,
/// beta >= 1 where beta < 1 is required, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Parameters violate the ProblemParams invariants or fall in a regime the
/// library refuses to treat (b < 0 with beta < 1).
class UnsupportedError : public Error {
public:
  using Error::Error;
};

/// The explicit solver gave up: support hit the outer boundary, dt underflow,
/// or a structural invariant of the stencil was violated.
enum class AbortReason { OuterBoundary, LeftBoundary, StepUnderflow, SupportJump, NonFinite };

class SolverAbort : public Error {
public:
  SolverAbort(AbortReason reason, const std::string& what) : Error(what), reason_(reason) {}
  AbortReason reason() const { return reason_; }

private:
  AbortReason reason_;
};

/// A self-similar profile computation failed one of its acceptance checks.
class ShapeError : public Error {
public:
  using Error::Error;
};

/// Too few samples with measurable front motion to fit a power law.
/// Signals a waiting-time candidate.
class InsufficientMotion : public Error {
public:
  using Error::Error;
};

}  // namespace rdfront

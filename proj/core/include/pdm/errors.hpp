#pragma once

#include <stdexcept>
#include <string>

namespace pdm {

// Base class for every error raised by this library.  All conditions that the
// numerical pipeline can detect are reported as typed exceptions rather than
// silently producing NaN, so that a corrupted value can never reach an
// eigensolve unnoticed.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation outside a field's validity domain, or a request for a grid that
// is not contained in the domain of every participating field.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Derivative (or internal Taylor-coefficient) order beyond what a field can
// provide.  Analytic fields support arbitrary order; finite-difference-backed
// fields stop at second derivatives.
class UnsupportedOrder : public Error {
 public:
  using Error::Error;
};

// The momentum-weight recursion divides by the generator g; a vanishing g at
// an evaluation point is an error by design rather than a removable limit.
class DivisionByGenerator : public Error {
 public:
  using Error::Error;
};

// A characteristic-flow trajectory left the generator's domain or blew up
// before reaching unit time.
class FlowEscape : public Error {
 public:
  FlowEscape(const std::string& what, double escape_time)
      : Error(what), escape_time_(escape_time) {}
  double escape_time() const { return escape_time_; }

 private:
  double escape_time_;
};

// Nonpositive mass encountered while assembling a kinetic-energy stencil.
class MassSignError : public Error {
 public:
  using Error::Error;
};

// Kinetic-ordering exponents must satisfy a + b + c = -1.
class OrderingConstraintError : public Error {
 public:
  using Error::Error;
};

// A linear solve inside a Cayley propagation step failed.
class StepSingular : public Error {
 public:
  using Error::Error;
};

// Inverse iteration failed to converge for some eigenvalue index.
class IterationStall : public Error {
 public:
  IterationStall(const std::string& what, int level)
      : Error(what), level_(level) {}
  int level() const { return level_; }

 private:
  int level_;
};

// A probe state (or its image under the discrete unitary) touches the grid
// boundary, so a conjugation residual measured with it would be contaminated.
class ProbeEscape : public Error {
 public:
  using Error::Error;
};

// Fewer bound states than requested exist below the dissociation plateau.
class InsufficientBoundStates : public Error {
 public:
  InsufficientBoundStates(const std::string& what, int found, int requested)
      : Error(what), found_(found), requested_(requested) {}
  int found() const { return found_; }
  int requested() const { return requested_; }

 private:
  int found_;
  int requested_;
};

// The sign/convention resolver could not certify a unique winner.
class AmbiguousResolution : public Error {
 public:
  using Error::Error;
};

// The equilibrium-position formula took the log of a nonpositive value.
class GammaUndefined : public Error {
 public:
  using Error::Error;
};

// Invalid constructor parameter (nonpositive decay rate, zero well scale...).
class ParamError : public Error {
 public:
  using Error::Error;
};

}  // namespace pdm

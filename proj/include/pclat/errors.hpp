#pragma once

#include <stdexcept>
#include <string>

namespace pclat {

// Base type for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parameter validation gate (bad mu, p, q, theta combinations).
struct InvalidParams : Error { using Error::Error; };
// mu <= 4: the cubic-like equilibrium structure does not exist.
struct NoBistability : Error { using Error::Error; };
// alpha = beta = lambda = 0.
struct DegenerateParams : Error { using Error::Error; };
// Argument outside the mathematical domain of the operation.
struct DomainError : Error { using Error::Error; };
// A documented operation precondition does not hold.
struct PreconditionError : Error { using Error::Error; };
// Requested equilibrium branch does not exist at these parameters.
struct MissingBranch : Error { using Error::Error; };
// Non-finite state encountered during time integration.
struct DivergenceError : Error { using Error::Error; };
// Front level never crossed; no front to track.
struct TrackingError : Error { using Error::Error; };
// Run escalated once and still undecided, or the estimate was voided.
struct InconclusiveError : Error { using Error::Error; };
// Stationary boundary profile solve failed to converge.
struct NoProfileError : Error { using Error::Error; };
// Operation not applicable at these parameters.
struct NotApplicableError : Error { using Error::Error; };

}  // namespace pclat

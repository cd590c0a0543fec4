#pragma once

#include <stdexcept>
#include <string>

namespace rp {

// Base class for all library errors.
struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Cover input contains a directed cycle.
struct CycleDetected : error {
  using error::error;
};

// An element id was referenced that the poset does not contain.
struct UnknownElement : error {
  using error::error;
};

// A listed cover is implied by the transitive closure of the others.
struct NotHasse : error {
  using error::error;
};

// A combinatorial search exceeded its configured size cap.
struct SearchBudgetExceeded : error {
  using error::error;
};

// The operation requires an upper semilattice.
struct NotSemilattice : error {
  using error::error;
};

// Distributivity is only defined relative to an upper semilattice.
struct DistributivityRequiresSemilattice : error {
  using error::error;
};

// A numeric value lies outside its admissible interval.
struct ValueOutOfRange : error {
  using error::error;
};

// The strictly negative coordinates of a point have no common ancestor.
struct SupportNoAncestor : error {
  using error::error;
};

// The operation requires two comparable arguments.
struct NotRelated : error {
  using error::error;
};

// The proposed base element is not a minimal common descendent.
struct NotASup : error {
  using error::error;
};

// A combined coordinate reached the excluded value -1.
struct CoordinateHitMinusOne : error {
  using error::error;
};

// Grid enumeration exceeded the configured element cap.
struct GridTooLarge : error {
  using error::error;
};

// A documented operation precondition does not hold.
struct PreconditionFailed : error {
  using error::error;
};

// The map does not preserve finite joins.
struct NotHomomorphism : error {
  using error::error;
};

// Matrix dimensions do not match the requested operation.
struct ShapeMismatch : error {
  using error::error;
};

// A linear-algebra argument has inconsistent dimensions.
struct DimensionMismatch : error {
  using error::error;
};

// The requested coefficient modulus is not prime.
struct NotPrime : error {
  using error::error;
};

// A square of structure maps fails to commute.
struct NotFunctorial : error {
  using error::error;
};

// The requested homological degree is outside the certified range.
struct KoszulValidityUnknown : error {
  using error::error;
};

// A pair of maps fails to be a short exact sequence.
struct NotExact : error {
  using error::error;
};

// A functor value that must be non-empty is empty.
struct EmptyValue : error {
  using error::error;
};

}  // namespace rp

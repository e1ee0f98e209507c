#ifndef CLRS_ERRORS_HPP
#define CLRS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace clrs {

// A Cholesky pivot came out non-positive or non-finite: the matrix is not
// numerically positive definite at the working precision.
struct NotPositiveDefinite : std::runtime_error {
  explicit NotPositiveDefinite(const std::string& what) : std::runtime_error(what) {}
};

// A factorization or selection found fewer independent rows/columns than required.
struct RankDeficient : std::runtime_error {
  explicit RankDeficient(const std::string& what) : std::runtime_error(what) {}
};

// A sample set failed the unisolvence check for the requested space.
struct NotUnisolvent : std::runtime_error {
  explicit NotUnisolvent(const std::string& what) : std::runtime_error(what) {}
};

// A polynomial or grid expected to be invariant under the group action is not.
struct NotInvariant : std::runtime_error {
  explicit NotInvariant(const std::string& what) : std::runtime_error(what) {}
};

// A supplied irreducible representation is not orthogonal (π(γ)π(γ)ᵀ ≠ I).
struct NonOrthogonalIrrep : std::runtime_error {
  explicit NonOrthogonalIrrep(const std::string& what) : std::runtime_error(what) {}
};

// A matrix could not be written as the promised number of rank-1 terms.
struct RankBoundViolated : std::runtime_error {
  explicit RankBoundViolated(const std::string& what) : std::runtime_error(what) {}
};

// Polynomial inputs disagree about degrees/dimensions where they must match.
struct InconsistentDegrees : std::runtime_error {
  explicit InconsistentDegrees(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace clrs

#endif  // CLRS_ERRORS_HPP

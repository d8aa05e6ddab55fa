#pragma once

#include <stdexcept>
#include <string>

namespace ym {

// Library-wide tolerances. All modules share these; see README for rationale.
namespace tol {
inline constexpr double group = 1e-10;   // group/algebra membership
inline constexpr double num = 1e-10;     // round trips, identities
inline constexpr double rank = 1e-8;     // relative singular-value cutoff
inline constexpr double branch = 1e-6;   // distance to the log branch locus
inline constexpr double rep = 1e-9;      // relator residual of a stored representation
}  // namespace tol

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct BranchCutError : Error {
  explicit BranchCutError(const std::string& what) : Error(what) {}
};

struct SingularProjectionError : Error {
  explicit SingularProjectionError(const std::string& what) : Error(what) {}
};

struct UnsupportedGroupError : Error {
  explicit UnsupportedGroupError(const std::string& what) : Error(what) {}
};

struct RankAmbiguityError : Error {
  explicit RankAmbiguityError(const std::string& what) : Error(what) {}
};

struct NoConvergenceError : Error {
  NoConvergenceError(const std::string& what, double residual)
      : Error(what), final_residual(residual) {}
  double final_residual;
};

struct DegenerateFormError : Error {
  explicit DegenerateFormError(const std::string& what) : Error(what) {}
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& what) : Error(what) {}
};

}  // namespace ym

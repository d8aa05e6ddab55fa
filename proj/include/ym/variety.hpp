#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ym/rng.hpp"
#include "ym/surface.hpp"

namespace ym {

struct SolverConfig {
  int max_iters = 500;
  double residual_target = 1e-12;
  std::uint64_t seed = 0;

  void validate() const {
    if (residual_target >= tol::rep)
      throw ValidationError("residual_target must be below tol::rep");
    if (max_iters < 1) throw ValidationError("max_iters must be positive");
  }
};

// || rho(r) c^-1 - I ||_F for a candidate holonomy tuple.
double variety_residual(const BundleData& bundle,
                        const std::vector<GroupElement>& holonomies);

// Random holonomies, approximately Haar per connected component (polar
// factors of Gaussian matrices), respecting the bundle's component map.
// Not exactly Haar; used for solver initialization only.
std::vector<GroupElement> random_holonomies(const BundleData& bundle,
                                            Rng& rng);

// Gauss-Newton solve of prod [u_j, v_j] = c with backtracking line search and
// a gradient-descent fallback; the step is additive in the tangent space
// followed by the group projection. Deterministic for fixed (bundle, cfg,
// seed). Throws NoConvergenceError after max_iters.
Representation solve(const BundleData& bundle, const SolverConfig& cfg,
                     const std::optional<std::vector<GroupElement>>& initial =
                         std::nullopt);

// As solve, but records the accepted residual per iteration.
Representation solve_traced(const BundleData& bundle, const SolverConfig& cfg,
                            const std::optional<std::vector<GroupElement>>&
                                initial,
                            std::vector<double>* residual_history);

// Moves rho by exp(magnitude * u_i) per holonomy along a random direction
// u in ker d1, then re-solves from the perturbed point.
Representation tangent_perturb(const Representation& rep, double magnitude,
                               std::uint64_t seed,
                               const SolverConfig& cfg = {});

// The 2-to-1 covering SU2 -> SO3 applied holonomy-wise; the image of g is
// the matrix of Ad(g) on su(2). The resulting central target is I.
Representation project_su2_so3(const Representation& rep);

// All 2^{2l} sign-twisted SU2 lifts of an SO3 representation; they share a
// single central target c in {+-I} which detects the bundle type.
struct LiftResult {
  std::vector<Representation> lifts;
  GroupElement central;  // common c in SU2
};
LiftResult lift_so3_su2(const Representation& rep);

// Pushes U2 holonomies through U2 -> U2/S^1 = SO3 (the action of Ad on the
// traceless part). Central (S^1)^{2l} twists leave the image unchanged.
Representation quotient_by_central_torus(const Representation& rep);

// Single-element lift SO3 -> SU2 (one of the two preimages, deterministic).
GroupElement lift_so3_element(const GroupElement& g);

// Catalog-known representatives of lower strata for a bundle; used to seed
// census runs so paper-named strata always appear. May be empty.
std::vector<Representation> seed_representatives(const BundleData& bundle);

}  // namespace ym

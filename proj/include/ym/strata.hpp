#pragma once

#include <map>
#include <string>
#include <vector>

#include "ym/variety.hpp"

namespace ym {

// Orbit-type data of one point: full stabilizer, twisted cohomology
// dimensions, the stabilizer action on harmonic 1-cochains, and the derived
// flags. stratum_dim is the dimension of the fixed subspace of that action.
struct PointClassification {
  OrbitTypeLabel label;
  RMat stabilizer_algebra;                   // coordinate columns
  std::vector<GroupElement> component_generators;
  int h0 = 0, h1 = 0, h2 = 0;
  int stratum_dim = 0;
  bool irreducible = false;
  bool nonsingular = false;
  bool top = false;
};

// Action of the stabilizer on harmonic 1-cochains: one orthogonal operator
// per component generator and one infinitesimal (skew) operator per
// stabilizer-algebra basis vector.
struct H1Action {
  std::vector<RMat> component_ops;
  std::vector<RMat> infinitesimal_ops;
};

Stabilizer stabilizer(const Representation& rep);

bool is_representation_irreducible(const Representation& rep);

H1Action z_action_on_h1(const Representation& rep, const Stabilizer& st,
                        const TwistedCohomology& tc);

PointClassification classify_point(const Representation& rep);

struct CensusConfig {
  int n_samples = 200;
  SolverConfig solver;
  int density_trials = 50;
  double density_magnitude = 1e-2;
  int threads = 1;
  bool include_catalog_seeds = true;
};

struct CensusLabelRow {
  OrbitTypeLabel label;
  int count = 0;
  int stratum_dim = 0;
  int h0 = 0, h1 = 0, h2 = 0;
  std::uint64_t example_seed = 0;
  bool from_catalog = false;  // true if first seen on a catalog seed
  bool top = false;
};

struct DensityStats {
  int trials = 0;
  int converged = 0;
  int landed_top = 0;
  int landed_strictly_larger = 0;
};

struct CensusReport {
  std::string group;
  int genus = 0;
  std::uint64_t seed = 0;
  int samples_attempted = 0;
  int samples_converged = 0;
  int solve_failures = 0;
  std::vector<CensusLabelRow> rows;  // sorted by label order
  std::string top_label;
  bool top_heuristic = false;  // true when no pointwise-top sample exists
  std::map<std::string, DensityStats> density;  // keyed by source label
  // Monte Carlo mean of |Pf(Omega)| over top-stratum samples; a boundedness
  // indicator only, not a volume computation.
  double volume_indicator = 0.0;
  int volume_indicator_points = 0;
};

CensusReport census(const BundleData& bundle, const CensusConfig& cfg);

}  // namespace ym

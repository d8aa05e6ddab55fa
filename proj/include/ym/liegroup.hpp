#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ym/errors.hpp"

namespace ym {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

enum class Family { SU2, SO3, U2, O2, O3, Torus };

// One of the supported compact matrix groups. Torus means the diagonal
// unitary group U(1)^k with k = torus_rank.
struct GroupSpec {
  Family family = Family::SU2;
  int torus_rank = 1;  // meaningful only for Family::Torus

  int algebra_dim() const;
  int matrix_size() const;
  bool is_real() const;       // real orthogonal families (SO3, O2, O3)
  bool is_connected() const;  // false for O2, O3
  bool is_abelian() const;
  int centre_dim() const;     // dimension of the Lie algebra of the centre
  std::string name() const;

  bool operator==(const GroupSpec& o) const {
    return family == o.family &&
           (family != Family::Torus || torus_rank == o.torus_rank);
  }
  bool operator!=(const GroupSpec& o) const { return !(*this == o); }

  // Accepts SU2, SO3, U2, O2, O3 and T<k> (e.g. T1, T2).
  static GroupSpec parse(const std::string& name);
};

struct GroupElement {
  GroupSpec spec;
  CMat m;
};

struct AlgebraElement {
  GroupSpec spec;
  CMat m;
};

// Ad-invariant inner product <X,Y> = -scale * Re tr(XY). The frozen algebra
// bases below are orthonormal at scale 1; pairing values returned by the
// local-model module are proportional to scale.
struct InnerProduct {
  double scale = 1.0;
};

// Frozen orthonormal bases (scale 1), one per family:
//   su(2):  i*sigma_1/sqrt2, i*sigma_2/sqrt2, i*sigma_3/sqrt2
//   so(3):  L_1/sqrt2, L_2/sqrt2, L_3/sqrt2   (L_k = generator of rotations
//           about axis k, (L_k)_{ij} = -eps_{kij}); in this basis Ad(R) = R
//   u(2):   su(2) basis followed by i*I/sqrt2
//   o(2):   J/sqrt2 with J = [[0,-1],[1,0]]
//   o(3):   same as so(3)
//   u(1)^k: i*E_11, ..., i*E_kk
const std::vector<CMat>& algebra_basis(const GroupSpec& spec);

double inner_product(const CMat& x, const CMat& y, const InnerProduct& ip = {});

RVec algebra_coords(const GroupSpec& spec, const CMat& x);
CMat algebra_from_coords(const GroupSpec& spec, const RVec& coords);

GroupElement identity(const GroupSpec& spec);

bool is_in_group(const GroupSpec& spec, const CMat& m, double tau = tol::group);
bool is_in_algebra(const GroupSpec& spec, const CMat& m, double tau = tol::group);

void check_group_element(const GroupElement& g, double tau = tol::group);
void check_algebra_element(const AlgebraElement& x, double tau = tol::group);

// Group exponential, exact per-family formulas. exp(0) = I exactly.
GroupElement exp(const AlgebraElement& x);

// Principal logarithm (eigenvalue arguments in (-pi, pi]). Throws
// BranchCutError near the branch locus (eigenvalue -1 in an ambiguous
// configuration) and on components that carry no logarithm (det = -1).
AlgebraElement log(const GroupElement& g);

// Matrix of Ad(g) : X -> g X g^-1 in the frozen orthonormal basis.
RMat adjoint_operator(const GroupElement& g);

// Matrix of ad(X) : Y -> [X, Y] in the frozen orthonormal basis.
RMat ad_operator(const AlgebraElement& x);

// Orthonormal basis of the simultaneous fixed space of Ad(g_i), i.e. the Lie
// algebra of the joint centralizer. Columns are coordinate vectors.
RMat centralizer_algebra_coords(const std::vector<GroupElement>& elements);
std::vector<AlgebraElement> centralizer_algebra(
    const std::vector<GroupElement>& elements);

// Conjugacy-class tag of a centralizer subgroup. The total order used for
// census reporting sorts by identity-component dimension, then by component
// count, then by symbol.
struct OrbitTypeLabel {
  Family family = Family::SU2;
  int torus_rank = 1;
  std::string symbol;    // e.g. "(T)", "(V)", "(SO2xZ2)"
  int identity_dim = 0;  // dimension of the identity component
  int components = 1;    // number of connected components

  std::string to_string() const;
  bool operator==(const OrbitTypeLabel& o) const {
    return symbol == o.symbol && family == o.family;
  }
  bool operator!=(const OrbitTypeLabel& o) const { return !(*this == o); }
  bool operator<(const OrbitTypeLabel& o) const {
    if (identity_dim != o.identity_dim) return identity_dim < o.identity_dim;
    if (components != o.components) return components < o.components;
    return symbol < o.symbol;
  }
};

// Full centralizer data: Lie algebra basis (coordinate columns), one group
// element per connected component (the identity component is represented by
// I), and the conjugation-invariant label.
struct Stabilizer {
  RMat algebra;  // algebra_dim x k, orthonormal columns
  std::vector<GroupElement> components;
  OrbitTypeLabel label;

  int algebra_dim() const { return static_cast<int>(algebra.cols()); }
};

Stabilizer classify_centralizer(const GroupSpec& spec,
                                const std::vector<GroupElement>& elements);

// Polar-factor projection onto the group, with the determinant sign (real
// families) or phase (SU2) corrected. Idempotent on group elements. Throws
// SingularProjectionError when m is rank-deficient relative to tol::rank.
GroupElement project_to_group(const CMat& m, const GroupSpec& spec);

// Centre description helpers.
bool is_central(const GroupSpec& spec, const CMat& m, double tau = tol::group);
GroupElement minus_identity(const GroupSpec& spec);  // -I where it lies in G

}  // namespace ym

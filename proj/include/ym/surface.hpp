#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ym/liegroup.hpp"

namespace ym {

// A word in the generators x_1, y_1, ..., x_l, y_l. Generators are indexed
// 1..2l with x_j = 2j-1 and y_j = 2j; each letter carries an exponent +-1.
struct Word {
  std::vector<std::pair<int, int>> letters;

  static Word generator(int index) { return {{{index, 1}}}; }
  Word inverse() const;
  Word concat(const Word& other) const;
  int length() const { return static_cast<int>(letters.size()); }
};

// Standard presentation of the genus-l surface group: one relator
// r = prod_j [x_j, y_j] of length 4l.
struct SurfacePresentation {
  int genus = 1;
  Word relator;

  int n_generators() const { return 2 * genus; }
  std::string generator_name(int index) const;  // 1-based
};

SurfacePresentation presentation(int genus);

// Topological data of the bundle: target group, genus, central relator
// target c, and (for disconnected groups) the component sign of each
// generator. component_signs, when present, must be non-trivial.
struct BundleData {
  GroupSpec spec;
  int genus = 1;
  GroupElement central_target;
  std::optional<std::vector<int>> component_signs;  // per generator, +-1

  void validate() const;  // throws ValidationError
};

BundleData make_bundle(const GroupSpec& spec, int genus,
                       const GroupElement& central_target,
                       std::optional<std::vector<int>> component_signs = {});

// A point of the representation variety: 2l holonomies with
// prod_j [u_j, v_j] = c (within tol::rep) and component signs matching the
// bundle's prescription.
struct Representation {
  BundleData bundle;
  std::vector<GroupElement> holonomies;

  int genus() const { return bundle.genus; }
  const GroupSpec& spec() const { return bundle.spec; }
};

// Validating constructor; throws ValidationError when the relator residual
// exceeds tol::rep or a holonomy sits in the wrong component.
Representation make_representation(const BundleData& bundle,
                                   std::vector<GroupElement> holonomies);

// Residual of the defining equation, || rho(r) c^-1 - I ||_F.
double representation_residual(const BundleData& bundle,
                               const std::vector<GroupElement>& holonomies);
double representation_residual(const Representation& rep);

GroupElement evaluate_word(const Representation& rep, const Word& w);
GroupElement relator_value(const Representation& rep);

// A 1-cochain assigns an algebra element to each generator; stored as the
// stacked coordinate vector (2l * dim g).
using Cochain = RVec;

Cochain cochain_from_elements(const Representation& rep,
                              const std::vector<AlgebraElement>& values);
std::vector<AlgebraElement> cochain_to_elements(const Representation& rep,
                                                const Cochain& u);

// Extension of a 1-cochain over a word by the crossed rule
//   u(ab) = u(a) + Ad(rho(a)) u(b),   u(x^-1) = -Ad(rho(x))^-1 u(x).
AlgebraElement crossed_extension(const Representation& rep, const Cochain& u,
                                 const Word& w);

// Letter contributions S_t = Ad(rho(p_{t-1})) uhat(a_t) along a word, where
// p_{t-1} is the prefix before letter t. The crossed extension is their sum;
// cup products and the relator's quadratic term are built from them.
std::vector<CMat> word_letter_values(const Representation& rep,
                                     const Cochain& u, const Word& w);

// Fox differentials and harmonic subspaces of the presentation complex with
// coefficients Ad(rho):
//   d0 : g -> g^{2l},  (d0 xi)_i = Ad(rho(g_i)) xi - xi
//   d1 : g^{2l} -> g,  d1 u = crossed extension of u over the relator
struct TwistedCohomology {
  RMat d0;  // (2l d) x d
  RMat d1;  // d x (2l d)
  int h0 = 0, h1 = 0, h2 = 0;
  RMat harmonic0;  // d x h0, orthonormal; ker d0
  RMat harmonic1;  // (2l d) x h1, orthonormal; ker d1 cap (im d0)^perp
  RMat harmonic2;  // d x h2, orthonormal; (im d1)^perp
};

// Assembles d0 and d1 only.
TwistedCohomology differentials(const Representation& rep);

// Full cohomology data. Rank decisions use tol::rank with a loud
// RankAmbiguityError on borderline singular values.
TwistedCohomology cohomology(const Representation& rep);

}  // namespace ym

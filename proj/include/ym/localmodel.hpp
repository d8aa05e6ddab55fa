#pragma once

#include "ym/surface.hpp"

namespace ym {

// Cup-product pairing over the relator 2-cell: with letter values
// S_t(u) = Ad(rho(p_{t-1})) uhat(a_t), the value is
//   sum_t  pairing( sum_{s<t} S_s(u),  S_t(v) ).
// The inner-product variant lands in the reals (proportional to ip.scale);
// the bracket variant lands in the Lie algebra.
double cup_pair_inner(const Representation& rep, const Cochain& u,
                      const Cochain& v, const InnerProduct& ip = {});
AlgebraElement cup_pair_bracket(const Representation& rep, const Cochain& u,
                                const Cochain& v);

// Exact second-order term of the relator along the curve
// g_i(s) = exp(s u_i) g_i: the s^2 coefficient of rho_s(r) c^-1 equals
// (1/2) sum_{t<t'} [S_t, S_t'], an algebra element.
AlgebraElement relator_quadratic_term(const Representation& rep,
                                      const Cochain& u);

// Antisymmetrized cup pairing on the harmonic basis of H^1. The raw pairing
// is not antisymmetric at cochain level (already visible in the abelian
// case); the antisymmetrization is the invariant pairing and the symmetric
// part is recorded as a diagnostic. If the caller claims the point
// nonsingular, degeneracy raises DegenerateFormError.
struct SymplecticForm {
  RMat omega;               // h1 x h1, antisymmetric
  double symmetric_defect;  // max |C + C^T|/2 entry of the raw pairing
};

struct PointClassification;  // strata

SymplecticForm symplectic_form(const Representation& rep,
                               const TwistedCohomology& tc,
                               const InnerProduct& ip = {},
                               const bool* claims_nonsingular = nullptr);

// Momentum map value Theta(eta) = (1/2)[eta, eta] projected to harmonic
// 2-cochain coordinates. eta is given in harmonic1 coordinates.
RVec moment(const Representation& rep, const TwistedCohomology& tc,
            const RVec& eta);

// The full bilinear form B with Theta(eta) = (1/2) B(eta, eta): one
// symmetric h1 x h1 matrix per harmonic2 coordinate.
std::vector<RMat> moment_form(const Representation& rep,
                              const TwistedCohomology& tc);

// Scaling analysis of residual(exp(s eta) rho) on s in [1e-4, 1e-2].
// The slope is always about 2; when Theta(eta) = 0 a least-squares
// correction beta with d1(beta) = -Q(eta) raises the corrected curve
// exp(s eta + s^2/2 beta) to slope about 3. Residuals at rounding level
// are reported as an exact curve with sentinel slope 99.
struct ConeReport {
  double raw_slope = 0.0;
  double corrected_slope = 0.0;
  double obstruction_norm = 0.0;  // distance of -Q to im d1 = |Theta|
  bool exact_curve = false;
  RVec beta;
};

ConeReport cone_consistency(const Representation& rep,
                            const TwistedCohomology& tc, const RVec& eta,
                            bool correction_search);

}  // namespace ym

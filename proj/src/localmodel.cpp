#include "ym/localmodel.hpp"

#include <cmath>

#include "ym/linalg.hpp"
#include "ym/variety.hpp"

namespace ym {

namespace {

double pair_inner(const CMat& x, const CMat& y, const InnerProduct& ip) {
  return inner_product(x, y, ip);
}

}  // namespace

double cup_pair_inner(const Representation& rep, const Cochain& u,
                      const Cochain& v, const InnerProduct& ip) {
  const Word relator = presentation(rep.genus()).relator;
  const auto su = word_letter_values(rep, u, relator);
  const auto sv = word_letter_values(rep, v, relator);
  const int n = rep.spec().matrix_size();
  CMat acc = CMat::Zero(n, n);
  double value = 0.0;
  for (std::size_t t = 0; t < sv.size(); ++t) {
    value += pair_inner(acc, sv[t], ip);
    acc += su[t];
  }
  return value;
}

AlgebraElement cup_pair_bracket(const Representation& rep, const Cochain& u,
                                const Cochain& v) {
  const Word relator = presentation(rep.genus()).relator;
  const auto su = word_letter_values(rep, u, relator);
  const auto sv = word_letter_values(rep, v, relator);
  const int n = rep.spec().matrix_size();
  CMat acc = CMat::Zero(n, n);
  CMat value = CMat::Zero(n, n);
  for (std::size_t t = 0; t < sv.size(); ++t) {
    value += acc * sv[t] - sv[t] * acc;
    acc += su[t];
  }
  return {rep.spec(), value};
}

AlgebraElement relator_quadratic_term(const Representation& rep,
                                      const Cochain& u) {
  const Word relator = presentation(rep.genus()).relator;
  const auto s = word_letter_values(rep, u, relator);
  const int n = rep.spec().matrix_size();
  CMat acc = CMat::Zero(n, n);
  CMat q = CMat::Zero(n, n);
  for (std::size_t t = 0; t < s.size(); ++t) {
    q += acc * s[t] - s[t] * acc;
    acc += s[t];
  }
  return {rep.spec(), CMat(q / 2.0)};
}

SymplecticForm symplectic_form(const Representation& rep,
                               const TwistedCohomology& tc,
                               const InnerProduct& ip,
                               const bool* claims_nonsingular) {
  const int h1 = tc.h1;
  RMat raw(h1, h1);
  for (int i = 0; i < h1; ++i)
    for (int j = 0; j < h1; ++j)
      raw(i, j) =
          cup_pair_inner(rep, tc.harmonic1.col(i), tc.harmonic1.col(j), ip);
  SymplecticForm form;
  form.omega = (raw - raw.transpose()) / 2.0;
  form.symmetric_defect =
      h1 > 0 ? ((raw + raw.transpose()) / 2.0).cwiseAbs().maxCoeff() : 0.0;

  if (claims_nonsingular && *claims_nonsingular && h1 > 0) {
    Eigen::JacobiSVD<RMat> svd(form.omega);
    const auto& sv = svd.singularValues();
    if (sv[h1 - 1] <= tol::rank * sv[0])
      throw DegenerateFormError(
          "symplectic form degenerate at a point classified nonsingular");
  }
  return form;
}

RVec moment(const Representation& rep, const TwistedCohomology& tc,
            const RVec& eta) {
  if (eta.size() != tc.h1)
    throw ValidationError("moment: eta must be given in harmonic1 coordinates");
  if (tc.h2 == 0) return RVec::Zero(0);
  const Cochain u = tc.harmonic1 * eta;
  const AlgebraElement q = relator_quadratic_term(rep, u);
  return tc.harmonic2.transpose() * algebra_coords(rep.spec(), q.m);
}

std::vector<RMat> moment_form(const Representation& rep,
                              const TwistedCohomology& tc) {
  std::vector<RMat> b(tc.h2, RMat::Zero(tc.h1, tc.h1));
  if (tc.h2 == 0) return b;
  // Polarize: B(x, y) = Theta(x + y) - Theta(x) - Theta(y), Theta = B/2 on
  // the diagonal.
  std::vector<RVec> diag(tc.h1);
  for (int i = 0; i < tc.h1; ++i)
    diag[i] = moment(rep, tc, RVec::Unit(tc.h1, i));
  for (int i = 0; i < tc.h1; ++i) {
    for (int j = i; j < tc.h1; ++j) {
      RVec bij;
      if (i == j) {
        bij = 2.0 * diag[i];
      } else {
        RVec sum = moment(rep, tc, RVec::Unit(tc.h1, i) +
                                       RVec::Unit(tc.h1, j));
        bij = sum - diag[i] - diag[j];
      }
      for (int a = 0; a < tc.h2; ++a) {
        b[a](i, j) = bij[a];
        b[a](j, i) = bij[a];
      }
    }
  }
  return b;
}

ConeReport cone_consistency(const Representation& rep,
                            const TwistedCohomology& tc, const RVec& eta,
                            bool correction_search) {
  if (eta.size() != tc.h1)
    throw ValidationError(
        "cone_consistency: eta must be given in harmonic1 coordinates");
  const GroupSpec& spec = rep.spec();
  const int d = spec.algebra_dim();
  const int k = 2 * rep.genus();
  const Cochain u = tc.harmonic1 * eta;

  auto curve_residual = [&](double s, const RVec* beta) {
    std::vector<GroupElement> hs;
    hs.reserve(k);
    for (int i = 0; i < k; ++i) {
      RVec step = s * u.segment(i * d, d);
      if (beta) step += 0.5 * s * s * beta->segment(i * d, d);
      const AlgebraElement x{spec, algebra_from_coords(spec, step)};
      hs.push_back({spec, exp(x).m * rep.holonomies[i].m});
    }
    return variety_residual(rep.bundle, hs);
  };

  const int n_points = 7;
  RVec svals(n_points);
  for (int i = 0; i < n_points; ++i)
    svals[i] = 1e-4 * std::pow(100.0, i / double(n_points - 1));

  auto fit_slope = [&](const RVec* beta, bool* exact) {
    RVec r(n_points);
    for (int i = 0; i < n_points; ++i) r[i] = curve_residual(svals[i], beta);
    if (r.maxCoeff() < 1e-14) {
      *exact = true;
      return 99.0;
    }
    *exact = false;
    return loglog_slope(svals, r);
  };

  ConeReport report;
  bool exact = false;
  report.raw_slope = fit_slope(nullptr, &exact);
  report.exact_curve = exact;

  // Along exp(s u + s^2/2 beta) the s^2 coefficient of the relator is
  // Q(u) + d1(beta)/2, so the correction must solve d1(beta) = -2 Q.
  const AlgebraElement q = relator_quadratic_term(rep, u);
  const RVec qc = algebra_coords(spec, q.m);
  report.beta = min_norm_solve(tc.d1, RVec(-2.0 * qc));
  report.obstruction_norm = (tc.d1 * report.beta + 2.0 * qc).norm() / 2.0;

  if (correction_search && !report.exact_curve) {
    bool exact2 = false;
    report.corrected_slope = fit_slope(&report.beta, &exact2);
    if (exact2) report.corrected_slope = 99.0;
  } else {
    report.corrected_slope = report.raw_slope;
  }
  return report;
}

}  // namespace ym

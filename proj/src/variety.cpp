#include "ym/variety.hpp"

#include <algorithm>
#include <cmath>

#include "ym/linalg.hpp"

namespace ym {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);

RVec vec_real(const CMat& m) {
  const int n = static_cast<int>(m.rows());
  RVec v(2 * n * n);
  int k = 0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      v[k++] = m(i, j).real();
      v[k++] = m(i, j).imag();
    }
  return v;
}

CMat rotation2(double t) {
  CMat m(2, 2);
  m << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return m;
}

CMat reflection2(double axis_angle) {
  const double c = std::cos(2 * axis_angle), s = std::sin(2 * axis_angle);
  CMat m(2, 2);
  m << c, s, s, -c;
  return m;
}

Eigen::Matrix3d rot_x(double t) {
  Eigen::Matrix3d m;
  m << 1, 0, 0, 0, std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t);
  return m;
}

Eigen::Matrix3d rot_z(double t) {
  Eigen::Matrix3d m;
  m << std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t), 0, 0, 0, 1;
  return m;
}

}  // namespace

double variety_residual(const BundleData& bundle,
                        const std::vector<GroupElement>& holonomies) {
  return representation_residual(bundle, holonomies);
}

std::vector<GroupElement> random_holonomies(const BundleData& bundle,
                                            Rng& rng) {
  const GroupSpec& spec = bundle.spec;
  const int k = 2 * bundle.genus;
  std::vector<GroupElement> hs;
  hs.reserve(k);
  for (int i = 0; i < k; ++i) {
    const int sign =
        bundle.component_signs ? (*bundle.component_signs)[i] : 1;
    switch (spec.family) {
      case Family::SU2:
      case Family::U2:
        hs.push_back(project_to_group(rng.ginibre_complex(2), spec));
        break;
      case Family::SO3:
        hs.push_back(
            project_to_group(rng.ginibre_real(3).cast<Complex>(), spec));
        break;
      case Family::O3: {
        GroupElement g = project_to_group(
            rng.ginibre_real(3).cast<Complex>(), GroupSpec{Family::SO3, 1});
        hs.push_back({spec, sign > 0 ? g.m : CMat(-g.m)});
        break;
      }
      case Family::O2: {
        const double t = rng.uniform(-kPi, kPi);
        hs.push_back({spec, sign > 0 ? rotation2(t) : reflection2(t / 2)});
        break;
      }
      case Family::Torus: {
        const int n = spec.matrix_size();
        CMat g = CMat::Zero(n, n);
        for (int j = 0; j < n; ++j)
          g(j, j) = std::exp(kI * rng.uniform(-kPi, kPi));
        hs.push_back({spec, g});
        break;
      }
    }
  }
  return hs;
}

namespace {

struct ResidualState {
  CMat w;       // rho(r) c^-1
  double norm;  // || w - I ||_F
};

ResidualState eval_state(const BundleData& bundle,
                         const std::vector<GroupElement>& hs) {
  Representation rep{bundle, hs};
  const CMat w =
      relator_value(rep).m * bundle.central_target.m.adjoint();
  const int n = bundle.spec.matrix_size();
  return {w, (w - CMat::Identity(n, n)).norm()};
}

std::vector<GroupElement> apply_step(const BundleData& bundle,
                                     const std::vector<GroupElement>& hs,
                                     const RVec& u, double alpha) {
  const GroupSpec& spec = bundle.spec;
  const int d = spec.algebra_dim();
  const int n = spec.matrix_size();
  std::vector<GroupElement> out;
  out.reserve(hs.size());
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const CMat x = algebra_from_coords(
        spec, alpha * u.segment(static_cast<int>(i) * d, d));
    out.push_back(
        project_to_group((CMat::Identity(n, n) + x) * hs[i].m, spec));
  }
  return out;
}

}  // namespace

Representation solve_traced(const BundleData& bundle, const SolverConfig& cfg,
                            const std::optional<std::vector<GroupElement>>&
                                initial,
                            std::vector<double>* residual_history) {
  bundle.validate();
  cfg.validate();
  const GroupSpec& spec = bundle.spec;
  const int d = spec.algebra_dim();
  const int k = 2 * bundle.genus;
  const int n = spec.matrix_size();

  std::vector<GroupElement> hs;
  if (initial) {
    if (static_cast<int>(initial->size()) != k)
      throw ValidationError("initial holonomies: expected 2l elements");
    for (int i = 0; i < k; ++i) {
      check_group_element((*initial)[i]);
      if (bundle.component_signs) {
        const double det = (*initial)[i].m.real().determinant();
        if (det * (*bundle.component_signs)[i] <= 0)
          throw ValidationError(
              "initial holonomy lies in the wrong component");
      }
    }
    hs = *initial;
  } else {
    Rng rng(cfg.seed);
    hs = random_holonomies(bundle, rng);
  }

  ResidualState state = eval_state(bundle, hs);
  if (residual_history) residual_history->push_back(state.norm);

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    if (state.norm <= cfg.residual_target)
      return make_representation(bundle, hs);

    Representation rep{bundle, hs};
    const RMat d1 = differentials(rep).d1;
    const RVec e = vec_real(state.w - CMat::Identity(n, n));
    RMat jac(2 * n * n, k * d);
    for (int col = 0; col < k * d; ++col) {
      const CMat x = algebra_from_coords(spec, d1.col(col));
      jac.col(col) = vec_real(x * state.w);
    }

    bool accepted = false;
    const RVec gn = min_norm_solve(jac, -e);
    if (gn.norm() > 0) {
      double alpha = 1.0;
      for (int bt = 0; bt < 30 && !accepted; ++bt, alpha /= 2) {
        auto cand = apply_step(bundle, hs, gn, alpha);
        const ResidualState cs = eval_state(bundle, cand);
        if (cs.norm < state.norm) {
          hs = std::move(cand);
          state = cs;
          accepted = true;
        }
      }
    }
    if (!accepted) {
      const RVec grad = jac.transpose() * e;
      if (grad.norm() > 0) {
        double alpha = 1.0 / std::max(1.0, grad.norm());
        for (int bt = 0; bt < 40 && !accepted; ++bt, alpha /= 2) {
          auto cand = apply_step(bundle, hs, -grad, alpha);
          const ResidualState cs = eval_state(bundle, cand);
          if (cs.norm < state.norm) {
            hs = std::move(cand);
            state = cs;
            accepted = true;
          }
        }
      }
    }
    if (residual_history) residual_history->push_back(state.norm);
    if (!accepted)
      throw NoConvergenceError(
          "no descent direction at residual " + std::to_string(state.norm),
          state.norm);
  }
  if (state.norm <= cfg.residual_target)
    return make_representation(bundle, hs);
  throw NoConvergenceError("residual " + std::to_string(state.norm) +
                               " after " + std::to_string(cfg.max_iters) +
                               " iterations",
                           state.norm);
}

Representation solve(const BundleData& bundle, const SolverConfig& cfg,
                     const std::optional<std::vector<GroupElement>>& initial) {
  return solve_traced(bundle, cfg, initial, nullptr);
}

Representation tangent_perturb(const Representation& rep, double magnitude,
                               std::uint64_t seed, const SolverConfig& cfg) {
  if (magnitude == 0.0) return rep;
  const GroupSpec& spec = rep.spec();
  const int d = spec.algebra_dim();
  const TwistedCohomology tc = differentials(rep);
  const RMat kernel = kernel_basis(tc.d1, tol::rank);
  if (kernel.cols() == 0)
    throw ValidationError("tangent_perturb: ker d1 is trivial");

  Rng rng(seed);
  RVec u = kernel * rng.normal_vector(static_cast<int>(kernel.cols()));
  u /= u.norm();

  std::vector<GroupElement> perturbed;
  for (int i = 0; i < 2 * rep.genus(); ++i) {
    const AlgebraElement x{
        spec, algebra_from_coords(spec, magnitude * u.segment(i * d, d))};
    perturbed.push_back({spec, exp(x).m * rep.holonomies[i].m});
  }
  SolverConfig cfg2 = cfg;
  cfg2.seed = seed;
  return solve(rep.bundle, cfg2, perturbed);
}

Representation project_su2_so3(const Representation& rep) {
  if (rep.spec().family != Family::SU2)
    throw ValidationError("project_su2_so3 expects an SU2 representation");
  if (!(is_central(rep.spec(), rep.bundle.central_target.m)))
    throw ValidationError("central target must lie in {+-I}");
  const GroupSpec so3{Family::SO3, 1};
  std::vector<GroupElement> images;
  for (const auto& g : rep.holonomies) {
    const RMat ad = adjoint_operator(g);
    images.push_back({so3, ad.cast<Complex>()});
  }
  return make_representation(make_bundle(so3, rep.genus(), identity(so3)),
                             std::move(images));
}

GroupElement lift_so3_element(const GroupElement& g) {
  if (g.spec.family != Family::SO3)
    throw ValidationError("lift_so3_element expects an SO3 element");
  // The adjoint frame i*sigma_k/sqrt2 is negatively oriented relative to the
  // standard quaternion frame, so the quaternion is extracted from R^T.
  const Eigen::Matrix3d r = g.m.real().transpose();
  const double t = r.trace();
  double w, x, y, z;
  const double c0 = 1.0 + t;
  const double c1 = 1.0 + 2.0 * r(0, 0) - t;
  const double c2 = 1.0 + 2.0 * r(1, 1) - t;
  const double c3 = 1.0 + 2.0 * r(2, 2) - t;
  if (c0 >= c1 && c0 >= c2 && c0 >= c3) {
    w = 0.5 * std::sqrt(c0);
    x = (r(2, 1) - r(1, 2)) / (4 * w);
    y = (r(0, 2) - r(2, 0)) / (4 * w);
    z = (r(1, 0) - r(0, 1)) / (4 * w);
  } else if (c1 >= c2 && c1 >= c3) {
    x = 0.5 * std::sqrt(c1);
    w = (r(2, 1) - r(1, 2)) / (4 * x);
    y = (r(0, 1) + r(1, 0)) / (4 * x);
    z = (r(0, 2) + r(2, 0)) / (4 * x);
  } else if (c2 >= c3) {
    y = 0.5 * std::sqrt(c2);
    w = (r(0, 2) - r(2, 0)) / (4 * y);
    x = (r(0, 1) + r(1, 0)) / (4 * y);
    z = (r(1, 2) + r(2, 1)) / (4 * y);
  } else {
    z = 0.5 * std::sqrt(c3);
    w = (r(1, 0) - r(0, 1)) / (4 * z);
    x = (r(0, 2) + r(2, 0)) / (4 * z);
    y = (r(1, 2) + r(2, 1)) / (4 * z);
  }
  CMat m(2, 2);
  m << Complex(w, z), Complex(y, x), Complex(-y, x), Complex(w, -z);
  return project_to_group(m, GroupSpec{Family::SU2, 1});
}

LiftResult lift_so3_su2(const Representation& rep) {
  if (rep.spec().family != Family::SO3)
    throw ValidationError("lift_so3_su2 expects an SO3 representation");
  const GroupSpec su2{Family::SU2, 1};
  const int k = 2 * rep.genus();

  std::vector<GroupElement> base;
  for (const auto& g : rep.holonomies) base.push_back(lift_so3_element(g));

  // Sign twists cancel in commutators, so all lifts share one relator value.
  Representation probe{make_bundle(su2, rep.genus(), identity(su2)), base};
  const CMat mu = relator_value(probe).m;
  const double dplus = (mu - CMat::Identity(2, 2)).norm();
  const double dminus = (mu + CMat::Identity(2, 2)).norm();
  if (std::min(dplus, dminus) > tol::rep)
    throw ValidationError("lifted relator value is not within {+-I}");
  const GroupElement c =
      dplus <= dminus ? identity(su2) : minus_identity(su2);
  const BundleData bundle = make_bundle(su2, rep.genus(), c);

  LiftResult out;
  out.central = c;
  const int count = 1 << k;
  out.lifts.reserve(count);
  for (int mask = 0; mask < count; ++mask) {
    std::vector<GroupElement> hs = base;
    for (int i = 0; i < k; ++i)
      if (mask & (1 << i)) hs[i].m = -hs[i].m;
    out.lifts.push_back(make_representation(bundle, std::move(hs)));
  }
  return out;
}

Representation quotient_by_central_torus(const Representation& rep) {
  if (rep.spec().family != Family::U2)
    throw ValidationError(
        "quotient_by_central_torus expects a U2 representation");
  const GroupSpec so3{Family::SO3, 1};
  std::vector<GroupElement> images;
  for (const auto& g : rep.holonomies) {
    const RMat ad = adjoint_operator(g);  // block diagonal: su(2) + centre
    images.push_back({so3, ad.topLeftCorner(3, 3).cast<Complex>()});
  }
  return make_representation(make_bundle(so3, rep.genus(), identity(so3)),
                             std::move(images));
}

namespace {

std::vector<GroupElement> pad_identity(const GroupSpec& spec,
                                       std::vector<GroupElement> hs, int k) {
  while (static_cast<int>(hs.size()) < k) hs.push_back(identity(spec));
  return hs;
}

const double kGenericAngles[12] = {0.3,  1.1, -0.7, 2.0, 0.9, -1.3,
                                   1.7, -0.4, 0.6,  2.3, -1.9, 0.8};

}  // namespace

std::vector<Representation> seed_representatives(const BundleData& bundle) {
  const GroupSpec& spec = bundle.spec;
  const int genus = bundle.genus;
  const int k = 2 * genus;
  std::vector<Representation> out;
  auto add = [&](std::vector<GroupElement> hs) {
    out.push_back(make_representation(bundle, std::move(hs)));
  };

  switch (spec.family) {
    case Family::SU2: {
      const bool flat =
          (bundle.central_target.m - CMat::Identity(2, 2)).norm() < 1e-12;
      if (flat) {
        // All 2^{2l} homomorphisms into {+-I}; the relator is automatic.
        for (int mask = 0; mask < (1 << k); ++mask) {
          std::vector<GroupElement> hs;
          for (int i = 0; i < k; ++i)
            hs.push_back(mask & (1 << i) ? minus_identity(spec)
                                         : identity(spec));
          add(std::move(hs));
        }
        // A generic tuple in the diagonal maximal torus.
        std::vector<GroupElement> torus;
        for (int i = 0; i < k; ++i) {
          CMat t(2, 2);
          t << std::exp(kI * kGenericAngles[i]), 0, 0,
              std::exp(-kI * kGenericAngles[i]);
          torus.push_back({spec, t});
        }
        add(std::move(torus));
      }
      // Explicit irreducible tuples built from i*sigma_x, i*sigma_y, whose
      // commutator is -I: an odd number of such pairs gives c = -I, an even
      // number gives c = I.
      CMat sx(2, 2), sy(2, 2);
      sx << 0, kI, kI, 0;
      sy << 0, 1, -1, 0;
      const int pairs = flat ? (genus % 2 == 0 ? genus : genus - 1)
                             : (genus % 2 == 1 ? genus : genus - 1);
      if (pairs >= 1 && !(flat && genus == 1)) {
        std::vector<GroupElement> hs;
        for (int j = 0; j < pairs; ++j) {
          hs.push_back({spec, sx});
          hs.push_back({spec, sy});
        }
        add(pad_identity(spec, std::move(hs), k));
      }
      break;
    }
    case Family::SO3: {
      add(std::vector<GroupElement>(k, identity(spec)));
      std::vector<GroupElement> torus;
      for (int i = 0; i < k; ++i)
        torus.push_back({spec, rot_z(kGenericAngles[i]).cast<Complex>()});
      add(std::move(torus));
      // Axis-reversing type: holonomies in {I, R_z(pi)}.
      std::vector<GroupElement> half{GroupElement{spec,
                                                  rot_z(kPi).cast<Complex>()}};
      add(pad_identity(spec, std::move(half), k));
      // Klein-four type (two perpendicular half-turns commute).
      std::vector<GroupElement> klein{
          GroupElement{spec, rot_x(kPi).cast<Complex>()},
          GroupElement{spec, (rot_z(kPi) * rot_x(kPi)).cast<Complex>()}};
      add(pad_identity(spec, std::move(klein), k));
      if (genus >= 2) {
        // Generic irreducible tuple (a, b, b, a): [a,b][b,a] = 1.
        const CMat a = rot_z(1.2).cast<Complex>();
        const CMat b = rot_x(0.7).cast<Complex>();
        std::vector<GroupElement> irr{{spec, a}, {spec, b}, {spec, b},
                                      {spec, a}};
        add(pad_identity(spec, std::move(irr), k));
      }
      break;
    }
    case Family::U2: {
      const Complex lambda = bundle.central_target.m(0, 0);
      if (std::abs(lambda - 1.0) < 1e-12) {
        std::vector<GroupElement> central;
        for (int i = 0; i < k; ++i) {
          CMat g = std::exp(kI * kGenericAngles[i]) * CMat::Identity(2, 2);
          central.push_back({spec, g});
        }
        add(std::move(central));
        std::vector<GroupElement> torus;
        for (int i = 0; i < k; ++i) {
          CMat t = CMat::Zero(2, 2);
          t(0, 0) = std::exp(kI * kGenericAngles[i]);
          t(1, 1) = std::exp(kI * kGenericAngles[(i + 5) % 12]);
          torus.push_back({spec, t});
        }
        add(std::move(torus));
        if (genus >= 2) {
          const CMat a = std::exp(kI * 0.4) * rotation2(1.2);
          CMat b(2, 2);
          b << std::cos(0.7), kI * std::sin(0.7), kI * std::sin(0.7),
              std::cos(0.7);
          std::vector<GroupElement> irr{{spec, a}, {spec, b}, {spec, b},
                                        {spec, a}};
          add(pad_identity(spec, std::move(irr), k));
        }
      } else {
        // Odd type: embed the SU2 construction with c = -I.
        CMat sx(2, 2), sy(2, 2);
        sx << 0, kI, kI, 0;
        sy << 0, 1, -1, 0;
        const int pairs = genus % 2 == 1 ? genus : genus - 1;
        if (std::abs(lambda + 1.0) < 1e-12 && pairs >= 1) {
          std::vector<GroupElement> hs;
          for (int j = 0; j < pairs; ++j) {
            hs.push_back({spec, sx});
            hs.push_back({spec, sy});
          }
          add(pad_identity(spec, std::move(hs), k));
        }
      }
      break;
    }
    case Family::O2: {
      if ((bundle.central_target.m - CMat::Identity(2, 2)).norm() < 1e-12 &&
          bundle.component_signs) {
        // Everything in {I, reflection(0)} commutes, so the relator closes.
        std::vector<GroupElement> hs;
        for (int i = 0; i < k; ++i)
          hs.push_back((*bundle.component_signs)[i] > 0
                           ? identity(spec)
                           : GroupElement{spec, reflection2(0.0)});
        add(std::move(hs));
      }
      break;
    }
    case Family::O3: {
      if (!bundle.component_signs) break;
      const bool flat =
          (bundle.central_target.m - CMat::Identity(3, 3)).norm() < 1e-12;
      if (!flat) break;
      const GroupSpec so3{Family::SO3, 1};
      const BundleData so3_bundle = make_bundle(so3, genus, identity(so3));
      for (const auto& base : seed_representatives(so3_bundle)) {
        std::vector<GroupElement> hs;
        for (int i = 0; i < k; ++i) {
          const Complex s((*bundle.component_signs)[i], 0.0);
          hs.push_back({spec, CMat(s * base.holonomies[i].m)});
        }
        add(std::move(hs));
      }
      break;
    }
    case Family::Torus:
      break;
  }
  return out;
}

}  // namespace ym

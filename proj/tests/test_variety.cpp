#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ym/strata.hpp"
#include "ym/variety.hpp"

using namespace ym;

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kIm(0.0, 1.0);

GroupElement isigma(int k) {
  CMat m(2, 2);
  if (k == 1)
    m << 0, kIm, kIm, 0;
  else
    m << 0, 1, -1, 0;
  return {GroupSpec{Family::SU2, 1}, m};
}

GroupElement su2_torus(double theta) {
  CMat t = CMat::Zero(2, 2);
  t(0, 0) = std::exp(kIm * theta);
  t(1, 1) = std::exp(-kIm * theta);
  return {GroupSpec{Family::SU2, 1}, t};
}

std::string holonomy_bytes(const Representation& rep) {
  std::ostringstream os;
  for (const auto& h : rep.holonomies)
    for (int i = 0; i < h.m.rows(); ++i)
      for (int j = 0; j < h.m.cols(); ++j) {
        const double re = h.m(i, j).real(), im = h.m(i, j).imag();
        os.write(reinterpret_cast<const char*>(&re), sizeof(re));
        os.write(reinterpret_cast<const char*>(&im), sizeof(im));
      }
  return os.str();
}

}  // namespace

TEST_CASE("variety residual: frozen values") {
  const GroupSpec su2{Family::SU2, 1};
  const GroupSpec t1{Family::Torus, 1};

  CMat a = CMat::Zero(1, 1), b = CMat::Zero(1, 1);
  a(0, 0) = std::exp(kIm * 0.77);
  b(0, 0) = std::exp(kIm * (-2.1));
  CHECK(variety_residual(make_bundle(t1, 1, identity(t1)),
                         {GroupElement{t1, a}, GroupElement{t1, b}}) <
        1e-15);

  CHECK(variety_residual(make_bundle(su2, 1, minus_identity(su2)),
                         {isigma(1), isigma(2)}) < 1e-15);

  const double r = variety_residual(make_bundle(su2, 1, identity(su2)),
                                    {isigma(1), isigma(2)});
  CHECK(std::abs(r - 2.0 * std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("solve: convergence across bundles") {
  struct Case {
    GroupSpec spec;
    int genus;
    bool minus;
    std::optional<std::vector<int>> phi;
  };
  const std::vector<Case> cases = {
      {{Family::SU2, 1}, 2, false, {}},
      {{Family::SU2, 1}, 1, true, {}},
      {{Family::SU2, 1}, 3, true, {}},
      {{Family::SO3, 1}, 2, false, {}},
      {{Family::U2, 1}, 2, true, {}},
      {{Family::U2, 1}, 3, false, {}},
      {{Family::O2, 1}, 2, false, std::vector<int>{-1, 1, 1, 1}},
      {{Family::O2, 1}, 1, false, std::vector<int>{-1, 1}},
      {{Family::O3, 1}, 2, false, std::vector<int>{1, -1, 1, 1}},
      {{Family::Torus, 2}, 2, false, {}},
  };
  for (const auto& c : cases) {
    const GroupElement target =
        c.minus ? minus_identity(c.spec) : identity(c.spec);
    const BundleData bundle = make_bundle(c.spec, c.genus, target, c.phi);
    for (std::uint64_t seed : {0, 1, 2, 3, 4}) {
      SolverConfig cfg;
      cfg.seed = seed;
      const Representation rep = solve(bundle, cfg);
      CHECK(representation_residual(rep) <= cfg.residual_target);
    }
  }
}

TEST_CASE("solve: determinism and monotone residual decrease") {
  const GroupSpec su2{Family::SU2, 1};
  const BundleData bundle = make_bundle(su2, 2, identity(su2));
  SolverConfig cfg;
  cfg.seed = 1234;

  std::vector<double> hist1, hist2;
  const Representation r1 = solve_traced(bundle, cfg, std::nullopt, &hist1);
  const Representation r2 = solve_traced(bundle, cfg, std::nullopt, &hist2);
  CHECK(holonomy_bytes(r1) == holonomy_bytes(r2));
  CHECK(hist1 == hist2);
  for (std::size_t i = 0; i + 1 < hist1.size(); ++i)
    CHECK(hist1[i + 1] < hist1[i]);
}

TEST_CASE("solve: seeded near a known solution stays near it") {
  const GroupSpec su2{Family::SU2, 1};
  const BundleData bundle = make_bundle(su2, 1, minus_identity(su2));
  std::vector<GroupElement> near = {isigma(1), isigma(2)};
  Rng rng(3);
  for (auto& h : near) {
    CMat noise(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        noise(i, j) = Complex(rng.normal(), rng.normal());
    h = project_to_group(h.m + 1e-3 * noise, su2);
  }
  SolverConfig cfg;
  const Representation rep = solve(bundle, cfg, near);
  CHECK(representation_residual(rep) <= cfg.residual_target);
  CHECK((rep.holonomies[0].m - isigma(1).m).norm() < 1e-2);
  CHECK((rep.holonomies[1].m - isigma(2).m).norm() < 1e-2);
}

TEST_CASE("solve: infeasible torus target does not converge") {
  const GroupSpec t1{Family::Torus, 1};
  const BundleData bundle = make_bundle(t1, 2, minus_identity(t1));
  SolverConfig cfg;
  cfg.max_iters = 50;
  CHECK_THROWS_AS((void)solve(bundle, cfg), NoConvergenceError);
  try {
    (void)solve(bundle, cfg);
  } catch (const NoConvergenceError& e) {
    CHECK(std::abs(e.final_residual - 2.0) < 1e-12);
  }
}

TEST_CASE("tangent_perturb: identity at magnitude zero and O(m) motion") {
  const GroupSpec su2{Family::SU2, 1};
  const BundleData bundle = make_bundle(su2, 2, identity(su2));
  SolverConfig cfg;
  cfg.seed = 5;
  const Representation rep = solve(bundle, cfg);

  const Representation same = tangent_perturb(rep, 0.0, 99);
  CHECK(holonomy_bytes(same) == holonomy_bytes(rep));

  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    const double m = 1e-2;
    const Representation moved = tangent_perturb(rep, m, seed);
    double dist = 0.0;
    for (int i = 0; i < 4; ++i)
      dist = std::max(dist,
                      (moved.holonomies[i].m - rep.holonomies[i].m).norm());
    CHECK(dist > 0.0);
    CHECK(dist < 10 * m);
  }
}

TEST_CASE("tangent_perturb from a central point reaches the top stratum") {
  const GroupSpec su2{Family::SU2, 1};
  const BundleData bundle = make_bundle(su2, 2, identity(su2));
  const Representation central = make_representation(
      bundle, {identity(su2), minus_identity(su2), identity(su2),
               minus_identity(su2)});
  int top = 0;
  for (int seed = 0; seed < 50; ++seed) {
    const Representation moved = tangent_perturb(central, 1e-2, seed);
    if (classify_point(moved).top) ++top;
  }
  CHECK(top >= 49);
}

TEST_CASE("torus-direction perturbation stays in the torus stratum") {
  const GroupSpec su2{Family::SU2, 1};
  const BundleData bundle = make_bundle(su2, 2, identity(su2));
  std::vector<GroupElement> hs;
  for (int i = 0; i < 4; ++i) hs.push_back(su2_torus(0.4 + 0.5 * i));
  const Representation rep = make_representation(bundle, hs);
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<GroupElement> moved;
    for (int i = 0; i < 4; ++i) {
      RVec c = RVec::Zero(3);
      c[2] = 1e-2 * rng.normal();  // torus direction of the algebra
      const AlgebraElement x{su2, algebra_from_coords(su2, c)};
      moved.push_back({su2, CMat(exp(x).m * rep.holonomies[i].m)});
    }
    SolverConfig cfg;
    const Representation back = solve(bundle, cfg, moved);
    CHECK(classify_point(back).label.symbol == "(T)");
  }
}

TEST_CASE("project_su2_so3: kernel, deck invariance, explicit half-turns") {
  const GroupSpec su2{Family::SU2, 1};

  const Representation central = make_representation(
      make_bundle(su2, 2, identity(su2)),
      {identity(su2), minus_identity(su2), minus_identity(su2),
       identity(su2)});
  const Representation image = project_su2_so3(central);
  for (const auto& h : image.holonomies)
    CHECK((h.m - CMat::Identity(3, 3)).norm() < 1e-14);

  SolverConfig cfg;
  cfg.seed = 21;
  const Representation rep = solve(make_bundle(su2, 2, identity(su2)), cfg);
  const Representation base = project_su2_so3(rep);
  for (int mask = 1; mask < 16; ++mask) {
    std::vector<GroupElement> twisted = rep.holonomies;
    for (int i = 0; i < 4; ++i)
      if (mask & (1 << i)) twisted[i].m = -twisted[i].m;
    const Representation timage =
        project_su2_so3(make_representation(rep.bundle, twisted));
    for (int i = 0; i < 4; ++i)
      CHECK((timage.holonomies[i].m - base.holonomies[i].m).norm() == 0.0);
  }

  const Representation anti = make_representation(
      make_bundle(su2, 1, minus_identity(su2)), {isigma(1), isigma(2)});
  const Representation pair = project_su2_so3(anti);
  CMat rx = CMat::Zero(3, 3), ry = CMat::Zero(3, 3);
  rx(0, 0) = 1;
  rx(1, 1) = -1;
  rx(2, 2) = -1;
  ry(0, 0) = -1;
  ry(1, 1) = 1;
  ry(2, 2) = -1;
  CHECK((pair.holonomies[0].m - rx).norm() < 1e-14);
  CHECK((pair.holonomies[1].m - ry).norm() < 1e-14);
  CHECK((relator_value(pair).m - CMat::Identity(3, 3)).norm() < 1e-14);
}

TEST_CASE("lift_so3_su2: counts, central targets, round trips") {
  const GroupSpec so3{Family::SO3, 1};
  const GroupSpec su2{Family::SU2, 1};

  const Representation trivial = make_representation(
      make_bundle(so3, 2, identity(so3)),
      std::vector<GroupElement>(4, identity(so3)));
  const LiftResult lifted = lift_so3_su2(trivial);
  CHECK(lifted.lifts.size() == 16);
  CHECK((lifted.central.m - CMat::Identity(2, 2)).norm() == 0.0);
  for (const auto& l : lifted.lifts)
    for (const auto& h : l.holonomies)
      CHECK(std::min((h.m - CMat::Identity(2, 2)).norm(),
                     (h.m + CMat::Identity(2, 2)).norm()) < 1e-14);

  const Representation anti = make_representation(
      make_bundle(su2, 1, minus_identity(su2)), {isigma(1), isigma(2)});
  const LiftResult l2 = lift_so3_su2(project_su2_so3(anti));
  CHECK(l2.lifts.size() == 4);
  CHECK((l2.central.m + CMat::Identity(2, 2)).norm() == 0.0);

  for (std::uint64_t seed = 11; seed <= 30; ++seed) {
    SolverConfig cfg;
    cfg.seed = seed;
    const Representation rep =
        solve(make_bundle(so3, 2, identity(so3)), cfg);
    const LiftResult lr = lift_so3_su2(rep);
    CHECK(lr.lifts.size() == 16);
    for (const auto& l : lr.lifts) {
      const Representation back = project_su2_so3(l);
      for (int i = 0; i < 4; ++i)
        CHECK((back.holonomies[i].m - rep.holonomies[i].m).norm() < 1e-12);
    }
  }
}

TEST_CASE("quotient_by_central_torus: twists and the embedded diagram") {
  const GroupSpec u2{Family::U2, 1};
  const GroupSpec su2{Family::SU2, 1};
  const BundleData bundle = make_bundle(u2, 2, identity(u2));
  Rng rng(33);

  std::vector<GroupElement> central;
  for (int i = 0; i < 4; ++i)
    central.push_back(
        {u2, CMat(std::exp(kIm * rng.uniform(-kPi, kPi)) *
                  CMat::Identity(2, 2))});
  const Representation cimage =
      quotient_by_central_torus(make_representation(bundle, central));
  for (const auto& h : cimage.holonomies)
    CHECK((h.m - CMat::Identity(3, 3)).norm() < 1e-13);

  SolverConfig cfg;
  cfg.seed = 77;
  const Representation rep = solve(bundle, cfg);
  const Representation image = quotient_by_central_torus(rep);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<GroupElement> twisted;
    for (int i = 0; i < 4; ++i)
      twisted.push_back(
          {u2, CMat(std::exp(kIm * rng.uniform(-kPi, kPi)) *
                    rep.holonomies[i].m)});
    const Representation timage =
        quotient_by_central_torus(make_representation(bundle, twisted));
    for (int i = 0; i < 4; ++i)
      CHECK((timage.holonomies[i].m - image.holonomies[i].m).norm() <
            1e-12);
  }

  cfg.seed = 78;
  const Representation srep =
      solve(make_bundle(su2, 2, identity(su2)), cfg);
  std::vector<GroupElement> embedded;
  for (const auto& h : srep.holonomies) embedded.push_back({u2, h.m});
  const Representation via_u2 =
      quotient_by_central_torus(make_representation(bundle, embedded));
  const Representation via_su2 = project_su2_so3(srep);
  for (int i = 0; i < 4; ++i)
    CHECK((via_u2.holonomies[i].m - via_su2.holonomies[i].m).norm() <
          1e-13);
}

TEST_CASE("seed representatives sit on their varieties") {
  struct Case {
    GroupSpec spec;
    int genus;
    bool minus;
    std::optional<std::vector<int>> phi;
  };
  const std::vector<Case> cases = {
      {{Family::SU2, 1}, 2, false, {}},
      {{Family::SU2, 1}, 2, true, {}},
      {{Family::SO3, 1}, 2, false, {}},
      {{Family::U2, 1}, 2, false, {}},
      {{Family::U2, 1}, 2, true, {}},
      {{Family::O2, 1}, 2, false, std::vector<int>{-1, 1, 1, 1}},
      {{Family::O3, 1}, 2, false, std::vector<int>{-1, -1, 1, 1}},
  };
  for (const auto& c : cases) {
    const GroupElement target =
        c.minus ? minus_identity(c.spec) : identity(c.spec);
    const BundleData bundle = make_bundle(c.spec, c.genus, target, c.phi);
    const auto reps = seed_representatives(bundle);
    CHECK(!reps.empty());
    for (const auto& r : reps)
      CHECK(representation_residual(r) <= tol::rep);
  }
}

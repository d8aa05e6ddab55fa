#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ym/surface.hpp"
#include "ym/variety.hpp"
#include "oracles.hpp"

using namespace ym;

namespace {

const Complex kIm(0.0, 1.0);

GroupElement su2_torus(double theta) {
  CMat t = CMat::Zero(2, 2);
  t(0, 0) = std::exp(kIm * theta);
  t(1, 1) = std::exp(-kIm * theta);
  return {GroupSpec{Family::SU2, 1}, t};
}

GroupElement isigma(int k) {
  CMat m(2, 2);
  if (k == 1)
    m << 0, kIm, kIm, 0;
  else
    m << 0, 1, -1, 0;
  return {GroupSpec{Family::SU2, 1}, m};
}

Representation su2_torus_rep(int genus) {
  const GroupSpec su2{Family::SU2, 1};
  std::vector<GroupElement> hs;
  for (int i = 0; i < 2 * genus; ++i) hs.push_back(su2_torus(0.3 + 0.4 * i));
  return make_representation(make_bundle(su2, genus, identity(su2)), hs);
}

Representation trivial_rep(const GroupSpec& spec, int genus) {
  return make_representation(
      make_bundle(spec, genus, identity(spec)),
      std::vector<GroupElement>(2 * genus, identity(spec)));
}

Representation o2_rep(int genus) {
  const GroupSpec o2{Family::O2, 1};
  std::vector<int> phi(2 * genus, 1);
  phi[0] = -1;
  std::vector<GroupElement> hs;
  CMat refl(2, 2);
  refl << std::cos(0.6), std::sin(0.6), std::sin(0.6), -std::cos(0.6);
  hs.push_back({o2, refl});
  CMat rpi(2, 2);
  rpi << -1, 0, 0, -1;
  hs.push_back({o2, rpi});
  for (int i = 2; i < 2 * genus; ++i) {
    const double t = 0.5 + 0.3 * i;
    CMat rot(2, 2);
    rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    hs.push_back({o2, rot});
  }
  return make_representation(make_bundle(o2, genus, identity(o2), phi), hs);
}

Representation random_valid(const BundleData& bundle, std::uint64_t seed) {
  SolverConfig cfg;
  cfg.seed = seed;
  return solve(bundle, cfg);
}

Cochain random_cochain(const Representation& rep, Rng& rng) {
  return rng.normal_vector(2 * rep.genus() * rep.spec().algebra_dim());
}

}  // namespace

TEST_CASE("standard presentation") {
  for (int genus : {1, 2, 3}) {
    const SurfacePresentation p = presentation(genus);
    CHECK(p.relator.length() == 4 * genus);
    CHECK(p.n_generators() == 2 * genus);
  }
  const SurfacePresentation p1 = presentation(1);
  const std::vector<std::pair<int, int>> expected = {
      {1, 1}, {2, 1}, {1, -1}, {2, -1}};
  CHECK(p1.relator.letters == expected);
  CHECK(p1.generator_name(1) == "x1");
  CHECK(p1.generator_name(2) == "y1");
  CHECK(presentation(3).generator_name(5) == "x3");
  CHECK_THROWS_AS(presentation(0), ValidationError);
}

TEST_CASE("evaluate_word basics and multiplicativity") {
  const Representation rep = su2_torus_rep(2);
  CHECK((evaluate_word(rep, Word{}).m - CMat::Identity(2, 2)).norm() == 0.0);
  CHECK((evaluate_word(rep, Word::generator(1)).m - rep.holonomies[0].m)
            .norm() == 0.0);

  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Word w1, w2;
    for (int i = 0; i < 5; ++i) {
      w1.letters.emplace_back(1 + int(rng.uniform() * 4),
                              rng.uniform() < 0.5 ? 1 : -1);
      w2.letters.emplace_back(1 + int(rng.uniform() * 4),
                              rng.uniform() < 0.5 ? 1 : -1);
    }
    const CMat lhs = evaluate_word(rep, w1.concat(w2)).m;
    const CMat rhs = evaluate_word(rep, w1).m * evaluate_word(rep, w2).m;
    CHECK((lhs - rhs).norm() < 1e-10);
  }
}

TEST_CASE("relator values") {
  // Central holonomies: the relator collapses.
  const GroupSpec su2{Family::SU2, 1};
  std::vector<GroupElement> pm = {identity(su2), minus_identity(su2),
                                  minus_identity(su2), identity(su2)};
  const Representation central =
      make_representation(make_bundle(su2, 2, identity(su2)), pm);
  CHECK((relator_value(central).m - CMat::Identity(2, 2)).norm() < 1e-14);

  // Genus 1, (i sigma_x, i sigma_y): hand-multiplied 2x2 oracle gives -I.
  const Representation anti = make_representation(
      make_bundle(su2, 1, minus_identity(su2)), {isigma(1), isigma(2)});
  CMat a = isigma(1).m, b = isigma(2).m;
  CMat hand = a * b * a.adjoint() * b.adjoint();
  CHECK((hand + CMat::Identity(2, 2)).norm() == 0.0);
  CHECK((relator_value(anti).m - hand).norm() == 0.0);

  // Torus-valued representations satisfy the relator identically.
  const Representation torus = su2_torus_rep(2);
  CHECK((relator_value(torus).m - CMat::Identity(2, 2)).norm() < 1e-14);

  // Random SO3 tuples generically miss the identity.
  Rng rng(7);
  const GroupSpec so3{Family::SO3, 1};
  int nontrivial = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<GroupElement> hs;
    for (int i = 0; i < 4; ++i)
      hs.push_back(
          project_to_group(rng.ginibre_real(3).cast<Complex>(), so3));
    Representation raw{make_bundle(so3, 2, identity(so3)), hs};
    if ((relator_value(raw).m - CMat::Identity(3, 3)).norm() > 0.1)
      ++nontrivial;
  }
  CHECK(nontrivial == 20);
}

TEST_CASE("crossed extension: cocycle rules") {
  const Representation rep = su2_torus_rep(2);
  Rng rng(9);
  const Cochain u = random_cochain(rep, rng);

  // Single generator returns the stored vector.
  const AlgebraElement v1 = crossed_extension(rep, u, Word::generator(2));
  CHECK((algebra_coords(rep.spec(), v1.m) - u.segment(3, 3)).norm() < 1e-14);

  // x x^-1 cancels.
  Word cancel;
  cancel.letters = {{1, 1}, {1, -1}};
  CHECK(crossed_extension(rep, u, cancel).m.norm() < 1e-14);

  // A coboundary extends over the relator to (Ad(rho(r)) - I) xi = 0.
  const Representation irr =
      random_valid(make_bundle(rep.spec(), 2, identity(rep.spec())), 42);
  const RVec xi = rng.normal_vector(3);
  const TwistedCohomology tc = differentials(irr);
  const Cochain cob = tc.d0 * xi;
  CHECK(crossed_extension(irr, cob, presentation(2).relator).m.norm() <
        1e-12);
}

TEST_CASE("differentials: trivial and torus structure") {
  for (int genus : {1, 2}) {
    const TwistedCohomology tc =
        differentials(trivial_rep(GroupSpec{Family::SU2, 1}, genus));
    CHECK(tc.d0.norm() < 1e-12);
    CHECK(tc.d1.norm() < 1e-12);
  }

  // Torus-valued representation: both differentials vanish on torus
  // coordinates and preserve the root/torus splitting.
  const Representation rep = su2_torus_rep(2);
  const TwistedCohomology tc = differentials(rep);
  CHECK(tc.d0.col(2).norm() < 1e-12);  // torus direction of g
  for (int i = 0; i < 4; ++i) {
    CHECK(tc.d1.col(3 * i + 2).norm() < 1e-12);  // torus cochain directions
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(tc.d1(2, 3 * i + j)) < 1e-12);  // no torus output
  }
}

TEST_CASE("d1 d0 = 0 and Fox-derivative oracle across families") {
  struct Case {
    GroupSpec spec;
    int genus;
    std::optional<std::vector<int>> phi;
  };
  std::vector<Case> cases = {
      {{Family::SU2, 1}, 2, {}},
      {{Family::SO3, 1}, 2, {}},
      {{Family::U2, 1}, 2, {}},
      {{Family::Torus, 2}, 2, {}},
      {{Family::O2, 1}, 2, std::vector<int>{-1, 1, 1, 1}},
      {{Family::O3, 1}, 2, std::vector<int>{-1, 1, 1, 1}}};
  for (const auto& c : cases) {
    const BundleData bundle =
        make_bundle(c.spec, c.genus, identity(c.spec), c.phi);
    for (std::uint64_t seed : {1, 2, 3}) {
      const Representation rep = random_valid(bundle, seed);
      const TwistedCohomology tc = differentials(rep);
      CHECK((tc.d1 * tc.d0).norm() < 1e-10);
      CHECK((tc.d1 - oracle::fox_d1(rep)).norm() < 1e-10);
    }
  }
}

TEST_CASE("d1 matches the finite-difference relator derivative") {
  Rng rng(21);
  const GroupSpec su2{Family::SU2, 1};
  const BundleData bundle = make_bundle(su2, 2, identity(su2));
  for (int trial = 0; trial < 20; ++trial) {
    const Representation rep = random_valid(bundle, 100 + trial);
    const TwistedCohomology tc = differentials(rep);
    const Cochain u = random_cochain(rep, rng);
    const CMat mu = relator_value(rep).m;
    const CMat d1u = algebra_from_coords(rep.spec(), RVec(tc.d1 * u));

    RVec eps(3), err(3);
    for (int i = 0; i < 3; ++i) {
      eps[i] = 1e-3 / (1 << i);
      std::vector<GroupElement> moved;
      for (int j = 0; j < 4; ++j) {
        const AlgebraElement x{
            rep.spec(), algebra_from_coords(
                            rep.spec(), RVec(eps[i] * u.segment(3 * j, 3)))};
        moved.push_back({rep.spec(), CMat(exp(x).m * rep.holonomies[j].m)});
      }
      Representation shifted{rep.bundle, moved};
      err[i] = (relator_value(shifted).m - mu - eps[i] * d1u * mu).norm();
    }
    for (int i = 0; i + 1 < 3; ++i) {
      const double slope = std::log(err[i] / err[i + 1]) / std::log(2.0);
      CHECK(slope >= 1.9);
    }
  }
}

TEST_CASE("conjugating the representation conjugates the differentials") {
  Rng rng(23);
  const GroupSpec su2{Family::SU2, 1};
  const Representation rep =
      random_valid(make_bundle(su2, 2, identity(su2)), 7);
  const TwistedCohomology tc = differentials(rep);
  const GroupElement h = exp(AlgebraElement{
      su2, algebra_from_coords(su2, rng.normal_vector(3))});
  std::vector<GroupElement> conj;
  for (const auto& g : rep.holonomies)
    conj.push_back({su2, CMat(h.m * g.m * h.m.adjoint())});
  const Representation crep = make_representation(rep.bundle, conj);
  const TwistedCohomology ctc = differentials(crep);

  const RMat ad = adjoint_operator(h);
  RMat big = RMat::Zero(12, 12);
  for (int i = 0; i < 4; ++i) big.block(3 * i, 3 * i, 3, 3) = ad;
  CHECK((ctc.d0 - big * tc.d0 * ad.transpose()).norm() < 1e-10);
  CHECK((ctc.d1 - ad * tc.d1 * big.transpose()).norm() < 1e-10);
}

TEST_CASE("cohomology dimensions: named cases") {
  for (int genus : {1, 2, 3}) {
    const TwistedCohomology tc =
        cohomology(trivial_rep(GroupSpec{Family::SU2, 1}, genus));
    CHECK(tc.h0 == 3);
    CHECK(tc.h1 == 6 * genus);
    CHECK(tc.h2 == 3);
  }
  {
    const GroupSpec su2{Family::SU2, 1};
    const Representation irr =
        random_valid(make_bundle(su2, 2, identity(su2)), 11);
    const TwistedCohomology tc = cohomology(irr);
    CHECK(tc.h0 == 0);
    CHECK(tc.h1 == 6);
    CHECK(tc.h2 == 0);
  }
  {
    const TwistedCohomology tc = cohomology(o2_rep(2));
    CHECK(tc.h0 == 0);
    CHECK(tc.h1 == 2);
    CHECK(tc.h2 == 0);
  }
}

TEST_CASE("cohomology: harmonic bases are orthonormal kernels") {
  const Representation rep = su2_torus_rep(2);
  const TwistedCohomology tc = cohomology(rep);
  CHECK(tc.h0 == 1);
  CHECK(tc.h1 == 8);  // 2l torus + (4l - 4) root directions at genus 2
  CHECK(tc.h2 == 1);
  CHECK((tc.harmonic1.transpose() * tc.harmonic1 -
         RMat::Identity(tc.h1, tc.h1))
            .norm() < 1e-12);
  CHECK((tc.d1 * tc.harmonic1).norm() < 1e-10);
  CHECK((tc.d0.transpose() * tc.harmonic1).norm() < 1e-10);
  CHECK((tc.d1.transpose() * tc.harmonic2).norm() < 1e-10);
  CHECK((tc.d0 * tc.harmonic0).norm() < 1e-10);
}

TEST_CASE("Euler characteristic and duality on random valid points") {
  const std::vector<GroupSpec> specs = {{Family::SU2, 1}, {Family::SO3, 1},
                                        {Family::U2, 1},  {Family::O2, 1},
                                        {Family::O3, 1},  {Family::Torus, 1}};
  for (const auto& spec : specs) {
    for (int genus : {1, 2, 3}) {
      std::optional<std::vector<int>> phi;
      if (!spec.is_connected()) {
        std::vector<int> signs(2 * genus, 1);
        signs[0] = -1;
        phi = signs;
      }
      const BundleData bundle =
          make_bundle(spec, genus, identity(spec), phi);
      for (std::uint64_t seed : {10, 20, 30}) {
        const Representation rep = random_valid(bundle, seed);
        const TwistedCohomology tc = cohomology(rep);
        CHECK(tc.h0 - tc.h1 + tc.h2 ==
              (2 - 2 * genus) * spec.algebra_dim());
        CHECK(tc.h0 == tc.h2);
      }
    }
  }
}

TEST_CASE("borderline singular values raise RankAmbiguity") {
  const GroupSpec su2{Family::SU2, 1};
  std::vector<GroupElement> hs = {su2_torus(2.5e-8), identity(su2),
                                  identity(su2), identity(su2)};
  const Representation rep =
      make_representation(make_bundle(su2, 2, identity(su2)), hs);
  CHECK_THROWS_AS((void)cohomology(rep), RankAmbiguityError);
}

TEST_CASE("conjugation invariance of cohomology dimensions") {
  Rng rng(31);
  const GroupSpec so3{Family::SO3, 1};
  const Representation rep =
      random_valid(make_bundle(so3, 2, identity(so3)), 17);
  const TwistedCohomology tc = cohomology(rep);
  for (int trial = 0; trial < 5; ++trial) {
    const GroupElement h = exp(AlgebraElement{
        so3, algebra_from_coords(so3, rng.normal_vector(3))});
    std::vector<GroupElement> conj;
    for (const auto& g : rep.holonomies)
      conj.push_back({so3, CMat(h.m * g.m * h.m.adjoint())});
    const TwistedCohomology ctc =
        cohomology(make_representation(rep.bundle, conj));
    CHECK(ctc.h0 == tc.h0);
    CHECK(ctc.h1 == tc.h1);
    CHECK(ctc.h2 == tc.h2);
  }
}

TEST_CASE("representation invariants are enforced") {
  const GroupSpec su2{Family::SU2, 1};
  // Relator residual violation.
  CHECK_THROWS_AS(make_representation(make_bundle(su2, 1, identity(su2)),
                                      {isigma(1), isigma(2)}),
                  ValidationError);
  // Non-central target.
  CHECK_THROWS_AS(make_bundle(su2, 1, su2_torus(0.5)), ValidationError);
  // Missing component map for a disconnected group.
  const GroupSpec o2{Family::O2, 1};
  CHECK_THROWS_AS(make_bundle(o2, 1, identity(o2)), ValidationError);
  // Trivial component map.
  CHECK_THROWS_AS(make_bundle(o2, 1, identity(o2), std::vector<int>{1, 1}),
                  ValidationError);
  // Wrong component.
  CHECK_THROWS_AS(
      make_representation(
          make_bundle(o2, 1, identity(o2), std::vector<int>{-1, 1}),
          {identity(o2), identity(o2)}),
      ValidationError);
}

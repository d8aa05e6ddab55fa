#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ym/strata.hpp"

using namespace ym;

namespace {

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

Representation su2_rep(int genus, std::vector<GroupElement> hs,
                       bool minus = false) {
  const GroupSpec su2{Family::SU2, 1};
  return make_representation(
      make_bundle(su2, genus, minus ? minus_identity(su2) : identity(su2)),
      std::move(hs));
}

Representation klein_rep() {
  const GroupSpec so3{Family::SO3, 1};
  CMat rx = CMat::Zero(3, 3), ry = CMat::Zero(3, 3);
  rx(0, 0) = 1;
  rx(1, 1) = -1;
  rx(2, 2) = -1;
  ry(0, 0) = -1;
  ry(1, 1) = 1;
  ry(2, 2) = -1;
  return make_representation(
      make_bundle(so3, 2, identity(so3)),
      {GroupElement{so3, rx}, GroupElement{so3, ry}, identity(so3),
       identity(so3)});
}

Representation irreducible_su2(int genus, std::uint64_t seed) {
  const GroupSpec su2{Family::SU2, 1};
  SolverConfig cfg;
  cfg.seed = seed;
  return solve(make_bundle(su2, genus, identity(su2)), cfg);
}

}  // namespace

TEST_CASE("stabilizer: labels and realized components") {
  const Representation irr =
      su2_rep(2, {isigma(1), isigma(2), isigma(1), isigma(2)});
  const Stabilizer s1 = stabilizer(irr);
  CHECK(s1.label.symbol == "(Z)");
  bool has_minus = false;
  for (const auto& z : s1.components)
    if ((z.m + CMat::Identity(2, 2)).norm() < 1e-12) has_minus = true;
  CHECK(has_minus);

  std::vector<GroupElement> torus;
  for (int i = 0; i < 4; ++i) torus.push_back(su2_torus(0.5 + 0.3 * i));
  CHECK(stabilizer(su2_rep(2, torus)).label.symbol == "(T)");

  const Stabilizer sv = stabilizer(klein_rep());
  CHECK(sv.label.symbol == "(V)");
  CHECK(sv.components.size() == 4);
}

TEST_CASE("irreducibility flags per family") {
  CHECK(is_representation_irreducible(
      su2_rep(2, {isigma(1), isigma(2), isigma(1), isigma(2)})));
  std::vector<GroupElement> torus;
  for (int i = 0; i < 4; ++i) torus.push_back(su2_torus(0.5 + 0.3 * i));
  CHECK(!is_representation_irreducible(su2_rep(2, torus)));
  CHECK(is_representation_irreducible(klein_rep()));
}

TEST_CASE("z_action_on_h1: central elements act trivially") {
  const Representation irr = irreducible_su2(2, 4);
  const TwistedCohomology tc = cohomology(irr);
  const Stabilizer st = stabilizer(irr);
  const H1Action act = z_action_on_h1(irr, st, tc);
  REQUIRE(act.component_ops.size() == 2);  // I and -I
  for (const auto& op : act.component_ops) {
    CHECK((op * op.transpose() - RMat::Identity(tc.h1, tc.h1)).norm() <
          1e-10);
    CHECK((op - RMat::Identity(tc.h1, tc.h1)).norm() < 1e-10);
  }
  CHECK(act.infinitesimal_ops.empty());
}

TEST_CASE("z_action_on_h1: torus stabilizer rotates root cochains") {
  std::vector<GroupElement> hs;
  for (int i = 0; i < 4; ++i) hs.push_back(su2_torus(0.4 + 0.45 * i));
  const Representation rep = su2_rep(2, hs);
  const TwistedCohomology tc = cohomology(rep);
  const Stabilizer st = stabilizer(rep);
  const H1Action act = z_action_on_h1(rep, st, tc);
  REQUIRE(act.infinitesimal_ops.size() == 1);
  const RMat& inf = act.infinitesimal_ops[0];
  // Skew, non-trivial, with a 2l-dimensional kernel (the torus cochains).
  CHECK((inf + inf.transpose()).norm() < 1e-10);
  CHECK(inf.norm() > 0.1);
  Eigen::JacobiSVD<RMat> svd(inf);
  int null = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] < 1e-8) ++null;
  CHECK(null == 4);
}

TEST_CASE("z_action_on_h1: Klein-four operators are non-trivial involutions") {
  const Representation rep = klein_rep();
  const TwistedCohomology tc = cohomology(rep);
  const Stabilizer st = stabilizer(rep);
  const H1Action act = z_action_on_h1(rep, st, tc);
  REQUIRE(act.component_ops.size() == 4);
  double max_dist = 0.0;
  for (const auto& op : act.component_ops) {
    CHECK((op * op - RMat::Identity(tc.h1, tc.h1)).norm() < 1e-10);
    max_dist =
        std::max(max_dist, (op - RMat::Identity(tc.h1, tc.h1)).norm());
  }
  CHECK(max_dist > 0.5);
}

TEST_CASE("classify_point: the three SU2 strata at genus 2") {
  const PointClassification irr = classify_point(irreducible_su2(2, 9));
  CHECK(irr.label.symbol == "(Z)");
  CHECK(irr.stratum_dim == 6);
  CHECK(irr.h1 == 6);
  CHECK(irr.irreducible);
  CHECK(irr.nonsingular);
  CHECK(irr.top);

  std::vector<GroupElement> torus;
  for (int i = 0; i < 4; ++i) torus.push_back(su2_torus(0.5 + 0.3 * i));
  const PointClassification t = classify_point(su2_rep(2, torus));
  CHECK(t.label.symbol == "(T)");
  CHECK(t.stratum_dim == 4);
  CHECK(t.h1 == 8);
  CHECK(!t.irreducible);
  CHECK(!t.nonsingular);
  CHECK(!t.top);

  const GroupSpec su2{Family::SU2, 1};
  const PointClassification c = classify_point(su2_rep(
      2, {identity(su2), minus_identity(su2), minus_identity(su2),
          identity(su2)}));
  CHECK(c.label.symbol == "(SU2)");
  CHECK(c.stratum_dim == 0);
  CHECK(c.h1 == 12);
  CHECK(!c.top);
}

TEST_CASE("classify_point: nonsingular iff stratum_dim = h1") {
  std::vector<Representation> reps;
  reps.push_back(irreducible_su2(2, 31));
  std::vector<GroupElement> torus;
  for (int i = 0; i < 4; ++i) torus.push_back(su2_torus(0.5 + 0.3 * i));
  reps.push_back(su2_rep(2, torus));
  reps.push_back(klein_rep());
  const GroupSpec su2{Family::SU2, 1};
  reps.push_back(su2_rep(2, std::vector<GroupElement>(4, identity(su2))));
  for (const auto& rep : reps) {
    const PointClassification pc = classify_point(rep);
    CHECK(pc.nonsingular == (pc.stratum_dim == pc.h1));
  }
}

TEST_CASE("classify_point is conjugation invariant") {
  Rng rng(41);
  const Representation rep = irreducible_su2(2, 13);
  const PointClassification pc = classify_point(rep);
  for (int trial = 0; trial < 10; ++trial) {
    const GroupSpec su2{Family::SU2, 1};
    const GroupElement h = exp(AlgebraElement{
        su2, algebra_from_coords(su2, rng.normal_vector(3))});
    std::vector<GroupElement> conj;
    for (const auto& g : rep.holonomies)
      conj.push_back({su2, CMat(h.m * g.m * h.m.adjoint())});
    const PointClassification cpc =
        classify_point(make_representation(rep.bundle, conj));
    CHECK(cpc.label == pc.label);
    CHECK(cpc.stratum_dim == pc.stratum_dim);
    CHECK(cpc.h1 == pc.h1);
    CHECK(cpc.irreducible == pc.irreducible);
    CHECK(cpc.nonsingular == pc.nonsingular);
    CHECK(cpc.top == pc.top);
  }
}

TEST_CASE("census: SU2 genus 2 finds the three labels with correct data") {
  const GroupSpec su2{Family::SU2, 1};
  CensusConfig cfg;
  cfg.n_samples = 40;
  cfg.solver.seed = 7;
  cfg.density_trials = 10;
  const CensusReport rep = census(make_bundle(su2, 2, identity(su2)), cfg);

  CHECK(rep.samples_attempted ==
        40 + 18);  // 16 central + torus + explicit irreducible
  CHECK(rep.samples_converged + rep.solve_failures == rep.samples_attempted);
  int total = 0;
  for (const auto& row : rep.rows) total += row.count;
  CHECK(total == rep.samples_converged);

  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.rows[0].label.symbol == "(Z)");
  CHECK(rep.rows[0].stratum_dim == 6);
  CHECK(rep.rows[1].label.symbol == "(T)");
  CHECK(rep.rows[1].stratum_dim == 4);
  CHECK(rep.rows[2].label.symbol == "(SU2)");
  CHECK(rep.rows[2].stratum_dim == 0);
  CHECK(rep.rows[2].count == 16);

  CHECK(rep.top_label == "SU2:(Z)");
  CHECK(!rep.top_heuristic);
  int top_rows = 0;
  for (const auto& row : rep.rows) top_rows += row.top ? 1 : 0;
  CHECK(top_rows == 1);

  for (const auto& [label, st] : rep.density) {
    CHECK(st.trials == 10);
    CHECK(st.landed_top >= 9);
    CHECK(st.landed_strictly_larger == st.converged);
  }
  CHECK(rep.volume_indicator > 0.0);
}

TEST_CASE("census: genus 1 SU2 falls back to the torus label as top") {
  const GroupSpec su2{Family::SU2, 1};
  CensusConfig cfg;
  cfg.n_samples = 60;
  cfg.solver.seed = 3;
  cfg.density_trials = 0;
  const CensusReport rep = census(make_bundle(su2, 1, identity(su2)), cfg);
  CHECK(rep.top_label == "SU2:(T)");
  CHECK(rep.top_heuristic);
  for (const auto& row : rep.rows) CHECK(row.label.symbol != "(Z)");
}

TEST_CASE("census: odd U2 type is a single stratum") {
  const GroupSpec u2{Family::U2, 1};
  CensusConfig cfg;
  cfg.n_samples = 50;
  cfg.solver.seed = 11;
  cfg.density_trials = 0;
  const CensusReport rep =
      census(make_bundle(u2, 2, minus_identity(u2)), cfg);
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].label.symbol == "(S1)");
  CHECK(rep.top_label == "U2:(S1)");
  CHECK(!rep.top_heuristic);
  CHECK(rep.rows[0].stratum_dim == 10);  // 8l - 6 at genus 2
}

TEST_CASE("census: threaded run reproduces the single-threaded result") {
  const GroupSpec so3{Family::SO3, 1};
  CensusConfig cfg;
  cfg.n_samples = 24;
  cfg.solver.seed = 5;
  cfg.density_trials = 5;
  const CensusReport a = census(make_bundle(so3, 2, identity(so3)), cfg);
  cfg.threads = 4;
  const CensusReport b = census(make_bundle(so3, 2, identity(so3)), cfg);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].label == b.rows[i].label);
    CHECK(a.rows[i].count == b.rows[i].count);
    CHECK(a.rows[i].example_seed == b.rows[i].example_seed);
  }
  CHECK(a.top_label == b.top_label);
  CHECK(a.volume_indicator == b.volume_indicator);
}

TEST_CASE("census: O2 with non-trivial component map") {
  const GroupSpec o2{Family::O2, 1};
  CensusConfig cfg;
  cfg.n_samples = 30;
  cfg.solver.seed = 17;
  cfg.density_trials = 0;
  const CensusReport rep = census(
      make_bundle(o2, 2, identity(o2), std::vector<int>{-1, 1, 1, 1}), cfg);
  for (const auto& row : rep.rows) {
    CHECK(row.label.identity_dim == 0);  // finite stabilizers only
    CHECK(row.h0 == 0);
    CHECK(row.h1 == 2);
  }
  CHECK(rep.top_label == "O2:(Z2)");
}

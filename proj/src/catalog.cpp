#include "ym/catalog.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <set>

#include "ym/linalg.hpp"
#include "ym/localmodel.hpp"

namespace ym {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);

std::string fmt(const char* format, ...) {
  char buf[256];
  va_list args;
  va_start(args, format);
  vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

void add_check(CatalogRecord& rec, const std::string& name, bool pass,
               const std::string& detail = "") {
  rec.checks.push_back({name, pass, detail});
}

GroupElement torus_element(const GroupSpec& spec, double angle) {
  if (spec.family == Family::SU2 || spec.family == Family::U2) {
    CMat t = CMat::Zero(2, 2);
    t(0, 0) = std::exp(kI * angle);
    t(1, 1) = std::exp(-kI * angle);
    return {spec, t};
  }
  if (spec.family == Family::SO3) {
    CMat t = CMat::Zero(3, 3);
    t(0, 0) = std::cos(angle);
    t(0, 1) = -std::sin(angle);
    t(1, 0) = std::sin(angle);
    t(1, 1) = std::cos(angle);
    t(2, 2) = 1.0;
    return {spec, t};
  }
  throw UnsupportedGroupError("torus_element: unsupported family");
}

}  // namespace

CatalogRecord genus1_torus_model(Family family, int n_samples,
                                 std::uint64_t seed) {
  CatalogRecord rec;
  const GroupSpec spec{family, 1};
  rec.name = "genus1-torus-model";
  rec.params = "group=" + spec.name() +
               " samples=" + std::to_string(n_samples);
  rec.seed = seed;
  if (family != Family::SU2 && family != Family::SO3)
    throw UnsupportedGroupError("genus1_torus_model expects SU2 or SO3");

  const BundleData bundle = make_bundle(spec, 1, identity(spec));
  const std::string generic_label =
      family == Family::SU2 ? "SU2:(T)" : "SO3:(SO2)";

  // Generic commuting pairs in the maximal torus.
  Rng rng(seed);
  bool generic_ok = true;
  for (int i = 0; i < 25; ++i) {
    const double a = rng.uniform(0.2, kPi - 0.2);
    const double b = rng.uniform(-kPi + 0.2, -0.2);
    Representation rep = make_representation(
        bundle, {torus_element(spec, a), torus_element(spec, b)});
    if (classify_point(rep).label.to_string() != generic_label)
      generic_ok = false;
  }
  add_check(rec, "generic torus pair has label " + generic_label, generic_ok);

  // The Weyl-fixed locus consists of the angle-(0 or pi) pairs; stabilizers
  // jump strictly there.
  bool fixed_ok = true;
  const OrbitTypeLabel generic =
      classify_point(make_representation(
                         bundle, {torus_element(spec, 0.7),
                                  torus_element(spec, 1.9)}))
          .label;
  for (double a : {0.0, kPi})
    for (double b : {0.0, kPi}) {
      Representation rep = make_representation(
          bundle, {torus_element(spec, a), torus_element(spec, b)});
      const OrbitTypeLabel label = classify_point(rep).label;
      if (!(generic < label)) fixed_ok = false;
    }
  add_check(rec, "Weyl-fixed pairs have strictly larger stabilizer",
            fixed_ok);

  // Random solves: no representation-irreducible point over the flat type.
  int converged = 0, irreducible_flat = 0, skipped = 0;
  for (int i = 0; i < n_samples; ++i) {
    SolverConfig cfg;
    cfg.seed = mix_seed(seed, i);
    try {
      Representation rep = solve(bundle, cfg);
      ++converged;
      const bool irr = is_representation_irreducible(rep);
      if (family == Family::SU2) {
        if (irr) ++irreducible_flat;
      } else {
        // SO3 solves sample both bundle types; only the flat type (lift
        // central target I) carries the claim.
        const LiftResult lift = lift_so3_su2(rep);
        const bool flat =
            (lift.central.m - CMat::Identity(2, 2)).norm() < 1e-9;
        if (flat && irr) ++irreducible_flat;
        if (!flat) ++skipped;
      }
    } catch (const NoConvergenceError&) {
    }
  }
  add_check(rec, "no irreducible point among flat-type random solves",
            converged > 0 && irreducible_flat == 0,
            fmt("converged=%d irreducible=%d nonflat=%d", converged,
                irreducible_flat, skipped));
  return rec;
}

CatalogRecord su2_strata(int genus, std::uint64_t seed) {
  if (genus < 2) throw ValidationError("su2_strata needs genus >= 2");
  CatalogRecord rec;
  rec.name = "su2-strata";
  rec.params = "genus=" + std::to_string(genus);
  rec.seed = seed;
  const GroupSpec spec{Family::SU2, 1};
  const int k = 2 * genus;
  const BundleData bundle = make_bundle(spec, genus, identity(spec));

  // Representatives of the three labels with their dimensions.
  std::vector<GroupElement> central(k, identity(spec));
  const PointClassification pc_central =
      classify_point(make_representation(bundle, central));
  std::vector<GroupElement> torus;
  for (int i = 0; i < k; ++i)
    torus.push_back(torus_element(spec, 0.3 + 0.4 * i));
  const Representation rep_torus = make_representation(bundle, torus);
  const PointClassification pc_torus = classify_point(rep_torus);
  SolverConfig cfg;
  cfg.seed = seed;
  const Representation rep_irr = solve(bundle, cfg);
  const PointClassification pc_irr = classify_point(rep_irr);

  add_check(rec, "central tuple: label (SU2), stratum dim 0",
            pc_central.label.symbol == "(SU2)" &&
                pc_central.stratum_dim == 0,
            fmt("dim=%d", pc_central.stratum_dim));
  add_check(rec, "torus tuple: label (T), stratum dim 2l",
            pc_torus.label.symbol == "(T)" &&
                pc_torus.stratum_dim == 2 * genus,
            fmt("dim=%d", pc_torus.stratum_dim));
  add_check(rec, "random solve: label (Z), stratum dim 6l-6",
            pc_irr.label.symbol == "(Z)" &&
                pc_irr.stratum_dim == 6 * genus - 6 && pc_irr.top,
            fmt("dim=%d label=%s", pc_irr.stratum_dim,
                pc_irr.label.to_string().c_str()));

  // The (SU2)-labeled set is exactly the 2^{2l} homomorphisms into {+-I}.
  int count = 0;
  bool all_central_label = true;
  std::set<std::string> distinct;
  for (int mask = 0; mask < (1 << k); ++mask) {
    std::vector<GroupElement> hs;
    std::string key;
    for (int i = 0; i < k; ++i) {
      const bool neg = mask & (1 << i);
      hs.push_back(neg ? minus_identity(spec) : identity(spec));
      key += neg ? '-' : '+';
    }
    const PointClassification pc =
        classify_point(make_representation(bundle, hs));
    if (pc.label.symbol != "(SU2)" || pc.stratum_dim != 0)
      all_central_label = false;
    distinct.insert(key);
    ++count;
  }
  add_check(rec, "central points: exactly 2^{2l} with label (SU2)",
            count == (1 << k) &&
                static_cast<int>(distinct.size()) == (1 << k) &&
                all_central_label,
            fmt("count=%d", count));

  // Weyl action on torus tuples is entrywise complex conjugation.
  CMat w(2, 2);
  w << 0, 1, -1, 0;
  bool weyl_ok = true;
  for (int i = 0; i < k; ++i) {
    const CMat conj =
        w * rep_torus.holonomies[i].m * w.adjoint();
    if ((conj - rep_torus.holonomies[i].m.conjugate()).norm() > 1e-12)
      weyl_ok = false;
  }
  add_check(rec, "Weyl element conjugates torus tuples entrywise", weyl_ok);

  // The centre fixes every point; in particular it sits in the (T) stabilizer.
  bool centre_ok = true;
  for (const auto& h : rep_torus.holonomies)
    if ((minus_identity(spec).m * h.m - h.m * minus_identity(spec).m).norm() >
        tol::group)
      centre_ok = false;
  add_check(rec, "(T) stabilizer contains the centre", centre_ok);
  return rec;
}

CatalogRecord so3_covering(int genus, std::uint64_t seed) {
  if (genus < 2) throw ValidationError("so3_covering needs genus >= 2");
  CatalogRecord rec;
  rec.name = "so3-covering";
  rec.params = "genus=" + std::to_string(genus);
  rec.seed = seed;
  const GroupSpec so3{Family::SO3, 1};
  const GroupSpec su2{Family::SU2, 1};
  const BundleData bundle = make_bundle(so3, genus, identity(so3));
  const int k = 2 * genus;
  const int n_lifts = 1 << k;

  int tested = 0;
  bool lifts_ok = true, project_ok = true, distinct_ok = true,
       common_ok = true;
  for (int i = 0; i < 20; ++i) {
    SolverConfig cfg;
    cfg.seed = mix_seed(seed, i);
    Representation rep;
    try {
      rep = solve(bundle, cfg);
    } catch (const NoConvergenceError&) {
      continue;
    }
    ++tested;
    const LiftResult lift = lift_so3_su2(rep);
    if (static_cast<int>(lift.lifts.size()) != n_lifts) lifts_ok = false;
    std::set<std::string> keys;
    for (const auto& l : lift.lifts) {
      if ((l.bundle.central_target.m - lift.central.m).norm() > 0)
        common_ok = false;
      const Representation back = project_su2_so3(l);
      for (int j = 0; j < k; ++j)
        if ((back.holonomies[j].m - rep.holonomies[j].m).norm() > 1e-9)
          project_ok = false;
      std::string key;
      for (int j = 0; j < k; ++j)
        key += fmt("%.17g;%.17g;%.17g;%.17g|", l.holonomies[j].m(0, 0).real(),
                   l.holonomies[j].m(0, 0).imag(),
                   l.holonomies[j].m(0, 1).real(),
                   l.holonomies[j].m(0, 1).imag());
      keys.insert(key);
    }
    if (static_cast<int>(keys.size()) != n_lifts) distinct_ok = false;
  }
  add_check(rec, fmt("%d lifts per point", n_lifts), tested > 0 && lifts_ok,
            fmt("points=%d", tested));
  add_check(rec, "all lifts share one central target", common_ok);
  add_check(rec, "every lift projects back to the SO3 point", project_ok);
  add_check(rec, "lifts pairwise distinct", distinct_ok);

  // Label correspondence under the covering: (SU2)->(SO3), (T)->(SO2),
  // (Z)->(e) on generic representatives.
  const BundleData su2_bundle = make_bundle(su2, genus, identity(su2));
  std::vector<GroupElement> central(k, identity(su2));
  std::vector<GroupElement> torus;
  for (int i = 0; i < k; ++i)
    torus.push_back(torus_element(su2, 0.4 + 0.37 * i));
  SolverConfig cfg;
  cfg.seed = mix_seed(seed, 101);
  const Representation irr = solve(su2_bundle, cfg);
  bool corr = true;
  corr &= classify_point(project_su2_so3(make_representation(
                             su2_bundle, central)))
              .label.symbol == "(SO3)";
  corr &= classify_point(project_su2_so3(
                             make_representation(su2_bundle, torus)))
              .label.symbol == "(SO2)";
  corr &= classify_point(irr).label.symbol == "(Z)" &&
          classify_point(project_su2_so3(irr)).label.symbol == "(e)";
  add_check(rec, "labels correspond: (SU2)->(SO3), (T)->(SO2), (Z)->(e)",
            corr);

  // Irreducible downstairs lifts to irreducible upstairs.
  cfg.seed = mix_seed(seed, 202);
  const Representation down = solve(bundle, cfg);
  if (is_representation_irreducible(down)) {
    bool irr_lift = true;
    for (const auto& l : lift_so3_su2(down).lifts)
      if (!is_representation_irreducible(l)) irr_lift = false;
    add_check(rec, "irreducible SO3 point has irreducible lifts", irr_lift);
  } else {
    add_check(rec, "irreducible SO3 point has irreducible lifts", false,
              "sample not irreducible");
  }
  return rec;
}

CatalogRecord u2_parity(int genus, bool odd, std::uint64_t seed) {
  if (genus < 2) throw ValidationError("u2_parity needs genus >= 2");
  CatalogRecord rec;
  rec.name = "u2-parity";
  rec.params =
      "genus=" + std::to_string(genus) + (odd ? " type=odd" : " type=even");
  rec.seed = seed;
  const GroupSpec u2{Family::U2, 1};
  const GroupSpec su2{Family::SU2, 1};
  const int k = 2 * genus;
  const GroupElement c = odd ? minus_identity(u2) : identity(u2);
  const BundleData bundle = make_bundle(u2, genus, c);

  if (!odd) {
    Rng rng(mix_seed(seed, 7));
    bool twist_ok = true, fiber_ok = true, flat_ok = true;
    int tested = 0;
    for (int i = 0; i < 20; ++i) {
      SolverConfig cfg;
      cfg.seed = mix_seed(seed, i);
      Representation rep;
      try {
        rep = solve(bundle, cfg);
      } catch (const NoConvergenceError&) {
        continue;
      }
      ++tested;
      const Representation image = quotient_by_central_torus(rep);
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<GroupElement> twisted;
        for (int j = 0; j < k; ++j) {
          const Complex phase = std::exp(kI * rng.uniform(-kPi, kPi));
          twisted.push_back({u2, CMat(phase * rep.holonomies[j].m)});
        }
        const Representation trep = make_representation(bundle, twisted);
        const Representation timage = quotient_by_central_torus(trep);
        for (int j = 0; j < k; ++j)
          if ((timage.holonomies[j].m - image.holonomies[j].m).norm() > 1e-9)
            twist_ok = false;
        // Recover the fiber coordinates: the twist is central.
        for (int j = 0; j < k; ++j) {
          const CMat ratio =
              trep.holonomies[j].m * rep.holonomies[j].m.adjoint();
          if (!is_central(u2, ratio, 1e-8)) fiber_ok = false;
        }
      }
      // Even types land over the flat SO3 bundle.
      if ((lift_so3_su2(image).central.m - CMat::Identity(2, 2)).norm() >
          1e-9)
        flat_ok = false;
    }
    add_check(rec, "quotient invariant under (S^1)^{2l} twists",
              tested > 0 && twist_ok, fmt("points=%d", tested));
    add_check(rec, "fibers are exactly the central twists", fiber_ok);
    add_check(rec, "images lie over the flat SO3 type", flat_ok);

    // Embedded SU2 tuples quotient the same way they project.
    SolverConfig cfg;
    cfg.seed = mix_seed(seed, 313);
    const Representation su2_rep =
        solve(make_bundle(su2, genus, identity(su2)), cfg);
    std::vector<GroupElement> embedded;
    for (const auto& h : su2_rep.holonomies) embedded.push_back({u2, h.m});
    const Representation via_u2 =
        quotient_by_central_torus(make_representation(bundle, embedded));
    const Representation via_su2 = project_su2_so3(su2_rep);
    bool diagram_ok = true;
    for (int j = 0; j < k; ++j)
      if ((via_u2.holonomies[j].m - via_su2.holonomies[j].m).norm() > 1e-10)
        diagram_ok = false;
    add_check(rec, "embedded SU2 diagram commutes", diagram_ok);
  } else {
    CensusConfig ccfg;
    ccfg.n_samples = 100;
    ccfg.solver.seed = seed;
    ccfg.density_trials = 0;
    ccfg.include_catalog_seeds = true;
    const CensusReport rep = census(bundle, ccfg);
    add_check(rec, "odd type census finds a single stratum",
              rep.rows.size() == 1 && rep.rows.front().label.symbol == "(S1)",
              fmt("labels=%d converged=%d", (int)rep.rows.size(),
                  rep.samples_converged));
    bool smooth_ok = true, lift_ok = true;
    int tested = 0;
    for (int i = 0; i < 20; ++i) {
      SolverConfig cfg;
      cfg.seed = mix_seed(seed ^ 0xabcdULL, i);
      Representation sample;
      try {
        sample = solve(bundle, cfg);
      } catch (const NoConvergenceError&) {
        continue;
      }
      ++tested;
      const PointClassification pc = classify_point(sample);
      if (!(pc.irreducible && pc.nonsingular && pc.top)) smooth_ok = false;
      if ((lift_so3_su2(quotient_by_central_torus(sample)).central.m +
           CMat::Identity(2, 2))
              .norm() > 1e-9)
        lift_ok = false;
    }
    add_check(rec, "odd-type points are irreducible, nonsingular and top",
              tested > 0 && smooth_ok, fmt("points=%d", tested));
    add_check(rec, "images lie over the non-trivial SO3 type", lift_ok);
  }
  return rec;
}

CatalogRecord o2_variety(int genus, const std::vector<int>& phi,
                         std::uint64_t seed) {
  CatalogRecord rec;
  rec.name = "o2-variety";
  std::string phis;
  for (int s : phi) phis += s > 0 ? "+" : "-";
  rec.params = "genus=" + std::to_string(genus) + " phi=" + phis;
  rec.seed = seed;
  const GroupSpec o2{Family::O2, 1};
  const BundleData bundle = make_bundle(o2, genus, identity(o2), phi);
  const int expected_h1 = 2 * genus - 2;

  int tested = 0;
  bool h_ok = true, finite_ok = true, comp_ok = true;
  for (int i = 0; i < 20; ++i) {
    SolverConfig cfg;
    cfg.seed = mix_seed(seed, i);
    Representation rep;
    try {
      rep = solve(bundle, cfg);
    } catch (const NoConvergenceError&) {
      continue;
    }
    ++tested;
    const PointClassification pc = classify_point(rep);
    if (pc.h0 != 0 || pc.h1 != expected_h1) h_ok = false;
    if (pc.label.identity_dim != 0) finite_ok = false;
    for (int j = 0; j < 2 * genus; ++j)
      if (rep.holonomies[j].m.real().determinant() * phi[j] <= 0)
        comp_ok = false;
  }
  add_check(rec, fmt("h0 = 0 and h1 = %d at sampled points", expected_h1),
            tested > 0 && h_ok,
            genus == 1 ? fmt("points=%d; genus 1 is the boundary case h1=0",
                             tested)
                       : fmt("points=%d", tested));
  add_check(rec, "all stabilizers finite", finite_ok);
  add_check(rec, "holonomies respect the component map", comp_ok);
  return rec;
}

CatalogRecord o3_splitting(int genus, const std::vector<int>& phi,
                           std::uint64_t seed) {
  if (genus < 2) throw ValidationError("o3_splitting needs genus >= 2");
  CatalogRecord rec;
  rec.name = "o3-splitting";
  std::string phis;
  for (int s : phi) phis += s > 0 ? "+" : "-";
  rec.params = "genus=" + std::to_string(genus) + " phi=" + phis;
  rec.seed = seed;
  const GroupSpec o3{Family::O3, 1};
  const GroupSpec so3{Family::SO3, 1};
  const BundleData bundle = make_bundle(o3, genus, identity(o3), phi);
  const BundleData so3_bundle = make_bundle(so3, genus, identity(so3));
  const int k = 2 * genus;

  int tested = 0;
  bool split_ok = true, stab_ok = true;
  for (int i = 0; i < 20; ++i) {
    SolverConfig cfg;
    cfg.seed = mix_seed(seed, i);
    Representation rep;
    try {
      rep = solve(bundle, cfg);
    } catch (const NoConvergenceError&) {
      continue;
    }
    ++tested;
    // Split into the SO3 part and the sign character, then reassemble.
    std::vector<GroupElement> rot;
    std::vector<int> signs;
    for (const auto& h : rep.holonomies) {
      const double det = h.m.real().determinant();
      signs.push_back(det > 0 ? 1 : -1);
      rot.push_back({so3, det > 0 ? h.m : CMat(-h.m)});
    }
    if (signs != phi) split_ok = false;
    const Representation so3_rep = make_representation(so3_bundle, rot);
    for (int j = 0; j < k; ++j) {
      const CMat back = Complex(signs[j], 0.0) * so3_rep.holonomies[j].m;
      if ((back - rep.holonomies[j].m).norm() > 1e-12) split_ok = false;
    }
    const PointClassification pc_o3 = classify_point(rep);
    const PointClassification pc_so3 = classify_point(so3_rep);
    const std::string expected =
        "(" + pc_so3.label.symbol.substr(1, pc_so3.label.symbol.size() - 2) +
        "xZ2)";
    if (pc_o3.label.symbol != expected) stab_ok = false;
    if (pc_o3.label.components != 2 * pc_so3.label.components)
      stab_ok = false;
  }
  add_check(rec, "split/reassemble round trip", tested > 0 && split_ok,
            fmt("points=%d", tested));
  add_check(rec, "stabilizers are SO3 stabilizers times Z/2", stab_ok);

  CensusConfig ccfg;
  ccfg.n_samples = 30;
  ccfg.solver.seed = seed;
  ccfg.density_trials = 0;
  const CensusReport co3 = census(bundle, ccfg);
  const CensusReport cso3 = census(so3_bundle, ccfg);
  std::set<std::string> o3_base, so3_syms;
  for (const auto& row : co3.rows) {
    std::string s = row.label.symbol;  // "(XxZ2)" -> "(X)"
    o3_base.insert("(" + s.substr(1, s.size() - 5) + ")");
  }
  for (const auto& row : cso3.rows) so3_syms.insert(row.label.symbol);
  add_check(rec, "census labels match the SO3 census labels",
            o3_base == so3_syms,
            fmt("o3=%d so3=%d", (int)o3_base.size(), (int)so3_syms.size()));
  return rec;
}

CatalogRecord ramanathan_example(std::uint64_t seed) {
  CatalogRecord rec;
  rec.name = "ramanathan";
  rec.params = "n=3 genus=2";
  rec.seed = seed;
  const GroupSpec so3{Family::SO3, 1};
  const BundleData bundle = make_bundle(so3, 2, identity(so3));

  CMat rx = CMat::Zero(3, 3), ry = CMat::Zero(3, 3);
  rx(0, 0) = 1;
  rx(1, 1) = -1;
  rx(2, 2) = -1;
  ry(0, 0) = -1;
  ry(1, 1) = 1;
  ry(2, 2) = -1;
  const Representation rep = make_representation(
      bundle,
      {GroupElement{so3, rx}, GroupElement{so3, ry}, identity(so3),
       identity(so3)});
  const PointClassification pc = classify_point(rep);

  add_check(rec, "representation irreducible", pc.irreducible);
  add_check(rec, "stabilizer label (V) with 4 components",
            pc.label.symbol == "(V)" &&
                static_cast<int>(pc.component_generators.size()) == 4,
            fmt("label=%s components=%d", pc.label.to_string().c_str(),
                (int)pc.component_generators.size()));
  add_check(rec, "h0 = 0 and h1 = 6", pc.h0 == 0 && pc.h1 == 6,
            fmt("h=(%d,%d,%d)", pc.h0, pc.h1, pc.h2));

  const TwistedCohomology tc = cohomology(rep);
  const Stabilizer st = stabilizer(rep);
  const H1Action action = z_action_on_h1(rep, st, tc);
  double max_dist = 0.0;
  for (const auto& op : action.component_ops)
    max_dist = std::max(max_dist,
                        (op - RMat::Identity(tc.h1, tc.h1)).norm());
  add_check(rec, "component group acts non-trivially on H^1",
            max_dist >= 0.5, fmt("max ||op - I|| = %.6g", max_dist));
  add_check(rec, "singular despite irreducibility: top = false",
            !pc.top && !pc.nonsingular,
            fmt("stratum_dim=%d", pc.stratum_dim));
  return rec;
}

}  // namespace ym

#include "ym/strata.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "ym/linalg.hpp"
#include "ym/localmodel.hpp"

namespace ym {

Stabilizer stabilizer(const Representation& rep) {
  Stabilizer st = classify_centralizer(rep.spec(), rep.holonomies);
  for (const auto& z : st.components)
    for (const auto& h : rep.holonomies)
      if ((z.m * h.m - h.m * z.m).norm() > tol::group)
        throw Error("component generator fails to commute with a holonomy");
  return st;
}

bool is_representation_irreducible(const Representation& rep) {
  const RMat alg = centralizer_algebra_coords(rep.holonomies);
  return static_cast<int>(alg.cols()) == rep.spec().centre_dim();
}

H1Action z_action_on_h1(const Representation& rep, const Stabilizer& st,
                        const TwistedCohomology& tc) {
  const GroupSpec& spec = rep.spec();
  const int d = spec.algebra_dim();
  const int k = 2 * rep.genus();
  H1Action action;
  auto compress = [&](const RMat& block) {
    RMat big = RMat::Zero(k * d, k * d);
    for (int i = 0; i < k; ++i) big.block(i * d, i * d, d, d) = block;
    return RMat(tc.harmonic1.transpose() * big * tc.harmonic1);
  };
  for (const auto& z : st.components)
    action.component_ops.push_back(compress(adjoint_operator(z)));
  for (int j = 0; j < st.algebra.cols(); ++j) {
    const AlgebraElement x{spec,
                           algebra_from_coords(spec, st.algebra.col(j))};
    action.infinitesimal_ops.push_back(compress(ad_operator(x)));
  }
  return action;
}

namespace {

// Dimension of the joint fixed subspace of the stabilizer action.
int fixed_subspace_dim(const H1Action& action, int h1) {
  const int rows_per = h1;
  const int n_ops = static_cast<int>(action.component_ops.size() +
                                     action.infinitesimal_ops.size());
  if (n_ops == 0 || h1 == 0) return h1;
  RMat stacked(n_ops * rows_per, h1);
  int r = 0;
  for (const auto& op : action.component_ops)
    stacked.middleRows(rows_per * r++, rows_per) =
        op - RMat::Identity(h1, h1);
  for (const auto& op : action.infinitesimal_ops)
    stacked.middleRows(rows_per * r++, rows_per) = op;
  return static_cast<int>(kernel_basis(stacked, tol::rank).cols());
}

bool action_is_trivial(const H1Action& action, int h1) {
  for (const auto& op : action.component_ops)
    if ((op - RMat::Identity(h1, h1)).norm() > tol::num * std::max(1.0, double(h1)))
      return false;
  for (const auto& op : action.infinitesimal_ops)
    if (op.norm() > tol::num * std::max(1.0, double(h1))) return false;
  return true;
}

// Pointwise top-stratum test: for connected non-abelian targets this is the
// representation-irreducibility criterion; abelian targets are flat tori;
// for disconnected targets the stabilizer must shrink to the centre.
bool pointwise_top(const GroupSpec& spec, const OrbitTypeLabel& label,
                   bool irreducible, bool nonsingular) {
  if (!nonsingular) return false;
  if (spec.is_abelian()) return true;
  if (spec.is_connected()) return irreducible;
  if (spec.family == Family::O2) return label.symbol == "(Z2)";
  if (spec.family == Family::O3) return label.symbol == "(exZ2)";
  return false;
}

}  // namespace

PointClassification classify_point(const Representation& rep) {
  const TwistedCohomology tc = cohomology(rep);
  const Stabilizer st = stabilizer(rep);
  const H1Action action = z_action_on_h1(rep, st, tc);

  PointClassification pc;
  pc.label = st.label;
  pc.stabilizer_algebra = st.algebra;
  pc.component_generators = st.components;
  pc.h0 = tc.h0;
  pc.h1 = tc.h1;
  pc.h2 = tc.h2;
  pc.irreducible =
      static_cast<int>(st.algebra.cols()) == rep.spec().centre_dim();
  pc.nonsingular = action_is_trivial(action, tc.h1);
  pc.stratum_dim = fixed_subspace_dim(action, tc.h1);
  if (pc.nonsingular != (pc.stratum_dim == tc.h1))
    throw Error("inconsistent stabilizer action: trivial test and fixed "
                "subspace disagree");
  pc.top = pointwise_top(rep.spec(), pc.label, pc.irreducible, pc.nonsingular);
  return pc;
}

namespace {

struct Sample {
  bool ok = false;
  std::uint64_t seed = 0;
  bool from_catalog = false;
  Representation rep{BundleData{}, {}};
  PointClassification pc;
};

}  // namespace

CensusReport census(const BundleData& bundle, const CensusConfig& cfg) {
  bundle.validate();
  if (cfg.n_samples < 0) throw ValidationError("n_samples must be >= 0");

  CensusReport report;
  report.group = bundle.spec.name();
  report.genus = bundle.genus;
  report.seed = cfg.solver.seed;

  std::vector<Sample> samples(cfg.n_samples);
  auto run_sample = [&](int i) {
    Sample& s = samples[i];
    s.seed = mix_seed(cfg.solver.seed, static_cast<std::uint64_t>(i));
    SolverConfig sc = cfg.solver;
    sc.seed = s.seed;
    try {
      s.rep = solve(bundle, sc);
      s.pc = classify_point(s.rep);
      s.ok = true;
    } catch (const Error&) {
      s.ok = false;
    }
  };
  const int threads = std::max(1, cfg.threads);
  if (threads == 1 || cfg.n_samples <= 1) {
    for (int i = 0; i < cfg.n_samples; ++i) run_sample(i);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t]() {
        for (int i = t; i < cfg.n_samples; i += threads) run_sample(i);
      });
    for (auto& th : pool) th.join();
  }

  if (cfg.include_catalog_seeds) {
    for (auto& rep : seed_representatives(bundle)) {
      Sample s;
      s.seed = 0;
      s.from_catalog = true;
      try {
        s.rep = rep;
        s.pc = classify_point(rep);
        s.ok = true;
      } catch (const Error&) {
        s.ok = false;
      }
      samples.push_back(std::move(s));
    }
  }

  report.samples_attempted = static_cast<int>(samples.size());
  for (const auto& s : samples) {
    if (!s.ok) {
      ++report.solve_failures;
      continue;
    }
    ++report.samples_converged;
    auto it = std::find_if(report.rows.begin(), report.rows.end(),
                           [&](const CensusLabelRow& r) {
                             return r.label == s.pc.label;
                           });
    if (it == report.rows.end()) {
      CensusLabelRow row;
      row.label = s.pc.label;
      row.count = 1;
      row.stratum_dim = s.pc.stratum_dim;
      row.h0 = s.pc.h0;
      row.h1 = s.pc.h1;
      row.h2 = s.pc.h2;
      row.example_seed = s.seed;
      row.from_catalog = s.from_catalog;
      report.rows.push_back(row);
    } else {
      ++it->count;
      if (it->stratum_dim != s.pc.stratum_dim)
        throw Error("label " + s.pc.label.to_string() +
                    " observed with two stratum dimensions");
    }
  }
  std::sort(report.rows.begin(), report.rows.end(),
            [](const CensusLabelRow& a, const CensusLabelRow& b) {
              return a.label < b.label;
            });

  // Top label: pointwise criterion when witnessed, otherwise the minimal
  // nonsingular label (flagged heuristic).
  const Sample* top_witness = nullptr;
  for (const auto& s : samples)
    if (s.ok && s.pc.top) {
      if (top_witness && !(top_witness->pc.label == s.pc.label))
        throw Error("two distinct labels satisfy the pointwise top test");
      if (!top_witness) top_witness = &s;
    }
  if (top_witness) {
    report.top_label = top_witness->pc.label.to_string();
    report.top_heuristic = false;
  } else if (report.samples_converged > 0) {
    const CensusLabelRow* best = nullptr;
    for (const auto& s : samples) {
      if (!s.ok || !s.pc.nonsingular) continue;
      for (const auto& row : report.rows)
        if (row.label == s.pc.label && (!best || row.label < best->label))
          best = &row;
    }
    if (!best) best = &report.rows.front();
    report.top_label = best->label.to_string();
    report.top_heuristic = true;
  }
  for (auto& row : report.rows)
    row.top = row.label.to_string() == report.top_label;

  // Density trials from one representative of each non-top label.
  if (cfg.density_trials > 0 && report.samples_converged > 0) {
    for (const auto& row : report.rows) {
      if (row.top) continue;
      const Sample* source = nullptr;
      for (const auto& s : samples)
        if (s.ok && s.pc.label == row.label) {
          source = &s;
          break;
        }
      if (!source) continue;
      DensityStats stats;
      stats.trials = cfg.density_trials;
      for (int t = 0; t < cfg.density_trials; ++t) {
        const std::uint64_t seed =
            mix_seed(cfg.solver.seed ^ 0xd1fef00dULL, t);
        try {
          Representation moved = tangent_perturb(
              source->rep, cfg.density_magnitude, seed, cfg.solver);
          const PointClassification pc = classify_point(moved);
          ++stats.converged;
          if (pc.label.to_string() == report.top_label) ++stats.landed_top;
          if (pc.stratum_dim > source->pc.stratum_dim)
            ++stats.landed_strictly_larger;
        } catch (const Error&) {
        }
      }
      report.density[row.label.to_string()] = stats;
    }
  }

  // Non-rigorous Monte Carlo boundedness indicator: mean |Pf(Omega)| over
  // top-stratum samples.
  int used = 0;
  double acc = 0.0;
  for (const auto& s : samples) {
    if (!s.ok || used >= 20) continue;
    if (s.pc.label.to_string() != report.top_label || !s.pc.nonsingular)
      continue;
    const TwistedCohomology tc = cohomology(s.rep);
    if (tc.h1 % 2 != 0) continue;
    const SymplecticForm form = symplectic_form(s.rep, tc);
    const double det = form.omega.determinant();
    acc += std::sqrt(std::abs(det));
    ++used;
  }
  report.volume_indicator = used > 0 ? acc / used : 0.0;
  report.volume_indicator_points = used;

  return report;
}

}  // namespace ym

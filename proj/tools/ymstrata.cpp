// ymstrata: solve, classify and survey representation varieties of surface
// groups in compact matrix groups.
//
// Exit codes: 0 success, 2 solver non-convergence, 64 usage error,
// 65 invalid data.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ym/io.hpp"

namespace {

constexpr int kExitNoConvergence = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

ym::GroupElement parse_central(const ym::GroupSpec& spec,
                               const std::string& text) {
  if (text == "I") return ym::identity(spec);
  if (text == "-I") return ym::minus_identity(spec);
  throw ym::ValidationError("unsupported central target '" + text +
                            "' (use I or -I)");
}

std::optional<std::vector<int>> parse_phi(const std::string& text,
                                          int genus) {
  if (text.empty()) return std::nullopt;
  std::vector<int> signs;
  for (char c : text) {
    if (c == '+')
      signs.push_back(1);
    else if (c == '-')
      signs.push_back(-1);
    else if (c != ',' && c != ' ')
      throw ym::ValidationError("component map must be a string of + and -");
  }
  if (static_cast<int>(signs.size()) != 2 * genus)
    throw ym::ValidationError("component map must list all 2l generators");
  return signs;
}

struct CommonOpts {
  std::string group = "SU2";
  int genus = 2;
  std::string central = "I";
  std::string phi;
  std::uint64_t seed = 0;
  std::string out;
  int max_iters = 500;
  double residual_target = 1e-12;
};

ym::BundleData bundle_from(const CommonOpts& o) {
  const ym::GroupSpec spec = ym::GroupSpec::parse(o.group);
  return ym::make_bundle(spec, o.genus, parse_central(spec, o.central),
                         parse_phi(o.phi, o.genus));
}

void add_bundle_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--group", o.group,
                  "target group: SU2, SO3, U2, O2, O3 or T<k>");
  cmd->add_option("--genus", o.genus, "surface genus (>= 1)");
  cmd->add_option("--central", o.central, "central relator target: I or -I");
  cmd->add_option("--phi", o.phi,
                  "component map for O2/O3 as a sign string, e.g. -+++");
  cmd->add_option("--seed", o.seed, "base random seed");
  cmd->add_option("--out", o.out, "output path (default: stdout)");
  cmd->add_option("--max-iters", o.max_iters, "solver iteration cap");
  cmd->add_option("--residual-target", o.residual_target,
                  "solver residual target");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moduli of central Yang-Mills connections on surfaces: "
               "representation varieties, strata and local models"};
  app.require_subcommand(1);

  CommonOpts solve_o;
  auto* cmd_solve = app.add_subcommand(
      "solve", "find a point of the representation variety");
  add_bundle_flags(cmd_solve, solve_o);

  struct {
    std::string rep;
    std::string out;
  } classify_o;
  auto* cmd_classify =
      app.add_subcommand("classify", "orbit-type classification of a point");
  cmd_classify->add_option("--rep", classify_o.rep, "representation file")
      ->required();
  cmd_classify->add_option("--out", classify_o.out,
                           "output path (default: stdout)");

  CommonOpts census_o;
  int census_samples = 200;
  int census_threads = 1;
  int census_density = 50;
  auto* cmd_census = app.add_subcommand(
      "census", "sample the variety and aggregate orbit types");
  add_bundle_flags(cmd_census, census_o);
  cmd_census->add_option("--samples", census_samples, "number of solves");
  cmd_census->add_option("--threads", census_threads,
                         "worker threads (default 1, reproducible)");
  cmd_census->add_option("--density-trials", census_density,
                         "perturbation trials per non-top label");

  CommonOpts catalog_o;
  std::string catalog_name;
  std::string catalog_parity = "even";
  int catalog_samples = 500;
  auto* cmd_catalog = app.add_subcommand(
      "catalog", "run a named verification record");
  cmd_catalog
      ->add_option("--name", catalog_name,
                   "genus1-torus | su2-strata | so3-covering | u2-parity | "
                   "o2-variety | o3-splitting | ramanathan")
      ->required();
  add_bundle_flags(cmd_catalog, catalog_o);
  cmd_catalog->add_option("--parity", catalog_parity,
                          "u2-parity type: even or odd");
  cmd_catalog->add_option("--samples", catalog_samples,
                          "sample count for sampling records");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (cmd_solve->parsed()) {
      const ym::BundleData bundle = bundle_from(solve_o);
      ym::SolverConfig cfg;
      cfg.seed = solve_o.seed;
      cfg.max_iters = solve_o.max_iters;
      cfg.residual_target = solve_o.residual_target;
      const ym::Representation rep = ym::solve(bundle, cfg);
      const double res = ym::representation_residual(rep);
      std::cerr << "solve: converged, residual " << res << "\n";
      if (solve_o.out.empty())
        ym::write_rep_file(rep, std::cout);
      else
        ym::write_rep_file(rep, solve_o.out);
      return 0;
    }
    if (cmd_classify->parsed()) {
      double residual = 0.0;
      const ym::Representation rep =
          ym::read_rep_file(classify_o.rep, &residual);
      std::cerr << "classify: loaded point with residual " << residual
                << "\n";
      const ym::PointClassification pc = ym::classify_point(rep);
      ym::write_report(ym::classification_report(rep, pc, residual),
                       classify_o.out);
      return 0;
    }
    if (cmd_census->parsed()) {
      const ym::BundleData bundle = bundle_from(census_o);
      ym::CensusConfig cfg;
      cfg.n_samples = census_samples;
      cfg.solver.seed = census_o.seed;
      cfg.solver.max_iters = census_o.max_iters;
      cfg.solver.residual_target = census_o.residual_target;
      cfg.threads = census_threads;
      cfg.density_trials = census_density;
      const ym::CensusReport report = ym::census(bundle, cfg);
      std::cerr << "census: " << report.samples_converged << "/"
                << report.samples_attempted << " converged, "
                << report.rows.size() << " labels\n";
      ym::write_report(ym::census_report(report), census_o.out);
      return 0;
    }
    if (cmd_catalog->parsed()) {
      ym::CatalogRecord rec;
      const std::uint64_t seed = catalog_o.seed;
      const int genus = catalog_o.genus;
      std::vector<int> phi;
      if (!catalog_o.phi.empty()) {
        auto parsed = parse_phi(catalog_o.phi, genus);
        phi = *parsed;
      } else {
        phi.assign(2 * genus, 1);
        phi[0] = -1;
      }
      if (catalog_name == "genus1-torus") {
        const ym::GroupSpec spec = ym::GroupSpec::parse(catalog_o.group);
        rec = ym::genus1_torus_model(spec.family, catalog_samples, seed);
      } else if (catalog_name == "su2-strata") {
        rec = ym::su2_strata(genus, seed);
      } else if (catalog_name == "so3-covering") {
        rec = ym::so3_covering(genus, seed);
      } else if (catalog_name == "u2-parity") {
        if (catalog_parity != "even" && catalog_parity != "odd")
          throw CLI::ValidationError("--parity", "must be even or odd");
        rec = ym::u2_parity(genus, catalog_parity == "odd", seed);
      } else if (catalog_name == "o2-variety") {
        rec = ym::o2_variety(genus, phi, seed);
      } else if (catalog_name == "o3-splitting") {
        rec = ym::o3_splitting(genus, phi, seed);
      } else if (catalog_name == "ramanathan") {
        rec = ym::ramanathan_example(seed);
      } else {
        std::cerr << "unknown catalog record '" << catalog_name << "'\n";
        return kExitUsage;
      }
      std::cerr << "catalog " << rec.name << ": "
                << (rec.pass() ? "pass" : "FAIL") << "\n";
      ym::write_report(ym::catalog_report(rec), catalog_o.out);
      return rec.pass() ? 0 : 1;
    }
  } catch (const ym::NoConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const ym::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const ym::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

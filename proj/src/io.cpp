#include "ym/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace ym {

namespace {

constexpr const char* kToolVersion = "0.1.0";

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_matrix(const CMat& m, std::ostream& os) {
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << fmt17(m(i, j).real()) << ' ' << fmt17(m(i, j).imag());
    }
    os << '\n';
  }
}

CMat read_matrix(std::istream& is, int n) {
  CMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double re, im;
      if (!(is >> re >> im))
        throw ValidationError("rep file: truncated matrix block");
      m(i, j) = Complex(re, im);
    }
  return m;
}

}  // namespace

void write_rep_file(const Representation& rep, std::ostream& os) {
  const GroupSpec& spec = rep.spec();
  const int n = spec.matrix_size();
  os << "ymrep 1\n";
  os << "group " << spec.name() << '\n';
  os << "genus " << rep.genus() << '\n';
  const CMat& c = rep.bundle.central_target.m;
  if ((c - CMat::Identity(n, n)).norm() == 0.0) {
    os << "central I\n";
  } else if ((c + CMat::Identity(n, n)).norm() == 0.0) {
    os << "central -I\n";
  } else {
    os << "central matrix\n";
    write_matrix(c, os);
  }
  if (rep.bundle.component_signs) {
    os << "phi";
    for (int s : *rep.bundle.component_signs) os << ' ' << s;
    os << '\n';
  }
  for (int i = 0; i < 2 * rep.genus(); ++i) {
    os << "holonomy " << (i + 1) << '\n';
    write_matrix(rep.holonomies[i].m, os);
  }
}

void write_rep_file(const Representation& rep, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot open " + path + " for writing");
  write_rep_file(rep, os);
}

Representation read_rep_file(std::istream& is, double* residual) {
  std::string tag;
  int version = 0;
  if (!(is >> tag >> version) || tag != "ymrep" || version != 1)
    throw ValidationError("rep file: missing or unsupported header");

  std::string key, group_name;
  int genus = 0;
  if (!(is >> key >> group_name) || key != "group")
    throw ValidationError("rep file: expected group line");
  const GroupSpec spec = GroupSpec::parse(group_name);
  const int n = spec.matrix_size();
  if (!(is >> key >> genus) || key != "genus" || genus < 1)
    throw ValidationError("rep file: expected genus line");

  std::string cform;
  if (!(is >> key >> cform) || key != "central")
    throw ValidationError("rep file: expected central line");
  GroupElement c = identity(spec);
  if (cform == "I") {
  } else if (cform == "-I") {
    c = minus_identity(spec);
  } else if (cform == "matrix") {
    c = GroupElement{spec, read_matrix(is, n)};
  } else {
    throw ValidationError("rep file: bad central form '" + cform + "'");
  }

  std::optional<std::vector<int>> phi;
  if (!(is >> key)) throw ValidationError("rep file: truncated");
  if (key == "phi") {
    std::vector<int> signs(2 * genus);
    for (int i = 0; i < 2 * genus; ++i)
      if (!(is >> signs[i]))
        throw ValidationError("rep file: truncated phi line");
    phi = signs;
    if (!(is >> key)) throw ValidationError("rep file: truncated");
  }

  std::vector<GroupElement> hs;
  for (int i = 0; i < 2 * genus; ++i) {
    int index = 0;
    if (i > 0 && !(is >> key)) throw ValidationError("rep file: truncated");
    if (key != "holonomy" || !(is >> index) || index != i + 1)
      throw ValidationError("rep file: expected holonomy " +
                            std::to_string(i + 1));
    hs.push_back({spec, read_matrix(is, n)});
  }

  const BundleData bundle = make_bundle(spec, genus, c, phi);
  if (residual) *residual = representation_residual(bundle, hs);
  return make_representation(bundle, std::move(hs));
}

Representation read_rep_file(const std::string& path, double* residual) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot open " + path);
  return read_rep_file(is, residual);
}

Json report_header(const std::string& command) {
  Json doc;
  doc["schema"] = "ymstrata-report/1";
  doc["tool"] = {{"name", "ymstrata"}, {"version", kToolVersion}};
  doc["command"] = command;
  return doc;
}

namespace {

Json label_json(const OrbitTypeLabel& label) {
  Json j;
  j["symbol"] = label.to_string();
  j["identity_dim"] = label.identity_dim;
  j["components"] = label.components;
  return j;
}

}  // namespace

Json classification_report(const Representation& rep,
                           const PointClassification& pc, double residual) {
  Json doc = report_header("classify");
  doc["inputs"] = {{"group", rep.spec().name()}, {"genus", rep.genus()}};
  doc["residual"] = residual;
  Json r;
  r["label"] = label_json(pc.label);
  r["h"] = {pc.h0, pc.h1, pc.h2};
  r["stratum_dim"] = pc.stratum_dim;
  r["irreducible"] = pc.irreducible;
  r["nonsingular"] = pc.nonsingular;
  r["top"] = pc.top;
  r["stabilizer_algebra_dim"] =
      static_cast<int>(pc.stabilizer_algebra.cols());
  r["stabilizer_components"] =
      static_cast<int>(pc.component_generators.size());
  doc["result"] = r;
  return doc;
}

Json census_report(const CensusReport& report) {
  Json doc = report_header("census");
  doc["inputs"] = {{"group", report.group},
                   {"genus", report.genus},
                   {"seed", report.seed}};
  Json r;
  r["samples_attempted"] = report.samples_attempted;
  r["samples_converged"] = report.samples_converged;
  r["solve_failures"] = report.solve_failures;
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    Json j;
    j["label"] = label_json(row.label);
    j["count"] = row.count;
    j["stratum_dim"] = row.stratum_dim;
    j["h"] = {row.h0, row.h1, row.h2};
    j["example_seed"] = row.example_seed;
    j["from_catalog"] = row.from_catalog;
    j["top"] = row.top;
    rows.push_back(j);
  }
  r["labels"] = rows;
  r["top_label"] = report.top_label;
  r["top_heuristic"] = report.top_heuristic;
  Json density = Json::object();
  for (const auto& [label, st] : report.density) {
    density[label] = {{"trials", st.trials},
                      {"converged", st.converged},
                      {"landed_top", st.landed_top},
                      {"landed_strictly_larger", st.landed_strictly_larger}};
  }
  r["density"] = density;
  r["volume_indicator"] = {
      {"mean_abs_pfaffian", report.volume_indicator},
      {"points", report.volume_indicator_points},
      {"note", "monte-carlo boundedness indicator, non-rigorous"}};
  doc["result"] = r;
  return doc;
}

Json catalog_report(const CatalogRecord& record) {
  Json doc = report_header("catalog");
  doc["inputs"] = {{"name", record.name},
                   {"params", record.params},
                   {"seed", record.seed}};
  Json checks = Json::array();
  for (const auto& c : record.checks) {
    Json j;
    j["name"] = c.name;
    j["pass"] = c.pass;
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(j);
  }
  doc["result"] = {{"checks", checks},
                   {"verdict", record.pass() ? "pass" : "fail"}};
  return doc;
}

void write_report(const Json& doc, const std::string& path_or_empty) {
  if (path_or_empty.empty()) {
    std::cout << doc.dump(2) << std::endl;
    return;
  }
  std::ofstream os(path_or_empty);
  if (!os)
    throw ValidationError("cannot open " + path_or_empty + " for writing");
  os << doc.dump(2) << '\n';
}

}  // namespace ym

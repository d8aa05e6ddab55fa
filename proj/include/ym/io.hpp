#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "ym/catalog.hpp"
#include "ym/strata.hpp"

namespace ym {

using Json = nlohmann::ordered_json;

// Plain-text representation file. Values are printed with 17 significant
// digits, so writing and re-reading is bit-exact.
void write_rep_file(const Representation& rep, std::ostream& os);
void write_rep_file(const Representation& rep, const std::string& path);

// Parses and validates; throws ValidationError on malformed input or when
// the Representation invariants fail. The relator residual of the loaded
// point is stored in *residual when given.
Representation read_rep_file(std::istream& is, double* residual = nullptr);
Representation read_rep_file(const std::string& path,
                             double* residual = nullptr);

// Schema-versioned report documents with stable key order.
Json report_header(const std::string& command);
Json classification_report(const Representation& rep,
                           const PointClassification& pc, double residual);
Json census_report(const CensusReport& report);
Json catalog_report(const CatalogRecord& record);

void write_report(const Json& doc, const std::string& path_or_empty);

}  // namespace ym

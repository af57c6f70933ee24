#pragma once

#include <string>

#include <json.hpp>

#include "certify.hpp"

namespace normesh {

using Json = nlohmann::ordered_json;

Json section_to_json(const Section& spec);
Section section_from_json(const Json& j);

/// Mesh schema: {"spec", "n", "m", "c", "family", "grid_shape", "points"}.
Json mesh_to_json(const Mesh& mesh);
Mesh mesh_from_json(const Json& j);

Json report_to_json(const CertificationReport& rep);
Json dimension_to_json(const Section& spec, int n, const DimensionInfo& info);
Json fekete_to_json(const FeketeResult& fek);
Json lsfit_to_json(const Mesh& mesh, const std::string& function, const LSFit& fit);
Json univariate_to_json(const UnivariateReport& rep);
Json table_json();

/// One point per line, ambient_dim comma-separated columns, 17 significant
/// digits.
void write_points_csv(const std::string& path, const std::vector<double>& points, int dim);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace normesh

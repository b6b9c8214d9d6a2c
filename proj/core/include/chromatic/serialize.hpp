#pragma once

#include <string>

#include "json.hpp"

#include "chromatic/coloring.hpp"

namespace chromatic::io {

// coloring.json (schema 1): the tiling (basis, translate classes, cell facet
// halfspaces), the norm body, the shrink factor nu, the global scale, the
// mode, and the color translates. Cells are stored unshrunk; pieces, torus
// tables and derived parameters are rebuilt on load, so a reloaded coloring
// classifies points exactly like the original.
nlohmann::json coloring_to_json(const color::Coloring& c);
color::Coloring coloring_from_json(const nlohmann::json& j);

// report.json (schema 1): structural + sampled verification, the cover
// certificate when one exists, the bound values, and the overall pass flag.
nlohmann::json report_to_json(const color::VerificationReport& v, const color::BoundReport& b);

// Pipeline configuration from a JSON object; missing keys keep defaults.
color::PipelineConfig config_from_json(const nlohmann::json& j);

// Canonical dump: sorted keys (nlohmann objects are ordered maps), two-space
// indent, shortest round-trip doubles, trailing newline. Byte-stable for
// byte-identical inputs.
std::string dump_stable(const nlohmann::json& j);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace chromatic::io

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "bbatlas/cartan.hpp"
#include "bbatlas/catalog.hpp"
#include "bbatlas/coxeter.hpp"

namespace bbatlas {

/// Parses { "name", "nodes", "cartan", "K" } and validates the matrix.
/// "K" may be omitted (empty). Throws InputError on any malformed field.
GroupDefinition group_from_json(const nlohmann::json& j);
nlohmann::json group_to_json(const GroupDefinition& g);

/// A path to a group file, or else a catalog name.
GroupDefinition load_group(std::string_view path_or_name);

/// The glued matrix in group-file form, with "K" the glued K-nodes and
/// "flat_map" / "sharp_map" sending each base node name to a glued name.
nlohmann::json glued_to_json(const GeneralizedCartanMatrix& base, NodeSet k, const GluedDiagram& d,
                             const std::string& name);

/// {"word": [node names], "length": n}
nlohmann::json element_to_json(const CoxeterGroup& g, const GroupElement& w);

/// Two-space indented dump with a trailing newline.
std::string dump(const nlohmann::json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace bbatlas

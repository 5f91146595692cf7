#include "bbatlas/io.hpp"

#include <fstream>

namespace bbatlas {

namespace {

template <class T>
T field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("group file: missing \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("group file: malformed \"") + key + "\"");
  }
}

}  // namespace

GroupDefinition group_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("group file: expected a JSON object");
  GroupDefinition g;
  g.name = j.contains("name") ? field<std::string>(j, "name") : std::string("unnamed");
  auto nodes = field<std::vector<std::string>>(j, "nodes");
  auto entries = field<std::vector<std::vector<Int>>>(j, "cartan");
  g.cartan = GeneralizedCartanMatrix::validate(std::move(nodes), std::move(entries));
  if (j.contains("K")) g.k = field<std::vector<std::string>>(j, "K");
  (void)node_set(g.cartan, g.k);
  return g;
}

nlohmann::json group_to_json(const GroupDefinition& g) {
  return {{"name", g.name}, {"nodes", g.cartan.nodes()}, {"cartan", g.cartan.entries()}, {"K", g.k}};
}

GroupDefinition load_group(std::string_view path_or_name) {
  const std::filesystem::path path{std::string(path_or_name)};
  std::error_code ec;
  if (std::filesystem::is_regular_file(path, ec)) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path.string());
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(path.string() + ": " + e.what());
    }
    return group_from_json(j);
  }
  if (auto a = catalog_cartan(path_or_name)) return GroupDefinition{std::string(path_or_name), *a, {}};
  throw InputError("no group file or catalog entry named \"" + std::string(path_or_name) + "\"");
}

nlohmann::json glued_to_json(const GeneralizedCartanMatrix& base, NodeSet k, const GluedDiagram& d,
                             const std::string& name) {
  const auto& m = d.matrix;
  nlohmann::json flat = nlohmann::json::object();
  nlohmann::json sharp = nlohmann::json::object();
  std::vector<std::string> glued_k;
  for (int i = 0; i < base.rank(); ++i) {
    flat[base.node(i)] = m.node(d.flat_map[i]);
    sharp[base.node(i)] = m.node(d.sharp_map[i]);
    if (k.contains(i)) glued_k.push_back(m.node(d.flat_map[i]));
  }
  return {{"name", name},
          {"mode", std::string(to_string(d.mode))},
          {"nodes", m.nodes()},
          {"cartan", m.entries()},
          {"K", glued_k},
          {"flat_map", flat},
          {"sharp_map", sharp}};
}

nlohmann::json element_to_json(const CoxeterGroup& g, const GroupElement& w) {
  return {{"word", g.word_names(w)}, {"length", w.length()}};
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

}  // namespace bbatlas

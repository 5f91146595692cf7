#include "bbatlas/catalog.hpp"

#include <sstream>

namespace bbatlas {

namespace {

std::vector<std::string> numbered(int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(std::to_string(i));
  return out;
}

}  // namespace

GeneralizedCartanMatrix type_a(int n) {
  std::vector<std::vector<Int>> e(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) {
    e[i][i] = 2;
    if (i + 1 < n) e[i][i + 1] = e[i + 1][i] = -1;
  }
  return GeneralizedCartanMatrix::validate(numbered(n), e);
}

std::optional<GeneralizedCartanMatrix> catalog_cartan(std::string_view name) {
  if (name == "A1") return type_a(1);
  if (name == "A2") return type_a(2);
  if (name == "A3") return type_a(3);
  if (name == "B2") return GeneralizedCartanMatrix::validate(numbered(2), {{2, -2}, {-1, 2}});
  if (name == "A1xA1") return GeneralizedCartanMatrix::validate(numbered(2), {{2, 0}, {0, 2}});
  if (name == "affineA1") return GeneralizedCartanMatrix::validate(numbered(2), {{2, -2}, {-2, 2}});
  if (name == "inf12_23")
    return GeneralizedCartanMatrix::validate(numbered(3), {{2, -2, 0}, {-2, 2, -1}, {0, -1, 2}});
  return std::nullopt;
}

std::vector<std::string> catalog_names() { return {"A1", "A2", "A3", "B2", "A1xA1", "affineA1", "inf12_23"}; }

NodeSet node_set(const GeneralizedCartanMatrix& a, const std::vector<std::string>& names) {
  NodeSet s;
  for (const auto& n : names) s.insert(a.index_of(n));
  return s;
}

std::vector<std::string> split_names(std::string_view csv) {
  std::string text(csv);
  for (char& c : text)
    if (c == ',') c = ' ';
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

}  // namespace bbatlas

#include "bbatlas/gluing_table.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bbatlas/catalog.hpp"

namespace bbatlas {

DiagramShape shape_of(const GluedDiagram& d) {
  DiagramShape s;
  const NodeSet flat = d.flat_nodes();
  const NodeSet sharp = d.sharp_nodes();
  const int n = d.matrix.rank();
  for (int i = 0; i < n; ++i) {
    if (flat.contains(i) && sharp.contains(i)) s.nodes.push_back(NodeKind::Glued);
    else if (flat.contains(i)) s.nodes.push_back(NodeKind::Flat);
    else s.nodes.push_back(NodeKind::Sharp);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (d.matrix(i, j) != 0) s.edges.push_back({i, j, d.matrix.bond_order(i, j)});
  return s;
}

namespace {

// Bond order per unordered pair, 2 (no edge) by default; -1 encodes infinity.
std::vector<std::vector<int>> bond_table(const DiagramShape& s) {
  const std::size_t n = s.nodes.size();
  std::vector<std::vector<int>> t(n, std::vector<int>(n, 2));
  for (const auto& e : s.edges) t.at(e.a).at(e.b) = t.at(e.b).at(e.a) = e.bond.value_or(-1);
  return t;
}

}  // namespace

bool isomorphic(const DiagramShape& x, const DiagramShape& y) {
  const std::size_t n = x.nodes.size();
  if (n != y.nodes.size() || x.edges.size() != y.edges.size()) return false;
  const auto tx = bond_table(x);
  const auto ty = bond_table(y);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      ok = x.nodes[i] == y.nodes[perm[i]];
      for (std::size_t j = 0; j < n && ok; ++j) ok = tx[i][j] == ty[perm[i]][perm[j]];
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::string render(const DiagramShape& s) {
  auto glyph = [](NodeKind k) {
    switch (k) {
      case NodeKind::Flat: return "v";
      case NodeKind::Sharp: return "^";
      case NodeKind::Glued: return "*";
    }
    return "?";
  };
  std::ostringstream out;
  out << "nodes:";
  for (std::size_t i = 0; i < s.nodes.size(); ++i) out << " " << i << glyph(s.nodes[i]);
  out << "\nedges:";
  if (s.edges.empty()) out << " none";
  for (const auto& e : s.edges) {
    out << " " << e.a << (e.bond ? (*e.bond == 3 ? "-" : "=" + std::to_string(*e.bond) + "=") : "-inf-") << e.b;
  }
  out << "\n";
  return out.str();
}

namespace {

DiagramShape shape(std::vector<NodeKind> nodes, std::vector<DiagramShape::Edge> edges) {
  return DiagramShape{std::move(nodes), std::move(edges)};
}

constexpr std::optional<int> kSimple = 3;
constexpr std::optional<int> kInfinite = std::nullopt;

}  // namespace

std::vector<GluingTableRow> gluing_table() {
  using enum NodeKind;
  const auto a2 = type_a(2);
  const auto a3 = type_a(3);
  const auto hyp = *catalog_cartan("inf12_23");
  std::vector<GluingTableRow> rows;

  const auto two_edges = shape({Sharp, Sharp, Flat, Flat}, {{0, 1, kSimple}, {2, 3, kSimple}});
  rows.push_back({"A2, K = {}", a2, NodeSet{}, two_edges, two_edges});

  const auto path3 = shape({Sharp, Glued, Flat}, {{0, 1, kSimple}, {1, 2, kSimple}});
  rows.push_back({"A2, K = {2}", a2, NodeSet{1}, path3, path3});

  const auto star = shape({Sharp, Sharp, Glued, Flat, Flat},
                          {{0, 2, kSimple}, {1, 2, kSimple}, {3, 2, kSimple}, {4, 2, kSimple}});
  rows.push_back({"A3, K = {2}", a3, NodeSet{1}, star, star});

  const auto square = shape({Sharp, Glued, Glued, Flat},
                            {{0, 1, kSimple}, {1, 3, kSimple}, {3, 2, kSimple}, {2, 0, kSimple}});
  rows.push_back({"A3, K = {1,3}", a3, NodeSet{0, 2}, square, square});

  rows.push_back({"A3, K = {2,3}", a3, NodeSet{1, 2},
                  shape({Sharp, Glued, Glued, Flat}, {{0, 1, kSimple}, {1, 2, kSimple}, {1, 3, kSimple}}),
                  shape({Sharp, Glued, Glued, Flat}, {{0, 1, kSimple}, {1, 2, kSimple}, {2, 3, kSimple}})});

  rows.push_back({"1-inf-2-3, K = {2,3}", hyp, NodeSet{1, 2},
                  shape({Sharp, Glued, Glued, Flat}, {{0, 1, kInfinite}, {1, 2, kSimple}, {1, 3, kInfinite}}),
                  shape({Sharp, Glued, Glued, Flat}, {{0, 1, kInfinite}, {1, 2, kSimple}, {2, 3, kInfinite}})});

  rows.push_back({"1-inf-2-3, K = {1,2}", hyp, NodeSet{0, 1},
                  shape({Sharp, Glued, Glued, Flat}, {{1, 2, kInfinite}, {2, 0, kSimple}, {2, 3, kSimple}}),
                  std::nullopt});
  return rows;
}

}  // namespace bbatlas

#include "bbatlas/cartan.hpp"

#include <numeric>

#include <boost/rational.hpp>

namespace bbatlas {

namespace {

std::string entry_name(const std::vector<std::string>& nodes, std::size_t i, std::size_t j) {
  return "a[" + nodes[i] + "][" + nodes[j] + "]";
}

}  // namespace

GeneralizedCartanMatrix GeneralizedCartanMatrix::validate(std::vector<std::string> nodes,
                                                          std::vector<std::vector<Int>> entries) {
  const std::size_t n = nodes.size();
  if (n > static_cast<std::size_t>(kMaxRank)) throw InputError("rank exceeds " + std::to_string(kMaxRank));
  if (entries.size() != n) throw InputError("Cartan matrix has " + std::to_string(entries.size()) + " rows, expected " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (nodes[i].empty()) throw InputError("empty node identifier");
    for (std::size_t j = 0; j < i; ++j)
      if (nodes[i] == nodes[j]) throw InputError("duplicate node identifier: " + nodes[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (entries[i].size() != n) throw InputError("Cartan matrix row " + std::to_string(i) + " is not of length " + std::to_string(n));
    if (entries[i][i] != 2) throw InputError("diagonal entry " + entry_name(nodes, i, i) + " must be 2");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (entries[i][j] > 0) throw InputError("positive off-diagonal entry " + entry_name(nodes, i, j));
      if ((entries[i][j] == 0) != (entries[j][i] == 0))
        throw InputError("zero pattern not symmetric at " + entry_name(nodes, i, j));
    }
  }
  GeneralizedCartanMatrix m;
  m.symmetrizable_ = symmetrizer(entries).has_value();
  m.nodes_ = std::move(nodes);
  m.entries_ = std::move(entries);
  return m;
}

std::optional<int> GeneralizedCartanMatrix::find(std::string_view name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

int GeneralizedCartanMatrix::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw InputError("unknown node: " + std::string(name));
}

std::optional<int> GeneralizedCartanMatrix::bond_order(int i, int j) const {
  if (i == j) return 1;
  switch (entries_[i][j] * entries_[j][i]) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: return std::nullopt;
  }
}

GeneralizedCartanMatrix GeneralizedCartanMatrix::restrict_to(NodeSet keep) const {
  std::vector<int> idx;
  for (int i = 0; i < rank(); ++i)
    if (keep.contains(i)) idx.push_back(i);
  std::vector<std::string> names;
  std::vector<std::vector<Int>> e;
  for (int i : idx) {
    names.push_back(nodes_[i]);
    std::vector<Int> row;
    for (int j : idx) row.push_back(entries_[i][j]);
    e.push_back(std::move(row));
  }
  return validate(std::move(names), std::move(e));
}

std::optional<std::vector<Int>> symmetrizer(const std::vector<std::vector<Int>>& a) {
  using Q = boost::rational<Int>;
  const std::size_t n = a.size();
  std::vector<std::optional<Q>> d(n);
  // Chase d_j = d_i a_ij / a_ji outward from each component root.
  for (std::size_t root = 0; root < n; ++root) {
    if (d[root]) continue;
    d[root] = Q(1);
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
      std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || a[i][j] == 0) continue;
        Q dj = *d[i] * Q(a[i][j], a[j][i]);
        if (!d[j]) {
          d[j] = dj;
          stack.push_back(j);
        } else if (*d[j] != dj) {
          return std::nullopt;
        }
      }
    }
  }
  Int lcm = 1;
  for (auto& q : d) lcm = std::lcm(lcm, q->denominator());
  std::vector<Int> out;
  for (auto& q : d) out.push_back(checked_mul(q->numerator(), lcm / q->denominator()));
  return out;
}

std::string_view to_string(GluingMode mode) { return mode == GluingMode::Tilde ? "tilde" : "breve"; }

GluingMode parse_gluing_mode(std::string_view text) {
  if (text == "tilde") return GluingMode::Tilde;
  if (text == "breve") return GluingMode::Breve;
  throw InputError("gluing mode must be tilde or breve, got: " + std::string(text));
}

NodeSet GluedDiagram::flat_nodes() const {
  NodeSet s;
  for (int i : flat_map) s.insert(i);
  return s;
}

NodeSet GluedDiagram::sharp_nodes() const {
  NodeSet s;
  for (int i : sharp_map) s.insert(i);
  return s;
}

namespace {

// sharp_partner[k] = the base node whose sharp copy is identified with k^flat.
GluedDiagram glue(const GeneralizedCartanMatrix& a, NodeSet k, const std::vector<int>& sharp_partner, GluingMode mode) {
  const int n = a.rank();
  if (!k.subset_of(NodeSet::all(n))) throw InputError("K is not a subset of the nodes");
  GluedDiagram g;
  g.mode = mode;
  g.flat_map.assign(n, -1);
  g.sharp_map.assign(n, -1);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    g.flat_map[i] = static_cast<int>(names.size());
    names.push_back(a.node(i) + "#flat");
  }
  for (int i = 0; i < n; ++i) {
    if (k.contains(i)) continue;
    g.sharp_map[i] = static_cast<int>(names.size());
    names.push_back(a.node(i) + "#sharp");
  }
  for (int kk : k.indices()) g.sharp_map[sharp_partner[kk]] = g.flat_map[kk];

  const int m = static_cast<int>(names.size());
  if (m > kMaxRank) throw InputError("glued diagram exceeds rank " + std::to_string(kMaxRank));
  g.natural_flat.assign(m, std::nullopt);
  g.natural_sharp.assign(m, std::nullopt);
  for (int i = 0; i < n; ++i) {
    g.natural_flat[g.flat_map[i]] = i;
    g.natural_sharp[g.sharp_map[i]] = i;
  }

  std::vector<std::vector<Int>> e(m, std::vector<Int>(m, 0));
  for (int p = 0; p < m; ++p) {
    for (int q = 0; q < m; ++q) {
      std::optional<Int> via_flat, via_sharp;
      if (g.natural_flat[p] && g.natural_flat[q]) via_flat = a(*g.natural_flat[p], *g.natural_flat[q]);
      if (g.natural_sharp[p] && g.natural_sharp[q]) via_sharp = a(*g.natural_sharp[p], *g.natural_sharp[q]);
      if (via_flat && via_sharp && *via_flat != *via_sharp)
        throw InputError("gluing is inconsistent: entries for " + names[p] + ", " + names[q] + " disagree between copies");
      if (via_flat) e[p][q] = *via_flat;
      else if (via_sharp) e[p][q] = *via_sharp;
    }
  }
  g.matrix = GeneralizedCartanMatrix::validate(std::move(names), std::move(e));
  return g;
}

}  // namespace

GluedDiagram glue_tilde(const GeneralizedCartanMatrix& a, NodeSet k) {
  std::vector<int> id(a.rank());
  std::iota(id.begin(), id.end(), 0);
  return glue(a, k, id, GluingMode::Tilde);
}

GluedDiagram glue_breve(const GeneralizedCartanMatrix& a, NodeSet k, const std::vector<int>& partner) {
  const int n = a.rank();
  if (!k.subset_of(NodeSet::all(n))) throw InputError("K is not a subset of the nodes");
  if (static_cast<int>(partner.size()) != n) throw InputError("partner map must be indexed by every node");
  for (int j : k.indices()) {
    int p = partner[j];
    if (!k.contains(p)) throw InputError("partner of " + a.node(j) + " is not in K");
    if (partner[p] != j) throw InputError("partner map is not an involution on K");
  }
  for (int j1 : k.indices())
    for (int j2 : k.indices())
      if (a(j1, j2) != a(partner[j1], partner[j2]))
        throw InputError("partner map does not preserve the Cartan matrix on K");
  return glue(a, k, partner, GluingMode::Breve);
}

}  // namespace bbatlas

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bbatlas/cartan.hpp"

namespace bbatlas {

/// Vertex kinds of a glued diagram: flat-only, sharp-only, or glued (both).
enum class NodeKind { Flat, Sharp, Glued };

/// A Dynkin diagram up to isomorphism: vertex kinds and edges carrying the
/// Coxeter bond order (nullopt = infinite bond).
struct DiagramShape {
  struct Edge {
    int a = 0;
    int b = 0;
    std::optional<int> bond;
  };
  std::vector<NodeKind> nodes;
  std::vector<Edge> edges;
};

DiagramShape shape_of(const GluedDiagram& d);

/// Isomorphism preserving vertex kinds and bond orders (brute force; small diagrams only).
bool isomorphic(const DiagramShape& x, const DiagramShape& y);

std::string render(const DiagramShape& s);

struct GluingTableRow {
  std::string label;
  GeneralizedCartanMatrix cartan;
  NodeSet k;
  DiagramShape tilde;
  std::optional<DiagramShape> breve;  // nullopt: -w_K gluing undefined (W_K infinite)
};

/// The seven reference rows: A2 with K = {}, {2}; A3 with K = {2}, {1,3},
/// {2,3}; the diagram 1 -inf- 2 - 3 with K = {2,3} and K = {1,2}.
std::vector<GluingTableRow> gluing_table();

}  // namespace bbatlas

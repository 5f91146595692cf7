#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bbatlas/cartan.hpp"

namespace bbatlas {

/// A named Cartan matrix together with a default K (by node name).
struct GroupDefinition {
  std::string name;
  GeneralizedCartanMatrix cartan;
  std::vector<std::string> k;
};

/// Built-in types: A1, A2, A3, B2, A1xA1, affineA1, and "inf12_23", the
/// rank-3 diagram with bonds 1-inf-2 and 2-3.
/// Nodes are named "1", "2", ...
std::optional<GeneralizedCartanMatrix> catalog_cartan(std::string_view name);
std::vector<std::string> catalog_names();

/// Cartan matrix of the path 1 - 2 - ... - n.
GeneralizedCartanMatrix type_a(int n);

/// Node names to a NodeSet; throws InputError on unknown names.
NodeSet node_set(const GeneralizedCartanMatrix& a, const std::vector<std::string>& names);
/// Splits "1,3" or "1 3" into names; "" gives no names.
std::vector<std::string> split_names(std::string_view csv);

}  // namespace bbatlas

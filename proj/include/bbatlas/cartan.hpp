#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bbatlas/common.hpp"

namespace bbatlas {

/// Validated generalized Cartan matrix over named nodes.
///
/// Invariants (enforced by validate()): a[i][i] = 2, a[i][j] <= 0 off the
/// diagonal, and a[i][j] = 0 exactly when a[j][i] = 0. Symmetrizability is
/// recorded as a flag; nothing downstream needs it.
class GeneralizedCartanMatrix {
public:
  /// The empty (rank 0) matrix.
  GeneralizedCartanMatrix() = default;
  static GeneralizedCartanMatrix validate(std::vector<std::string> nodes, std::vector<std::vector<Int>> entries);

  [[nodiscard]] int rank() const { return static_cast<int>(nodes_.size()); }
  [[nodiscard]] Int operator()(int i, int j) const { return entries_[i][j]; }
  [[nodiscard]] const std::vector<std::string>& nodes() const { return nodes_; }
  [[nodiscard]] const std::string& node(int i) const { return nodes_.at(i); }
  [[nodiscard]] const std::vector<std::vector<Int>>& entries() const { return entries_; }
  [[nodiscard]] bool symmetrizable() const { return symmetrizable_; }

  /// Index of a node name; throws InputError when absent.
  [[nodiscard]] int index_of(std::string_view name) const;
  [[nodiscard]] std::optional<int> find(std::string_view name) const;

  /// Coxeter bond order from a_ij * a_ji (0 -> 2, 1 -> 3, 2 -> 4, 3 -> 6);
  /// nullopt for an infinite bond. Display only.
  [[nodiscard]] std::optional<int> bond_order(int i, int j) const;

  /// Restriction to the given node subset (in index order).
  [[nodiscard]] GeneralizedCartanMatrix restrict_to(NodeSet nodes) const;

  friend bool operator==(const GeneralizedCartanMatrix&, const GeneralizedCartanMatrix&) = default;

private:
  std::vector<std::string> nodes_;
  std::vector<std::vector<Int>> entries_;
  bool symmetrizable_ = false;
};

/// Symmetrizer d with d_i a_ij = d_j a_ji, as rationals scaled to positive
/// integers, when one exists.
std::optional<std::vector<Int>> symmetrizer(const std::vector<std::vector<Int>>& a);

enum class GluingMode { Tilde, Breve };

std::string_view to_string(GluingMode mode);
GluingMode parse_gluing_mode(std::string_view text);

/// Two copies I^flat, I^sharp of the node set glued along K.
///
/// Glued nodes are listed flat copy first (in base order), then the
/// sharp-only nodes. Names are "i#flat" / "i#sharp"; a glued K-node carries
/// its flat name.
struct GluedDiagram {
  GluingMode mode = GluingMode::Tilde;
  GeneralizedCartanMatrix matrix;
  std::vector<int> flat_map;                   // I -> glued index
  std::vector<int> sharp_map;                  // I -> glued index
  std::vector<std::optional<int>> natural_flat;   // glued -> I through the flat copy
  std::vector<std::optional<int>> natural_sharp;  // glued -> I through the sharp copy

  [[nodiscard]] NodeSet flat_nodes() const;
  [[nodiscard]] NodeSet sharp_nodes() const;
};

GluedDiagram glue_tilde(const GeneralizedCartanMatrix& a, NodeSet k);

/// `partner` is indexed by base node; on K it must be an involution of K
/// preserving a restricted to K. Entries outside K are ignored.
GluedDiagram glue_breve(const GeneralizedCartanMatrix& a, NodeSet k, const std::vector<int>& partner);

}  // namespace bbatlas

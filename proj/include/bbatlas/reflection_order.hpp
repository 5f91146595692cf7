#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bbatlas/coxeter.hpp"
#include "bbatlas/poset.hpp"

namespace bbatlas {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// A total order on a finite set of reflections (given by positive roots),
/// obtained by sorting on the slope theta1(beta) / theta2(beta).
///
/// theta1 is stored scaled to integers: theta1[i] / theta1_scale is the
/// value on node i. theta2 is 1 on every node, so theta2(beta) is the height.
struct ReflectionOrderSpec {
  std::vector<RootVector> order;  // ascending
  std::vector<Int> theta1;
  Int theta1_scale = 1;
  std::vector<Int> theta2;
  NodeSet final_support;
  std::size_t final_begin = 0;  // first index of the final section
  std::uint64_t seed = kDefaultSeed;
  int attempts = 0;

  [[nodiscard]] std::optional<std::size_t> position(const RootVector& beta) const;
  /// Sort key of a label root; the bottom label sits between the roots
  /// outside the final section and those inside it.
  [[nodiscard]] long key(const RootVector& beta) const;
  [[nodiscard]] long bottom_key() const { return 2 * static_cast<long>(final_begin) - 1; }
};

class ReflectionOrderError : public Error {
public:
  using Error::Error;
};

struct OrderValidation {
  bool ok = true;
  std::string reason;
  std::vector<RootVector> witness;  // offending rank-2 subsystem (in order) or pair
};

/// Label roots of one rank-2 subsystem must appear in angular order or its reverse.
OrderValidation validate_dihedral(const std::vector<RootVector>& ordered);
/// Every root supported inside final_support comes after every other root.
OrderValidation validate_final_section(const std::vector<RootVector>& ordered, NodeSet final_support);

/// Slope order with theta1 = indicator of final_support plus a seeded generic
/// perturbation, validated; re-seeds up to max_attempts times on ties or
/// validation failure, then throws ReflectionOrderError with the last witness.
ReflectionOrderSpec build_reflection_order(std::vector<RootVector> labels, NodeSet final_support,
                                           std::uint64_t seed = kDefaultSeed, int max_attempts = 16);

/// Which product names the reflection on a cover lower < upper:
/// Left is upper * lower^{-1}, Right is lower^{-1} * upper.
enum class LabelSide { Left, Right };

/// For each cover (lower, upper) of a poset whose elements are group
/// elements, the root of the reflection relating them on the given side.
/// Throws InvariantError when that product is not a reflection.
std::map<Cover, RootVector> reflection_labels(const CoxeterGroup& g, const FinitePoset& p,
                                              const std::vector<GroupElement>& elements,
                                              LabelSide side = LabelSide::Left);

/// Turns label roots into keyed labels under the given order.
EdgeLabeling label_edges_by_reflection(const std::map<Cover, RootVector>& roots, const ReflectionOrderSpec& order);

inline const std::string kBottomLabel = "bottom";

}  // namespace bbatlas

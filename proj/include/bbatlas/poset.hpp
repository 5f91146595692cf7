#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bbatlas/common.hpp"

namespace bbatlas {

using Relation = std::vector<std::vector<char>>;
/// (lower, upper) element indices.
using Cover = std::pair<std::size_t, std::size_t>;

/// Finite poset on indexed elements, stored as its full order relation plus
/// the cover edges derived from it.
class FinitePoset {
public:
  FinitePoset() = default;
  /// Validates that leq is a partial order (throws InputError otherwise).
  FinitePoset(std::vector<std::string> names, Relation leq, std::optional<std::vector<int>> rank = std::nullopt);
  static FinitePoset from_covers(std::vector<std::string> names, const std::vector<Cover>& covers,
                                 std::optional<std::vector<int>> rank = std::nullopt);

  [[nodiscard]] std::size_t size() const { return names_.size(); }
  [[nodiscard]] const std::string& name(std::size_t i) const { return names_[i]; }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] bool leq(std::size_t i, std::size_t j) const { return leq_[i][j] != 0; }
  [[nodiscard]] bool lt(std::size_t i, std::size_t j) const { return i != j && leq_[i][j] != 0; }
  [[nodiscard]] const Relation& relation() const { return leq_; }
  [[nodiscard]] const std::optional<std::vector<int>>& rank() const { return rank_; }
  [[nodiscard]] const std::vector<Cover>& covers() const { return covers_; }
  [[nodiscard]] const std::vector<std::size_t>& lower_covers(std::size_t i) const { return lower_[i]; }
  [[nodiscard]] const std::vector<std::size_t>& upper_covers(std::size_t i) const { return upper_[i]; }
  [[nodiscard]] std::vector<std::size_t> minimal_elements() const;
  /// Elements of [lower, upper].
  [[nodiscard]] std::vector<std::size_t> interval(std::size_t lower, std::size_t upper) const;

  /// The same poset with element i moved to position perm[i].
  [[nodiscard]] FinitePoset permuted(const std::vector<std::size_t>& perm) const;

private:
  std::vector<std::string> names_;
  Relation leq_;
  std::optional<std::vector<int>> rank_;
  std::vector<Cover> covers_;
  std::vector<std::vector<std::size_t>> lower_, upper_;
};

/// Minimal edge set whose transitive closure is the strict order.
std::vector<Cover> transitive_reduction(const Relation& leq);
/// Reflexive-transitive closure of a cover (or any) edge list.
Relation transitive_closure(std::size_t n, const std::vector<Cover>& edges);

struct PurityReport {
  bool pure = true;
  std::optional<Cover> witness;  // interval with chains of different lengths
  int shortest = 0;
  int longest = 0;
};
PurityReport is_pure(const FinitePoset& p);

struct ThinReport {
  bool thin = true;
  std::optional<Cover> witness;  // offending interval
  std::size_t witness_size = 0;
  std::size_t length_two_intervals = 0;
};
/// Pure, and every interval of length 2 has exactly four elements.
ThinReport is_thin(const FinitePoset& p);

struct Label {
  long key = 0;  // position in the totally ordered label set
  std::string name;
  friend bool operator==(const Label&, const Label&) = default;
};
using EdgeLabeling = std::map<Cover, Label>;

/// Adjoins a new bottom element (index = old size) below exactly the given
/// elements, labelling the new edges with `bottom`.
std::pair<FinitePoset, EdgeLabeling> augment_zero_hat(const FinitePoset& p, const std::vector<std::size_t>& minimal,
                                                      const Label& bottom, const EdgeLabeling& labels,
                                                      const std::string& bottom_name = "0hat");

/// Direction in which a maximal chain of [x, y] is read into a label word.
/// TopDown reads y > ... > x starting from the edge at y.
enum class ChainReading { TopDown, BottomUp };

struct Chain {
  std::vector<std::size_t> elements;  // in reading order
  std::vector<long> keys;
};

/// All maximal chains of [lower, upper]; throws CapExceeded past `cap`.
std::vector<Chain> maximal_chains(const FinitePoset& p, const EdgeLabeling& labels, std::size_t lower,
                                  std::size_t upper, ChainReading reading, std::size_t cap = kDefaultChainCap);

struct ELViolation {
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::string reason;
  std::vector<Chain> chains;
};

struct ELReport {
  bool passed = true;
  std::size_t intervals_checked = 0;
  std::vector<ELViolation> violations;
};

/// For every interval: exactly one strictly increasing maximal chain, and
/// its label word is lexicographically smaller than every other chain's.
ELReport el_check(const FinitePoset& p, const EdgeLabeling& labels, ChainReading reading = ChainReading::TopDown,
                  std::size_t chain_cap = kDefaultChainCap);

/// The lexicographically least maximal chain of [lower, upper].
Chain lex_least_chain(const FinitePoset& p, const EdgeLabeling& labels, std::size_t lower, std::size_t upper,
                      ChainReading reading = ChainReading::TopDown, std::size_t chain_cap = kDefaultChainCap);

nlohmann::json to_json(const FinitePoset& p, const EdgeLabeling* labels = nullptr);
std::string to_dot(const FinitePoset& p, const EdgeLabeling* labels = nullptr);
nlohmann::json to_json(const ELViolation& v, const FinitePoset& p);

}  // namespace bbatlas

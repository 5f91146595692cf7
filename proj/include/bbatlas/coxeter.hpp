#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bbatlas/cartan.hpp"
#include "bbatlas/common.hpp"

namespace bbatlas {

/// Integer vector in the simple-root basis.
class RootVector {
public:
  RootVector() = default;
  explicit RootVector(std::vector<Int> coords) : coords_(std::move(coords)) {}
  static RootVector simple(int rank, int i);

  [[nodiscard]] const std::vector<Int>& coords() const { return coords_; }
  [[nodiscard]] std::size_t size() const { return coords_.size(); }
  [[nodiscard]] Int operator[](std::size_t i) const { return coords_[i]; }

  /// Sign-coherent with at least one positive (resp. negative) coordinate.
  [[nodiscard]] bool is_positive() const;
  [[nodiscard]] bool is_negative() const;
  [[nodiscard]] bool is_sign_coherent() const;
  [[nodiscard]] NodeSet support() const;
  [[nodiscard]] Int height() const;
  [[nodiscard]] RootVector operator-() const;
  [[nodiscard]] std::string to_string() const;

  friend auto operator<=>(const RootVector&, const RootVector&) = default;
  friend bool operator==(const RootVector&, const RootVector&) = default;

private:
  std::vector<Int> coords_;
};

/// An element of W, stored as its exact action on the root lattice together
/// with the inverse action and the length. Equality is equality of actions.
/// Instances are produced by CoxeterGroup; they are plain immutable values.
class GroupElement {
public:
  GroupElement() = default;

  [[nodiscard]] int rank() const { return static_cast<int>(n_); }
  [[nodiscard]] int length() const { return length_; }
  /// Coordinates of w(alpha_i).
  [[nodiscard]] RootVector image(int i) const;
  /// Coordinates of w^{-1}(alpha_i).
  [[nodiscard]] RootVector inverse_image(int i) const;
  [[nodiscard]] Int entry(int row, int col) const { return action_[col * n_ + row]; }
  [[nodiscard]] RootVector apply(const RootVector& v) const;

  /// s_j is a right descent iff w(alpha_j) is negative.
  [[nodiscard]] bool has_right_descent(int j) const { return column_negative(action_, j); }
  /// s_j is a left descent iff w^{-1}(alpha_j) is negative.
  [[nodiscard]] bool has_left_descent(int j) const { return column_negative(inverse_, j); }
  [[nodiscard]] NodeSet right_descents() const;
  [[nodiscard]] NodeSet left_descents() const;
  [[nodiscard]] bool is_identity() const { return length_ == 0; }

  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.action_ == b.action_; }
  [[nodiscard]] std::size_t hash() const;

private:
  friend class CoxeterGroup;
  bool column_negative(const std::vector<Int>& m, int j) const;

  std::size_t n_ = 0;
  std::vector<Int> action_;   // column-major: column i = w(alpha_i)
  std::vector<Int> inverse_;  // column-major: column i = w^{-1}(alpha_i)
  int length_ = 0;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& w) const { return w.hash(); }
};

struct Reflection {
  RootVector root;  // positive
  GroupElement element;
};

/// Result of a length-windowed enumeration. `saturated` means no element of
/// length max_length + 1 exists, i.e. the whole (sub)group was listed.
struct Ball {
  std::vector<GroupElement> elements;
  bool saturated = false;
};

/// The Coxeter group W of a generalized Cartan matrix, with generator s_j
/// acting by alpha_i -> alpha_i - a_ij alpha_j.
class CoxeterGroup {
public:
  explicit CoxeterGroup(GeneralizedCartanMatrix cartan);

  [[nodiscard]] const GeneralizedCartanMatrix& cartan() const { return cartan_; }
  [[nodiscard]] int rank() const { return cartan_.rank(); }
  [[nodiscard]] NodeSet all_nodes() const { return NodeSet::all(rank()); }

  [[nodiscard]] GroupElement identity() const;
  [[nodiscard]] GroupElement generator(int j) const;
  [[nodiscard]] GroupElement multiply(const GroupElement& u, const GroupElement& v) const;
  [[nodiscard]] GroupElement inverse(const GroupElement& u) const;
  /// w s_j and s_j w; the length moves by exactly one, decided by the descent test.
  [[nodiscard]] GroupElement right_multiply(const GroupElement& w, int j) const;
  [[nodiscard]] GroupElement left_multiply(int j, const GroupElement& w) const;
  [[nodiscard]] GroupElement from_word(std::span<const int> word) const;

  /// Length by greedy right-descent stripping, independent of the cached value.
  [[nodiscard]] int length(const GroupElement& w) const;
  /// Reduced word (node indices), always stripping the smallest descent first.
  [[nodiscard]] std::vector<int> reduced_word(const GroupElement& w) const;
  /// Union of the letters of a reduced word.
  [[nodiscard]] NodeSet support(const GroupElement& w) const;
  [[nodiscard]] bool in_parabolic(const GroupElement& w, NodeSet j) const { return support(w).subset_of(j); }

  [[nodiscard]] bool bruhat_leq(const GroupElement& v, const GroupElement& w) const;
  /// The Bruhat interval [e, w], by closing a reduced word under subwords.
  [[nodiscard]] std::vector<GroupElement> bruhat_lower_interval(const GroupElement& w) const;

  /// Minimal representative of w W_J (no right descent in J).
  [[nodiscard]] GroupElement min_coset_rep_right(const GroupElement& w, NodeSet j) const;
  /// Minimal representative of W_J w (no left descent in J).
  [[nodiscard]] GroupElement min_coset_rep_left(const GroupElement& w, NodeSet j) const;
  /// w = x y with x in W_J, y in ^J W, lengths adding.
  [[nodiscard]] std::pair<GroupElement, GroupElement> parabolic_factorize_left(const GroupElement& w, NodeSet j) const;
  /// w = y u with y in W^J, u in W_J, lengths adding.
  [[nodiscard]] std::pair<GroupElement, GroupElement> parabolic_factorize_right(const GroupElement& w, NodeSet j) const;

  /// All elements of length <= max_length, in canonical order
  /// (length, then reduced word). Negative max_length enumerates until
  /// saturation. Throws CapExceeded beyond `cap` elements.
  [[nodiscard]] Ball enumerate_ball(int max_length, std::size_t cap = kDefaultBallCap) const;
  [[nodiscard]] Ball enumerate_parabolic(NodeSet j, int max_length, std::size_t cap = kDefaultBallCap) const;

  /// Positive real roots w(alpha_i) with l(w) + 1 <= bound, sorted.
  [[nodiscard]] std::vector<RootVector> positive_real_roots(int bound) const;
  /// Positive roots together with a reflection for each, same window.
  [[nodiscard]] std::vector<Reflection> reflections(int bound) const;
  /// s_beta = w s_i w^{-1} for beta = +-w(alpha_i), with w found by lowering
  /// the height of beta one simple reflection at a time. Throws InputError
  /// when beta is not a real root.
  [[nodiscard]] Reflection reflection_from_root(const RootVector& beta) const;
  /// The positive root of t when t is a reflection (odd length, involutive, t - 1 of rank one).
  [[nodiscard]] std::optional<RootVector> reflection_root(const GroupElement& t) const;

  /// { beta > 0 : w(beta) < 0 }, optionally restricted to roots supported in J,
  /// read off a reduced word.
  [[nodiscard]] std::vector<RootVector> inversion_set(const GroupElement& w, std::optional<NodeSet> restrict_to = {}) const;

  /// Longest element of a finite W_J, found by saturating enumeration.
  [[nodiscard]] GroupElement longest_element(NodeSet j, std::size_t cap = kDefaultBallCap) const;
  /// The involution j -> j' of K with w_K(alpha_j) = -alpha_j', indexed by
  /// node (identity outside K).
  [[nodiscard]] std::vector<int> minus_wK_permutation(NodeSet k, std::size_t cap = kDefaultBallCap) const;

  [[nodiscard]] std::string word_string(const GroupElement& w) const;
  [[nodiscard]] std::vector<std::string> word_names(const GroupElement& w) const;
  /// Parses space-separated node identifiers ("" or "e" is the identity).
  [[nodiscard]] GroupElement parse_word(std::string_view text) const;

private:
  [[nodiscard]] int strip_length(const GroupElement& w, std::vector<int>* word) const;
  [[nodiscard]] GroupElement make(std::vector<Int> action, std::vector<Int> inverse) const;
  void right_apply_inplace(std::vector<Int>& m, int j) const;
  void left_apply_inplace(std::vector<Int>& m, int j) const;

  GeneralizedCartanMatrix cartan_;
  int length_cap_ = 1'000'000;
};

/// Relabels a reduced word of w (an element of `from`) along node_map and
/// multiplies it out in `to`.
GroupElement embed_word(const CoxeterGroup& from, const GroupElement& w, const CoxeterGroup& to,
                        std::span<const int> node_map);

/// Whether the Tits form of W_J is positive definite, i.e. W_J is finite.
/// Used only to explain a saturation failure.
bool tits_form_positive_definite(const GeneralizedCartanMatrix& a, NodeSet j);

/// Canonical ordering: by length, then lexicographically on reduced word.
void sort_canonical(const CoxeterGroup& g, std::vector<GroupElement>& elements);

}  // namespace bbatlas

template <>
struct std::hash<bbatlas::GroupElement> {
  std::size_t operator()(const bbatlas::GroupElement& w) const { return w.hash(); }
};

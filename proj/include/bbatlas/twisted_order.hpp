#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "bbatlas/coxeter.hpp"

namespace bbatlas {

/// w = x * y^{-1} with x in W_J and y in W^J.
struct TwistedDecomposition {
  GroupElement x;
  GroupElement y;
};

/// The J-twisted Bruhat order and twisted length on W.
///
/// The order is decided by the witness criterion: with a = x' y'^{-1} and
/// b = x y^{-1}, a <=_J b iff some u in W_J has x <= x' u and y' u <= y.
/// Because y' is in W^J, l(y' u) = l(y') + l(u), so only u with
/// l(u) <= l(y) - l(y') need to be tried; the search is finite even for
/// infinite W_J.
///
/// The group is held by value. Decompositions and the W_J ball are cached
/// behind a mutex, so const queries may run concurrently.
class TwistedContext {
public:
  TwistedContext(CoxeterGroup group, NodeSet j);
  TwistedContext(TwistedContext&&) noexcept;
  TwistedContext& operator=(TwistedContext&&) noexcept;
  ~TwistedContext();

  [[nodiscard]] const CoxeterGroup& group() const { return group_; }
  [[nodiscard]] NodeSet J() const { return j_; }

  /// Membership in the positive roots of W_J (support inside J).
  [[nodiscard]] bool in_positive_J_roots(const RootVector& beta) const;
  /// Membership in Psi_J = (negative J-roots) u (positive roots outside J).
  [[nodiscard]] bool in_psi(const RootVector& beta) const;

  [[nodiscard]] TwistedDecomposition decompose(const GroupElement& w) const;
  /// l(y) - l(x) for the left factorization w = x y, x in W_J, y in ^J W.
  [[nodiscard]] int jlength(const GroupElement& w) const;
  /// l(w) - 2 #{ beta in positive J-roots : w^{-1}(beta) < 0 }. Counting
  /// w(beta) < 0 instead yields jlength(w^{-1}).
  [[nodiscard]] int jlength_by_inversions(const GroupElement& w) const;

  [[nodiscard]] bool jleq(const GroupElement& a, const GroupElement& b) const;
  /// The first witness u in (length, reduced word) order, if a <=_J b.
  [[nodiscard]] std::optional<GroupElement> jleq_witness(const GroupElement& a, const GroupElement& b) const;

  /// Exactly { c : a <=_J c <=_J b } in canonical order. Throws InputError
  /// when a is not below b.
  [[nodiscard]] std::vector<GroupElement> jinterval(const GroupElement& a, const GroupElement& b) const;

  /// Cover edges (lower index, upper index) of the order restricted to the
  /// given elements (typically a jinterval).
  [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> jcovers(const std::vector<GroupElement>& elements) const;

  /// Elements of W_J of length <= max_length, in canonical order.
  [[nodiscard]] std::vector<GroupElement> parabolic_ball(int max_length) const;

private:
  struct Cache;
  CoxeterGroup group_;
  NodeSet j_;
  std::unique_ptr<Cache> cache_;
};

/// Some u' <= u with x u'^{-1} <= x', found by exhaustive search over [e, u].
/// The precondition x <= x' u guarantees existence.
std::optional<GroupElement> lege_witness(const CoxeterGroup& g, const GroupElement& x, const GroupElement& x_prime,
                                         const GroupElement& u);

/// The twisted order on the ball of radius L generated directly from its
/// defining relations s_beta w < w (beta in Psi_J, w^{-1}(beta) < 0), closed
/// transitively inside the ball. Reflections are taken up to length 2L + 1.
struct ClosureRelation {
  std::vector<GroupElement> ball;
  std::vector<std::vector<char>> leq;  // leq[i][j]: ball[i] <= ball[j]
};
ClosureRelation jleq_closure_oracle(const TwistedContext& ctx, int max_length, std::size_t cap = kDefaultBallCap);

}  // namespace bbatlas

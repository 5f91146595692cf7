#include "bbatlas/twisted_order.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <unordered_set>

namespace bbatlas {

struct TwistedContext::Cache {
  mutable std::shared_mutex mutex;
  std::unordered_map<GroupElement, TwistedDecomposition, GroupElementHash> decompositions;
  std::vector<GroupElement> j_ball;
  int j_ball_length = -1;
  bool j_ball_saturated = false;
};

TwistedContext::TwistedContext(CoxeterGroup group, NodeSet j)
    : group_(std::move(group)), j_(j), cache_(std::make_unique<Cache>()) {
  if (!j_.subset_of(group_.all_nodes())) throw InputError("J is not a subset of the nodes");
}

TwistedContext::TwistedContext(TwistedContext&&) noexcept = default;
TwistedContext& TwistedContext::operator=(TwistedContext&&) noexcept = default;
TwistedContext::~TwistedContext() = default;

bool TwistedContext::in_positive_J_roots(const RootVector& beta) const {
  return beta.is_positive() && beta.support().subset_of(j_);
}

bool TwistedContext::in_psi(const RootVector& beta) const {
  if (beta.is_negative()) return (-beta).support().subset_of(j_);
  if (beta.is_positive()) return !beta.support().subset_of(j_);
  return false;
}

TwistedDecomposition TwistedContext::decompose(const GroupElement& w) const {
  {
    std::shared_lock lock(cache_->mutex);
    auto it = cache_->decompositions.find(w);
    if (it != cache_->decompositions.end()) return it->second;
  }
  // w^{-1} = y u with y in W^J, u in W_J; then w = u^{-1} y^{-1}.
  auto [y, u] = group_.parabolic_factorize_right(group_.inverse(w), j_);
  TwistedDecomposition d{group_.inverse(u), std::move(y)};
  std::unique_lock lock(cache_->mutex);
  cache_->decompositions.emplace(w, d);
  return d;
}

int TwistedContext::jlength(const GroupElement& w) const {
  auto [x, y] = group_.parabolic_factorize_left(w, j_);
  return y.length() - x.length();
}

int TwistedContext::jlength_by_inversions(const GroupElement& w) const {
  const auto inverted_j_roots = group_.inversion_set(group_.inverse(w), j_);
  return w.length() - 2 * static_cast<int>(inverted_j_roots.size());
}

std::vector<GroupElement> TwistedContext::parabolic_ball(int max_length) const {
  {
    std::shared_lock lock(cache_->mutex);
    if (cache_->j_ball_length >= max_length || cache_->j_ball_saturated) {
      std::vector<GroupElement> out;
      for (const auto& u : cache_->j_ball)
        if (u.length() <= max_length) out.push_back(u);
      return out;
    }
  }
  Ball ball = group_.enumerate_parabolic(j_, max_length);
  std::unique_lock lock(cache_->mutex);
  if (max_length > cache_->j_ball_length) {
    cache_->j_ball = ball.elements;
    cache_->j_ball_length = max_length;
    cache_->j_ball_saturated = ball.saturated;
  }
  return ball.elements;
}

std::optional<GroupElement> TwistedContext::jleq_witness(const GroupElement& a, const GroupElement& b) const {
  const TwistedDecomposition da = decompose(a);
  const TwistedDecomposition db = decompose(b);
  const int slack = db.y.length() - da.y.length();
  if (slack < 0) return std::nullopt;
  if (da.y.length() - da.x.length() > db.y.length() - db.x.length()) return std::nullopt;
  for (const auto& u : parabolic_ball(slack)) {
    if (db.x.length() > da.x.length() + u.length()) continue;
    if (!group_.bruhat_leq(group_.multiply(da.y, u), db.y)) continue;
    if (group_.bruhat_leq(db.x, group_.multiply(da.x, u))) return u;
  }
  return std::nullopt;
}

bool TwistedContext::jleq(const GroupElement& a, const GroupElement& b) const {
  if (a == b) return true;
  return jleq_witness(a, b).has_value();
}

std::vector<GroupElement> TwistedContext::jinterval(const GroupElement& a, const GroupElement& b) const {
  if (!jleq(a, b)) throw InputError("jinterval: lower end is not below upper end");
  const TwistedDecomposition da = decompose(a);
  const TwistedDecomposition db = decompose(b);

  // c = x_c y_c^{-1} in [a, b] forces y_c <= y_b, and x_c <= x_a u' for
  // some u' in W_J with y_a u' <= y_c.
  std::vector<GroupElement> result;
  std::unordered_set<GroupElement, GroupElementHash> seen;
  for (const auto& yc : group_.bruhat_lower_interval(db.y)) {
    if (yc.length() < da.y.length()) continue;
    if (!(yc.right_descents() & j_).empty()) continue;
    std::unordered_set<GroupElement, GroupElementHash> xs;
    for (const auto& u : parabolic_ball(yc.length() - da.y.length())) {
      if (!group_.bruhat_leq(group_.multiply(da.y, u), yc)) continue;
      for (auto& xc : group_.bruhat_lower_interval(group_.multiply(da.x, u))) xs.insert(std::move(xc));
    }
    const GroupElement yc_inv = group_.inverse(yc);
    for (const auto& xc : xs) {
      GroupElement c = group_.multiply(xc, yc_inv);
      if (seen.count(c)) continue;
      if (jleq(a, c) && jleq(c, b)) {
        seen.insert(c);
        result.push_back(std::move(c));
      }
    }
  }
  sort_canonical(group_, result);
  return result;
}

std::vector<std::pair<std::size_t, std::size_t>> TwistedContext::jcovers(const std::vector<GroupElement>& elements) const {
  const std::size_t n = elements.size();
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) leq[i][j] = i == j || jleq(elements[i], elements[j]);
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !leq[i][j]) continue;
      bool between = false;
      for (std::size_t k = 0; k < n && !between; ++k)
        between = k != i && k != j && leq[i][k] && leq[k][j];
      if (!between) covers.emplace_back(i, j);
    }
  return covers;
}

std::optional<GroupElement> lege_witness(const CoxeterGroup& g, const GroupElement& x, const GroupElement& x_prime,
                                         const GroupElement& u) {
  for (const auto& up : g.bruhat_lower_interval(u))
    if (g.bruhat_leq(g.multiply(x, g.inverse(up)), x_prime)) return up;
  return std::nullopt;
}

ClosureRelation jleq_closure_oracle(const TwistedContext& ctx, int max_length, std::size_t cap) {
  const CoxeterGroup& g = ctx.group();
  ClosureRelation rel;
  rel.ball = g.enumerate_ball(max_length, cap).elements;
  const std::size_t n = rel.ball.size();
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(rel.ball[i], i);

  rel.leq.assign(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) rel.leq[i][i] = 1;

  for (const auto& refl : g.reflections(max_length + 1)) {
    if (refl.element.length() > 2 * max_length + 1) continue;
    const RootVector beta = ctx.in_positive_J_roots(refl.root) ? -refl.root : refl.root;
    for (std::size_t i = 0; i < n; ++i) {
      const GroupElement& w = rel.ball[i];
      if (!g.inverse(w).apply(beta).is_negative()) continue;
      auto it = index.find(g.multiply(refl.element, w));
      if (it != index.end()) rel.leq[it->second][i] = 1;
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (!rel.leq[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (rel.leq[k][j]) rel.leq[i][j] = 1;
    }
  return rel;
}

}  // namespace bbatlas

#include "bbatlas/reflection_order.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace bbatlas {

__extension__ using Wide = __int128;

std::optional<std::size_t> ReflectionOrderSpec::position(const RootVector& beta) const {
  auto it = std::find(order.begin(), order.end(), beta);
  if (it == order.end()) return std::nullopt;
  return static_cast<std::size_t>(it - order.begin());
}

long ReflectionOrderSpec::key(const RootVector& beta) const {
  auto p = position(beta);
  if (!p) throw InputError("root is not in the reflection order: " + beta.to_string());
  return 2 * static_cast<long>(*p);
}

namespace {

Wide dot(const std::vector<Int>& f, const RootVector& beta) {
  Wide s = 0;
  for (std::size_t i = 0; i < f.size(); ++i) s += static_cast<Wide>(f[i]) * beta[i];
  return s;
}

// A pair of coordinates on which beta and gamma are linearly independent.
std::optional<std::pair<std::size_t, std::size_t>> chart(const RootVector& beta, const RootVector& gamma) {
  for (std::size_t r = 0; r < beta.size(); ++r)
    for (std::size_t s = r + 1; s < beta.size(); ++s)
      if (static_cast<Wide>(beta[r]) * gamma[s] - static_cast<Wide>(beta[s]) * gamma[r] != 0) return std::make_pair(r, s);
  return std::nullopt;
}

bool in_plane(const RootVector& beta, const RootVector& gamma, std::size_t r, std::size_t s, const RootVector& delta) {
  const Wide det = static_cast<Wide>(beta[r]) * gamma[s] - static_cast<Wide>(beta[s]) * gamma[r];
  // det * delta = a beta + b gamma, by Cramer on the chart coordinates.
  const Wide a = static_cast<Wide>(delta[r]) * gamma[s] - static_cast<Wide>(delta[s]) * gamma[r];
  const Wide b = static_cast<Wide>(beta[r]) * delta[s] - static_cast<Wide>(beta[s]) * delta[r];
  for (std::size_t k = 0; k < delta.size(); ++k)
    if (det * delta[k] != a * beta[k] + b * gamma[k]) return false;
  return true;
}

}  // namespace

OrderValidation validate_dihedral(const std::vector<RootVector>& ordered) {
  const std::size_t n = ordered.size();
  std::set<std::vector<std::size_t>> planes;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) {
      auto rs = chart(ordered[p], ordered[q]);
      if (!rs) return {false, "parallel label roots", {ordered[p], ordered[q]}};
      std::vector<std::size_t> members;
      for (std::size_t k = 0; k < n; ++k)
        if (in_plane(ordered[p], ordered[q], rs->first, rs->second, ordered[k])) members.push_back(k);
      if (members.size() < 3 || !planes.insert(members).second) continue;

      // Projected to the chart, positive roots lie in the closed first
      // quadrant and are pairwise non-parallel, so the cross product is a
      // strict angular comparison.
      auto [r, s] = *rs;
      std::vector<std::size_t> by_angle = members;
      std::sort(by_angle.begin(), by_angle.end(), [&](std::size_t x, std::size_t y) {
        const auto& u = ordered[x];
        const auto& v = ordered[y];
        return static_cast<Wide>(u[r]) * v[s] - static_cast<Wide>(u[s]) * v[r] > 0;
      });
      const bool up = std::is_sorted(by_angle.begin(), by_angle.end());
      const bool down = std::is_sorted(by_angle.rbegin(), by_angle.rend());
      if (!up && !down) {
        OrderValidation v{false, "rank-2 subsystem not in dihedral order", {}};
        for (std::size_t k : members) v.witness.push_back(ordered[k]);
        return v;
      }
    }
  return {};
}

OrderValidation validate_final_section(const std::vector<RootVector>& ordered, NodeSet final_support) {
  bool inside_seen = false;
  for (std::size_t k = 0; k < ordered.size(); ++k) {
    const bool inside = ordered[k].support().subset_of(final_support);
    if (inside) {
      inside_seen = true;
    } else if (inside_seen) {
      return {false, "root outside the final section follows one inside it", {ordered[k]}};
    }
  }
  return {};
}

ReflectionOrderSpec build_reflection_order(std::vector<RootVector> labels, NodeSet final_support, std::uint64_t seed,
                                           int max_attempts) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  for (const auto& beta : labels)
    if (!beta.is_positive()) throw InputError("label root is not positive: " + beta.to_string());
  const std::size_t rank = labels.empty() ? 0 : labels.front().size();

  Int height = 1;
  for (const auto& beta : labels) height = std::max(height, beta.height());
  constexpr Int kPerturbation = Int{1} << 20;
  // Roots inside the final support have slope >= scale + 1; all others stay below scale.
  const Int scale = checked_add(checked_mul(height, kPerturbation), 1);

  OrderValidation last;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt - 1));
    std::uniform_int_distribution<Int> eps(1, kPerturbation);
    ReflectionOrderSpec spec;
    spec.seed = seed;
    spec.attempts = attempt;
    spec.final_support = final_support;
    spec.theta1_scale = scale;
    spec.theta2.assign(rank, 1);
    for (std::size_t i = 0; i < rank; ++i)
      spec.theta1.push_back(checked_add(final_support.contains(static_cast<int>(i)) ? scale : 0, eps(rng)));

    // slope(x) < slope(y) iff theta1(x) ht(y) < theta1(y) ht(x).
    std::vector<RootVector> order = labels;
    auto less = [&](const RootVector& x, const RootVector& y) {
      return dot(spec.theta1, x) * dot(spec.theta2, y) < dot(spec.theta1, y) * dot(spec.theta2, x);
    };
    std::sort(order.begin(), order.end(), less);
    bool tie = false;
    for (std::size_t k = 1; k < order.size() && !tie; ++k) tie = !less(order[k - 1], order[k]);
    if (tie) {
      last = {false, "slope tie", {}};
      continue;
    }
    last = validate_dihedral(order);
    if (last.ok) last = validate_final_section(order, final_support);
    if (!last.ok) continue;

    spec.order = std::move(order);
    spec.final_begin = spec.order.size();
    for (std::size_t k = 0; k < spec.order.size(); ++k)
      if (spec.order[k].support().subset_of(final_support)) {
        spec.final_begin = k;
        break;
      }
    return spec;
  }
  std::string witness;
  for (const auto& beta : last.witness) witness += " " + beta.to_string();
  throw ReflectionOrderError("no valid reflection order after " + std::to_string(max_attempts) +
                             " attempts: " + last.reason + (witness.empty() ? "" : ":" + witness));
}

std::map<Cover, RootVector> reflection_labels(const CoxeterGroup& g, const FinitePoset& p,
                                              const std::vector<GroupElement>& elements, LabelSide side) {
  std::map<Cover, RootVector> out;
  for (auto [lo, hi] : p.covers()) {
    const GroupElement& a = elements.at(lo);
    const GroupElement& b = elements.at(hi);
    const GroupElement t = side == LabelSide::Left ? g.multiply(b, g.inverse(a)) : g.multiply(g.inverse(a), b);
    auto root = g.reflection_root(t);
    if (!root)
      throw InvariantError("cover " + g.word_string(elements[lo]) + " < " + g.word_string(elements[hi]) +
                           " is not related by a reflection");
    out.emplace(Cover{lo, hi}, std::move(*root));
  }
  return out;
}

EdgeLabeling label_edges_by_reflection(const std::map<Cover, RootVector>& roots, const ReflectionOrderSpec& order) {
  EdgeLabeling out;
  for (const auto& [edge, beta] : roots) out[edge] = Label{order.key(beta), "t" + beta.to_string()};
  return out;
}

}  // namespace bbatlas

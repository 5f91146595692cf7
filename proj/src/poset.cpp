#include "bbatlas/poset.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace bbatlas {

FinitePoset::FinitePoset(std::vector<std::string> names, Relation leq, std::optional<std::vector<int>> rank)
    : names_(std::move(names)), leq_(std::move(leq)), rank_(std::move(rank)) {
  const std::size_t n = names_.size();
  if (leq_.size() != n) throw InputError("poset relation has wrong size");
  for (const auto& row : leq_)
    if (row.size() != n) throw InputError("poset relation has wrong size");
  if (rank_ && rank_->size() != n) throw InputError("poset rank has wrong size");
  for (std::size_t i = 0; i < n; ++i) {
    if (!leq_[i][i]) throw InputError("poset relation is not reflexive at " + names_[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && leq_[i][j] && leq_[j][i]) throw InputError("poset relation is not antisymmetric: " + names_[i] + ", " + names_[j]);
      if (!leq_[i][j]) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (leq_[j][k] && !leq_[i][k]) throw InputError("poset relation is not transitive at " + names_[j]);
    }
  }
  covers_ = transitive_reduction(leq_);
  lower_.assign(n, {});
  upper_.assign(n, {});
  for (auto [lo, hi] : covers_) {
    upper_[lo].push_back(hi);
    lower_[hi].push_back(lo);
  }
}

FinitePoset FinitePoset::from_covers(std::vector<std::string> names, const std::vector<Cover>& covers,
                                     std::optional<std::vector<int>> rank) {
  Relation leq = transitive_closure(names.size(), covers);
  return FinitePoset(std::move(names), std::move(leq), std::move(rank));
}

std::vector<std::size_t> FinitePoset::minimal_elements() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (lower_[i].empty()) out.push_back(i);
  return out;
}

std::vector<std::size_t> FinitePoset::interval(std::size_t lower, std::size_t upper) const {
  std::vector<std::size_t> out;
  for (std::size_t z = 0; z < size(); ++z)
    if (leq_[lower][z] && leq_[z][upper]) out.push_back(z);
  return out;
}

FinitePoset FinitePoset::permuted(const std::vector<std::size_t>& perm) const {
  const std::size_t n = size();
  std::vector<std::string> names(n);
  Relation leq(n, std::vector<char>(n, 0));
  std::optional<std::vector<int>> rank;
  if (rank_) rank.emplace(n);
  for (std::size_t i = 0; i < n; ++i) {
    names[perm[i]] = names_[i];
    if (rank_) (*rank)[perm[i]] = (*rank_)[i];
    for (std::size_t j = 0; j < n; ++j) leq[perm[i]][perm[j]] = leq_[i][j];
  }
  return FinitePoset(std::move(names), std::move(leq), std::move(rank));
}

std::vector<Cover> transitive_reduction(const Relation& leq) {
  const std::size_t n = leq.size();
  std::vector<Cover> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !leq[i][j]) continue;
      bool between = false;
      for (std::size_t k = 0; k < n && !between; ++k)
        between = k != i && k != j && leq[i][k] && leq[k][j];
      if (!between) out.emplace_back(i, j);
    }
  return out;
}

Relation transitive_closure(std::size_t n, const std::vector<Cover>& edges) {
  Relation r(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  for (auto [a, b] : edges) r.at(a).at(b) = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (!r[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (r[k][j]) r[i][j] = 1;
    }
  return r;
}

namespace {

// Shortest and longest maximal chain lengths from every element up to
// every element above it, by dynamic programming over upper covers.
struct ChainLengths {
  std::vector<std::vector<int>> shortest, longest;
};

ChainLengths chain_lengths(const FinitePoset& p) {
  const std::size_t n = p.size();
  constexpr int kNone = -1;
  ChainLengths cl{std::vector<std::vector<int>>(n, std::vector<int>(n, kNone)),
                  std::vector<std::vector<int>>(n, std::vector<int>(n, kNone))};
  // Process tops in an order where everything above is handled first:
  // sort by the number of elements below.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::vector<std::size_t> down(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) down[i] += p.leq(j, i);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return down[a] < down[b]; });
  for (std::size_t y : order) {
    cl.shortest[y][y] = cl.longest[y][y] = 0;
    // Elements x below y in decreasing "down" order so that upper covers of x inside [x, y] are finished.
    std::vector<std::size_t> below;
    for (std::size_t x = 0; x < n; ++x)
      if (p.lt(x, y)) below.push_back(x);
    std::sort(below.begin(), below.end(), [&](std::size_t a, std::size_t b) { return down[a] > down[b]; });
    for (std::size_t x : below) {
      int lo = std::numeric_limits<int>::max(), hi = 0;
      for (std::size_t z : p.upper_covers(x)) {
        if (!p.leq(z, y)) continue;
        lo = std::min(lo, cl.shortest[z][y] + 1);
        hi = std::max(hi, cl.longest[z][y] + 1);
      }
      cl.shortest[x][y] = lo;
      cl.longest[x][y] = hi;
    }
  }
  return cl;
}

}  // namespace

PurityReport is_pure(const FinitePoset& p) {
  PurityReport r;
  const ChainLengths cl = chain_lengths(p);
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < p.size(); ++y) {
      if (!p.lt(x, y)) continue;
      if (cl.shortest[x][y] != cl.longest[x][y]) {
        r.pure = false;
        r.witness = Cover{x, y};
        r.shortest = cl.shortest[x][y];
        r.longest = cl.longest[x][y];
        return r;
      }
    }
  return r;
}

ThinReport is_thin(const FinitePoset& p) {
  ThinReport r;
  const PurityReport pure = is_pure(p);
  if (!pure.pure) {
    r.thin = false;
    r.witness = pure.witness;
    r.witness_size = p.interval(pure.witness->first, pure.witness->second).size();
    return r;
  }
  const ChainLengths cl = chain_lengths(p);
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < p.size(); ++y) {
      if (!p.lt(x, y) || cl.longest[x][y] != 2) continue;
      ++r.length_two_intervals;
      const std::size_t size = p.interval(x, y).size();
      if (size != 4 && r.thin) {
        r.thin = false;
        r.witness = Cover{x, y};
        r.witness_size = size;
      }
    }
  return r;
}

std::pair<FinitePoset, EdgeLabeling> augment_zero_hat(const FinitePoset& p, const std::vector<std::size_t>& minimal,
                                                      const Label& bottom, const EdgeLabeling& labels,
                                                      const std::string& bottom_name) {
  const std::size_t n = p.size();
  std::vector<std::string> names = p.names();
  names.push_back(bottom_name);
  Relation leq(n + 1, std::vector<char>(n + 1, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) leq[i][j] = p.relation()[i][j];
  leq[n][n] = 1;
  for (std::size_t m : minimal)
    for (std::size_t j = 0; j < n; ++j)
      if (p.leq(m, j)) leq[n][j] = 1;
  std::optional<std::vector<int>> rank;
  if (p.rank()) {
    rank = *p.rank();
    int lowest = std::numeric_limits<int>::max();
    for (std::size_t m : minimal) lowest = std::min(lowest, (*p.rank())[m]);
    rank->push_back(minimal.empty() ? 0 : lowest - 1);
  }
  FinitePoset hat(std::move(names), std::move(leq), std::move(rank));
  EdgeLabeling out = labels;
  for (std::size_t m : minimal) out[Cover{n, m}] = bottom;
  return {std::move(hat), std::move(out)};
}

namespace {

void collect_chains(const FinitePoset& p, const EdgeLabeling& labels, std::size_t lower, std::size_t current,
                    std::vector<std::size_t>& path, std::vector<long>& keys, std::vector<Chain>& out, std::size_t cap) {
  if (current == lower) {
    if (out.size() >= cap) throw CapExceeded("maximal chain count exceeded the cap of " + std::to_string(cap));
    out.push_back({path, keys});
    return;
  }
  for (std::size_t z : p.lower_covers(current)) {
    if (!p.leq(lower, z)) continue;
    auto it = labels.find(Cover{z, current});
    if (it == labels.end()) throw InputError("cover edge without a label: " + p.name(z) + " < " + p.name(current));
    path.push_back(z);
    keys.push_back(it->second.key);
    collect_chains(p, labels, lower, z, path, keys, out, cap);
    path.pop_back();
    keys.pop_back();
  }
}

bool strictly_increasing(const std::vector<long>& k) {
  for (std::size_t i = 1; i < k.size(); ++i)
    if (!(k[i - 1] < k[i])) return false;
  return true;
}

}  // namespace

std::vector<Chain> maximal_chains(const FinitePoset& p, const EdgeLabeling& labels, std::size_t lower,
                                  std::size_t upper, ChainReading reading, std::size_t cap) {
  std::vector<Chain> out;
  if (!p.leq(lower, upper)) return out;
  std::vector<std::size_t> path{upper};
  std::vector<long> keys;
  collect_chains(p, labels, lower, upper, path, keys, out, cap);
  if (reading == ChainReading::BottomUp)
    for (auto& c : out) {
      std::reverse(c.elements.begin(), c.elements.end());
      std::reverse(c.keys.begin(), c.keys.end());
    }
  return out;
}

ELReport el_check(const FinitePoset& p, const EdgeLabeling& labels, ChainReading reading, std::size_t chain_cap) {
  ELReport report;
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < p.size(); ++y) {
      if (!p.lt(x, y)) continue;
      ++report.intervals_checked;
      std::vector<Chain> chains = maximal_chains(p, labels, x, y, reading, chain_cap);
      std::vector<std::size_t> increasing;
      for (std::size_t c = 0; c < chains.size(); ++c)
        if (strictly_increasing(chains[c].keys)) increasing.push_back(c);
      std::string reason;
      if (increasing.size() != 1) {
        reason = std::to_string(increasing.size()) + " increasing maximal chains";
      } else {
        const auto& inc = chains[increasing.front()].keys;
        for (std::size_t c = 0; c < chains.size(); ++c)
          if (c != increasing.front() && !(inc < chains[c].keys)) {
            reason = "increasing chain is not lexicographically least";
            break;
          }
      }
      if (!reason.empty()) {
        report.passed = false;
        report.violations.push_back({x, y, reason, std::move(chains)});
      }
    }
  return report;
}

Chain lex_least_chain(const FinitePoset& p, const EdgeLabeling& labels, std::size_t lower, std::size_t upper,
                      ChainReading reading, std::size_t chain_cap) {
  auto chains = maximal_chains(p, labels, lower, upper, reading, chain_cap);
  if (chains.empty()) throw InputError("lex_least_chain: empty interval");
  return *std::min_element(chains.begin(), chains.end(),
                           [](const Chain& a, const Chain& b) { return a.keys < b.keys; });
}

nlohmann::json to_json(const FinitePoset& p, const EdgeLabeling* labels) {
  nlohmann::json j;
  j["elements"] = p.names();
  auto covers = nlohmann::json::array();
  for (auto [lo, hi] : p.covers()) covers.push_back({lo, hi});
  j["covers"] = covers;
  if (p.rank()) j["rank"] = *p.rank();
  if (labels) {
    nlohmann::json l = nlohmann::json::object();
    for (const auto& [edge, label] : *labels) l[std::to_string(edge.first) + "," + std::to_string(edge.second)] = label.name;
    j["labels"] = l;
  }
  return j;
}

nlohmann::json to_json(const ELViolation& v, const FinitePoset& p) {
  nlohmann::json j;
  j["lower"] = p.name(v.lower);
  j["upper"] = p.name(v.upper);
  j["reason"] = v.reason;
  auto chains = nlohmann::json::array();
  for (const auto& c : v.chains) {
    nlohmann::json cj;
    std::vector<std::string> names;
    for (std::size_t e : c.elements) names.push_back(p.name(e));
    cj["elements"] = names;
    cj["keys"] = c.keys;
    chains.push_back(cj);
  }
  j["chains"] = chains;
  return j;
}

std::string to_dot(const FinitePoset& p, const EdgeLabeling* labels) {
  std::ostringstream out;
  out << "digraph poset {\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < p.size(); ++i) out << "  n" << i << " [label=\"" << p.name(i) << "\"];\n";
  if (p.rank()) {
    std::map<int, std::vector<std::size_t>> by_rank;
    for (std::size_t i = 0; i < p.size(); ++i) by_rank[(*p.rank())[i]].push_back(i);
    for (const auto& [r, ids] : by_rank) {
      out << "  { rank=same;";
      for (std::size_t i : ids) out << " n" << i << ";";
      out << " }\n";
    }
  }
  for (auto [lo, hi] : p.covers()) {
    out << "  n" << lo << " -> n" << hi;
    if (labels) {
      auto it = labels->find(Cover{lo, hi});
      if (it != labels->end()) out << " [label=\"" << it->second.name << "\"]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace bbatlas

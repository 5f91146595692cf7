#include "bbatlas/coxeter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace bbatlas {

// ---------------------------------------------------------------------------
// RootVector

RootVector RootVector::simple(int rank, int i) {
  std::vector<Int> c(rank, 0);
  c.at(i) = 1;
  return RootVector(std::move(c));
}

bool RootVector::is_positive() const {
  bool any = false;
  for (Int c : coords_) {
    if (c < 0) return false;
    any = any || c > 0;
  }
  return any;
}

bool RootVector::is_negative() const {
  bool any = false;
  for (Int c : coords_) {
    if (c > 0) return false;
    any = any || c < 0;
  }
  return any;
}

bool RootVector::is_sign_coherent() const { return is_positive() || is_negative(); }

NodeSet RootVector::support() const {
  NodeSet s;
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (coords_[i] != 0) s.insert(static_cast<int>(i));
  return s;
}

Int RootVector::height() const {
  Int h = 0;
  for (Int c : coords_) h = checked_add(h, c);
  return h;
}

RootVector RootVector::operator-() const {
  std::vector<Int> c(coords_);
  for (Int& x : c) x = checked_sub(0, x);
  return RootVector(std::move(c));
}

std::string RootVector::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(coords_[i]);
  }
  return s + "]";
}

// ---------------------------------------------------------------------------
// GroupElement

RootVector GroupElement::image(int i) const {
  return RootVector(std::vector<Int>(action_.begin() + i * n_, action_.begin() + (i + 1) * n_));
}

RootVector GroupElement::inverse_image(int i) const {
  return RootVector(std::vector<Int>(inverse_.begin() + i * n_, inverse_.begin() + (i + 1) * n_));
}

RootVector GroupElement::apply(const RootVector& v) const {
  std::vector<Int> out(n_, 0);
  for (std::size_t c = 0; c < n_; ++c) {
    if (v[c] == 0) continue;
    for (std::size_t r = 0; r < n_; ++r) out[r] = checked_add(out[r], checked_mul(action_[c * n_ + r], v[c]));
  }
  return RootVector(std::move(out));
}

bool GroupElement::column_negative(const std::vector<Int>& m, int j) const {
  // Columns are images of simple roots, hence sign-coherent.
  for (std::size_t r = 0; r < n_; ++r) {
    Int x = m[j * n_ + r];
    if (x != 0) return x < 0;
  }
  throw InvariantError("zero column in group element action");
}

NodeSet GroupElement::right_descents() const {
  NodeSet s;
  for (int j = 0; j < rank(); ++j)
    if (has_right_descent(j)) s.insert(j);
  return s;
}

NodeSet GroupElement::left_descents() const {
  NodeSet s;
  for (int j = 0; j < rank(); ++j)
    if (has_left_descent(j)) s.insert(j);
  return s;
}

std::size_t GroupElement::hash() const {
  std::size_t h = 1469598103934665603ULL;
  for (Int x : action_) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------------------
// CoxeterGroup

CoxeterGroup::CoxeterGroup(GeneralizedCartanMatrix cartan) : cartan_(std::move(cartan)) {}

void CoxeterGroup::right_apply_inplace(std::vector<Int>& m, int j) const {
  const int n = rank();
  for (int i = 0; i < n; ++i) {
    if (i == j) continue;
    Int a = cartan_(i, j);
    if (a == 0) continue;
    for (int r = 0; r < n; ++r) m[i * n + r] = checked_sub(m[i * n + r], checked_mul(a, m[j * n + r]));
  }
  for (int r = 0; r < n; ++r) m[j * n + r] = checked_sub(0, m[j * n + r]);
}

void CoxeterGroup::left_apply_inplace(std::vector<Int>& m, int j) const {
  const int n = rank();
  for (int c = 0; c < n; ++c) {
    Int acc = m[c * n + j];
    for (int k = 0; k < n; ++k) {
      Int a = cartan_(k, j);
      if (a == 0) continue;
      acc = checked_sub(acc, checked_mul(a, m[c * n + k]));
    }
    m[c * n + j] = acc;
  }
}

GroupElement CoxeterGroup::identity() const {
  const int n = rank();
  GroupElement e;
  e.n_ = n;
  e.action_.assign(n * n, 0);
  for (int i = 0; i < n; ++i) e.action_[i * n + i] = 1;
  e.inverse_ = e.action_;
  e.length_ = 0;
  return e;
}

GroupElement CoxeterGroup::generator(int j) const {
  if (j < 0 || j >= rank()) throw InputError("unknown node index " + std::to_string(j));
  return right_multiply(identity(), j);
}

GroupElement CoxeterGroup::make(std::vector<Int> action, std::vector<Int> inverse) const {
  GroupElement w;
  w.n_ = rank();
  w.action_ = std::move(action);
  w.inverse_ = std::move(inverse);
  w.length_ = strip_length(w, nullptr);
  return w;
}

GroupElement CoxeterGroup::right_multiply(const GroupElement& w, int j) const {
  GroupElement out = w;
  out.length_ = w.has_right_descent(j) ? w.length_ - 1 : w.length_ + 1;
  right_apply_inplace(out.action_, j);
  left_apply_inplace(out.inverse_, j);
  return out;
}

GroupElement CoxeterGroup::left_multiply(int j, const GroupElement& w) const {
  GroupElement out = w;
  out.length_ = w.has_left_descent(j) ? w.length_ - 1 : w.length_ + 1;
  left_apply_inplace(out.action_, j);
  right_apply_inplace(out.inverse_, j);
  return out;
}

namespace {

std::vector<Int> matmul(const std::vector<Int>& a, const std::vector<Int>& b, int n) {
  std::vector<Int> c(n * n, 0);
  for (int col = 0; col < n; ++col)
    for (int k = 0; k < n; ++k) {
      Int bk = b[col * n + k];
      if (bk == 0) continue;
      for (int r = 0; r < n; ++r) c[col * n + r] = checked_add(c[col * n + r], checked_mul(a[k * n + r], bk));
    }
  return c;
}

}  // namespace

GroupElement CoxeterGroup::multiply(const GroupElement& u, const GroupElement& v) const {
  if (u.rank() != rank() || v.rank() != rank()) throw InputError("multiply: element from a different group");
  return make(matmul(u.action_, v.action_, rank()), matmul(v.inverse_, u.inverse_, rank()));
}

GroupElement CoxeterGroup::inverse(const GroupElement& u) const {
  GroupElement out;
  out.n_ = u.n_;
  out.action_ = u.inverse_;
  out.inverse_ = u.action_;
  out.length_ = u.length_;
  return out;
}

GroupElement CoxeterGroup::from_word(std::span<const int> word) const {
  GroupElement w = identity();
  for (int j : word) {
    if (j < 0 || j >= rank()) throw InputError("word letter out of range");
    w = right_multiply(w, j);
  }
  return w;
}

int CoxeterGroup::strip_length(const GroupElement& w, std::vector<int>* word) const {
  std::vector<Int> m = w.action_;
  int steps = 0;
  for (;;) {
    int descent = -1;
    for (int j = 0; j < rank(); ++j) {
      bool neg = false;
      for (int r = 0; r < rank(); ++r) {
        Int x = m[j * rank() + r];
        if (x != 0) {
          neg = x < 0;
          break;
        }
      }
      if (neg) {
        descent = j;
        break;
      }
    }
    if (descent < 0) break;
    if (word) word->push_back(descent);
    right_apply_inplace(m, descent);
    if (++steps > length_cap_) throw InvariantError("length computation did not terminate; corrupted element");
  }
  return steps;
}

int CoxeterGroup::length(const GroupElement& w) const { return strip_length(w, nullptr); }

std::vector<int> CoxeterGroup::reduced_word(const GroupElement& w) const {
  std::vector<int> strip;
  (void)strip_length(w, &strip);
  std::reverse(strip.begin(), strip.end());
  return strip;
}

NodeSet CoxeterGroup::support(const GroupElement& w) const { return NodeSet::from_indices(reduced_word(w)); }

bool CoxeterGroup::bruhat_leq(const GroupElement& v0, const GroupElement& w0) const {
  GroupElement v = v0, w = w0;
  for (;;) {
    if (v.length() > w.length()) return false;
    if (v.is_identity()) return true;
    if (v.length() == w.length()) return v == w;
    int j = 0;
    while (!w.has_left_descent(j)) ++j;
    if (v.has_left_descent(j)) v = left_multiply(j, v);
    w = left_multiply(j, w);
  }
}

std::vector<GroupElement> CoxeterGroup::bruhat_lower_interval(const GroupElement& w) const {
  std::vector<GroupElement> elems{identity()};
  std::unordered_set<GroupElement, GroupElementHash> seen{identity()};
  for (int s : reduced_word(w)) {
    const std::size_t n = elems.size();
    for (std::size_t i = 0; i < n; ++i) {
      GroupElement z = right_multiply(elems[i], s);
      if (seen.insert(z).second) elems.push_back(std::move(z));
    }
  }
  sort_canonical(*this, elems);
  return elems;
}

GroupElement CoxeterGroup::min_coset_rep_right(const GroupElement& w, NodeSet j) const {
  return parabolic_factorize_right(w, j).first;
}

GroupElement CoxeterGroup::min_coset_rep_left(const GroupElement& w, NodeSet j) const {
  return parabolic_factorize_left(w, j).second;
}

std::pair<GroupElement, GroupElement> CoxeterGroup::parabolic_factorize_left(const GroupElement& w, NodeSet j) const {
  GroupElement x = identity();
  GroupElement y = w;
  for (;;) {
    int d = -1;
    for (int i : j.indices())
      if (i < rank() && y.has_left_descent(i)) {
        d = i;
        break;
      }
    if (d < 0) break;
    y = left_multiply(d, y);
    x = right_multiply(x, d);
  }
  return {std::move(x), std::move(y)};
}

std::pair<GroupElement, GroupElement> CoxeterGroup::parabolic_factorize_right(const GroupElement& w, NodeSet j) const {
  GroupElement y = w;
  GroupElement u = identity();
  for (;;) {
    int d = -1;
    for (int i : j.indices())
      if (i < rank() && y.has_right_descent(i)) {
        d = i;
        break;
      }
    if (d < 0) break;
    y = right_multiply(y, d);
    u = left_multiply(d, u);
  }
  return {std::move(y), std::move(u)};
}

void sort_canonical(const CoxeterGroup& g, std::vector<GroupElement>& elements) {
  std::vector<std::pair<std::pair<int, std::vector<int>>, std::size_t>> keys;
  keys.reserve(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i)
    keys.push_back({{elements[i].length(), g.reduced_word(elements[i])}, i});
  std::sort(keys.begin(), keys.end());
  std::vector<GroupElement> out;
  out.reserve(elements.size());
  for (auto& k : keys) out.push_back(std::move(elements[k.second]));
  elements = std::move(out);
}

Ball CoxeterGroup::enumerate_parabolic(NodeSet j, int max_length, std::size_t cap) const {
  const std::vector<int> gens = (j & all_nodes()).indices();
  Ball ball;
  std::unordered_set<GroupElement, GroupElementHash> seen;
  std::vector<GroupElement> level{identity()};
  seen.insert(identity());
  ball.elements.push_back(identity());
  for (int len = 0; max_length < 0 || len < max_length; ++len) {
    std::vector<GroupElement> next;
    for (const auto& w : level)
      for (int s : gens) {
        if (w.has_right_descent(s)) continue;
        GroupElement u = right_multiply(w, s);
        if (!seen.insert(u).second) continue;
        if (seen.size() > cap)
          throw CapExceeded("enumeration exceeded the cap of " + std::to_string(cap) + " elements");
        next.push_back(u);
        ball.elements.push_back(std::move(u));
      }
    if (next.empty()) {
      ball.saturated = true;
      break;
    }
    level = std::move(next);
  }
  if (!ball.saturated) {
    ball.saturated = std::none_of(level.begin(), level.end(), [&](const GroupElement& w) {
      return std::any_of(gens.begin(), gens.end(), [&](int s) { return !w.has_right_descent(s); });
    });
  }
  sort_canonical(*this, ball.elements);
  return ball;
}

Ball CoxeterGroup::enumerate_ball(int max_length, std::size_t cap) const {
  return enumerate_parabolic(all_nodes(), max_length, cap);
}

std::vector<Reflection> CoxeterGroup::reflections(int bound) const {
  std::vector<Reflection> out;
  if (bound < 1) return out;
  std::unordered_set<std::string> seen;
  for (const auto& w : enumerate_ball(bound - 1).elements) {
    for (int i = 0; i < rank(); ++i) {
      RootVector beta = w.image(i);
      if (!beta.is_positive()) continue;
      if (!seen.insert(beta.to_string()).second) continue;
      GroupElement t = multiply(right_multiply(w, i), inverse(w));
      out.push_back({std::move(beta), std::move(t)});
    }
  }
  std::sort(out.begin(), out.end(), [](const Reflection& a, const Reflection& b) { return a.root < b.root; });
  return out;
}

std::vector<RootVector> CoxeterGroup::positive_real_roots(int bound) const {
  std::vector<RootVector> out;
  for (auto& r : reflections(bound)) out.push_back(std::move(r.root));
  return out;
}

Reflection CoxeterGroup::reflection_from_root(const RootVector& beta_in) const {
  if (static_cast<int>(beta_in.size()) != rank()) throw InputError("root has wrong dimension");
  if (!beta_in.is_sign_coherent()) throw InputError("not a real root (mixed signs): " + beta_in.to_string());
  RootVector beta = beta_in.is_positive() ? beta_in : -beta_in;
  // Lower the height with simple reflections until a simple root remains.
  std::vector<int> path;
  RootVector cur = beta;
  for (;;) {
    if (cur.height() == 1) break;
    int chosen = -1;
    Int pairing = 0;
    for (int j = 0; j < rank(); ++j) {
      Int p = 0;
      for (int i = 0; i < rank(); ++i) p = checked_add(p, checked_mul(cur[i], cartan_(i, j)));
      if (p > 0) {
        chosen = j;
        pairing = p;
        break;
      }
    }
    if (chosen < 0) throw InputError("not a real root: " + beta.to_string());
    std::vector<Int> c = cur.coords();
    c[chosen] = checked_sub(c[chosen], pairing);
    cur = RootVector(std::move(c));
    if (!cur.is_positive()) throw InputError("not a real root: " + beta.to_string());
    path.push_back(chosen);
  }
  int simple = 0;
  while (cur[simple] == 0) ++simple;
  // beta = s_{p1} ... s_{pk} (alpha_simple), so w = s_{p1} ... s_{pk}.
  GroupElement w = from_word(path);
  GroupElement t = multiply(right_multiply(w, simple), inverse(w));
  if (w.image(simple) != beta) throw InvariantError("reflection_from_root: root reconstruction failed");
  return {std::move(beta), std::move(t)};
}

std::optional<RootVector> CoxeterGroup::reflection_root(const GroupElement& t) const {
  if (t.length() % 2 != 1) return std::nullopt;
  if (!multiply(t, t).is_identity()) return std::nullopt;
  const int n = rank();
  std::optional<RootVector> dir;
  for (int i = 0; i < n; ++i) {
    std::vector<Int> d(n);
    for (int r = 0; r < n; ++r) d[r] = checked_sub(t.entry(r, i), r == i ? 1 : 0);
    if (std::all_of(d.begin(), d.end(), [](Int x) { return x == 0; })) continue;
    Int g = 0;
    for (Int x : d) g = std::gcd(g, x);
    for (Int& x : d) x /= g;
    RootVector v(std::move(d));
    if (!v.is_sign_coherent()) return std::nullopt;
    if (v.is_negative()) v = -v;
    if (dir && *dir != v) return std::nullopt;
    dir = v;
  }
  if (!dir || t.apply(*dir) != -*dir) return std::nullopt;
  return dir;
}

std::vector<RootVector> CoxeterGroup::inversion_set(const GroupElement& w, std::optional<NodeSet> restrict_to) const {
  const std::vector<int> word = reduced_word(w);
  std::vector<RootVector> out;
  GroupElement u = identity();  // s_{ik} ... s_{i(m+1)}
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    RootVector beta = u.image(*it);
    if (!restrict_to || beta.support().subset_of(*restrict_to)) out.push_back(std::move(beta));
    u = right_multiply(u, *it);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool tits_form_positive_definite(const GeneralizedCartanMatrix& a, NodeSet j) {
  const std::vector<int> idx = j.indices();
  const std::size_t n = idx.size();
  std::vector<std::vector<double>> b(n, std::vector<double>(n));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) {
        b[p][q] = 1.0;
        continue;
      }
      auto m = a.bond_order(idx[p], idx[q]);
      b[p][q] = m ? -std::cos(std::numbers::pi / *m) : -1.0;
    }
  // Cholesky: positive pivots throughout iff positive definite.
  for (std::size_t k = 0; k < n; ++k) {
    double d = b[k][k];
    for (std::size_t s = 0; s < k; ++s) d -= b[k][s] * b[k][s];
    if (d <= 1e-12) return false;
    b[k][k] = std::sqrt(d);
    for (std::size_t r = k + 1; r < n; ++r) {
      double v = b[r][k];
      for (std::size_t s = 0; s < k; ++s) v -= b[r][s] * b[k][s];
      b[r][k] = v / b[k][k];
    }
  }
  return true;
}

GroupElement CoxeterGroup::longest_element(NodeSet j, std::size_t cap) const {
  Ball ball;
  try {
    ball = enumerate_parabolic(j, -1, cap);
  } catch (const CapExceeded&) {
    if (tits_form_positive_definite(cartan_, j))
      throw CapExceeded("parabolic subgroup is finite but larger than the cap of " + std::to_string(cap));
    throw NotFiniteError("parabolic not finite: enumeration did not saturate within " + std::to_string(cap) +
                         " elements and the Tits form is not positive definite");
  }
  return ball.elements.back();
}

std::vector<int> CoxeterGroup::minus_wK_permutation(NodeSet k, std::size_t cap) const {
  const GroupElement wk = longest_element(k, cap);
  std::vector<int> perm(rank());
  std::iota(perm.begin(), perm.end(), 0);
  for (int j : k.indices()) {
    RootVector img = -wk.image(j);
    if (img.height() != 1) throw InvariantError("-w_K does not permute the simple roots of K");
    int jp = 0;
    while (img[jp] == 0) ++jp;
    if (!k.contains(jp)) throw InvariantError("-w_K maps a K-root outside K");
    perm[j] = jp;
  }
  return perm;
}

std::vector<std::string> CoxeterGroup::word_names(const GroupElement& w) const {
  std::vector<std::string> out;
  for (int j : reduced_word(w)) out.push_back(cartan_.node(j));
  return out;
}

std::string CoxeterGroup::word_string(const GroupElement& w) const {
  if (w.is_identity()) return "e";
  std::string s;
  for (const auto& name : word_names(w)) {
    if (!s.empty()) s += ' ';
    s += name;
  }
  return s;
}

GroupElement CoxeterGroup::parse_word(std::string_view text) const {
  std::istringstream in{std::string(text)};
  std::vector<int> word;
  std::string tok;
  while (in >> tok) {
    if (tok == "e" && !cartan_.find("e")) continue;
    word.push_back(cartan_.index_of(tok));
  }
  return from_word(word);
}

GroupElement embed_word(const CoxeterGroup& from, const GroupElement& w, const CoxeterGroup& to,
                        std::span<const int> node_map) {
  if (static_cast<int>(node_map.size()) != from.rank()) throw InputError("embed_word: node map has wrong size");
  std::vector<int> word;
  for (int j : from.reduced_word(w)) word.push_back(node_map[j]);
  return to.from_word(word);
}

}  // namespace bbatlas

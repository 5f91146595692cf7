#include "bbatlas/qk.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace bbatlas {

using nlohmann::json;

namespace {

GluedDiagram make_diagram(const CoxeterGroup& base, NodeSet k, GluingMode mode, std::size_t cap) {
  if (mode == GluingMode::Tilde) return glue_tilde(base.cartan(), k);
  return glue_breve(base.cartan(), k, base.minus_wK_permutation(k, cap));
}

constexpr std::size_t kMaxListed = 25;

void note(Report& r, json violation, std::size_t& count) {
  ++count;
  if (r.violations.size() < kMaxListed) r.violations.push_back(std::move(violation));
  r.passed = false;
}

std::string pass_fail(const Report& r) { return r.passed ? "pass" : "FAIL"; }

}  // namespace

AtlasContext::AtlasContext(const GeneralizedCartanMatrix& a, NodeSet k, GluingMode mode, std::size_t ball_cap)
    : k_(k),
      cap_(ball_cap),
      base_k_(CoxeterGroup(a), k),
      diagram_(make_diagram(base_k_.group(), k, mode, ball_cap)),
      twisted_(CoxeterGroup(diagram_.matrix), diagram_.flat_nodes()) {
  if (!k.subset_of(NodeSet::all(a.rank()))) throw InputError("K is not a subset of the nodes");
}

GroupElement AtlasContext::flat(const GroupElement& w) const {
  return embed_word(base(), w, glued(), diagram_.flat_map);
}

GroupElement AtlasContext::sharp(const GroupElement& w) const {
  return embed_word(base(), w, glued(), diagram_.sharp_map);
}

const GroupElement& AtlasContext::w_K() const {
  if (!w_k_) w_k_ = base().longest_element(k_, cap_);
  return *w_k_;
}

std::vector<QKElement> AtlasContext::enumerate(int max_length) const {
  if (max_length < 0) throw InputError("max length must be non-negative");
  Ball ball = base().enumerate_ball(max_length, cap_);
  sort_canonical(base(), ball.elements);
  std::vector<QKElement> out;
  for (const auto& w : ball.elements) {
    if (!(w.right_descents() & k_).empty()) continue;
    std::vector<GroupElement> below = base().bruhat_lower_interval(w);
    sort_canonical(base(), below);
    for (auto& v : below) out.push_back({std::move(v), w});
  }
  return out;
}

std::vector<QKElement> AtlasContext::minimal_elements(int max_length) const {
  std::vector<QKElement> out;
  for (auto& p : enumerate(max_length))
    if (p.v == p.w) out.push_back(std::move(p));
  return out;
}

std::optional<GroupElement> AtlasContext::leq_witness(const QKElement& lower, const QKElement& upper) const {
  const int slack = upper.w.length() - lower.w.length();
  if (slack < 0) return std::nullopt;
  const CoxeterGroup& g = base();
  for (const auto& u : base_k_.parabolic_ball(slack)) {
    const GroupElement wu = g.multiply(lower.w, u);
    if (!g.bruhat_leq(wu, upper.w)) continue;
    const GroupElement vu = g.multiply(lower.v, u);
    if (g.bruhat_leq(upper.v, vu) && g.bruhat_leq(vu, wu)) return u;
  }
  return std::nullopt;
}

bool AtlasContext::leq(const QKElement& lower, const QKElement& upper) const {
  if (lower == upper) return true;
  return leq_witness(lower, upper).has_value();
}

GroupElement AtlasContext::nu_tilde(const QKElement& p) const {
  if (mode() != GluingMode::Tilde) throw InputError("nu_tilde needs the tilde gluing");
  return glued().multiply(flat(p.v), sharp(base().inverse(p.w)));
}

GroupElement AtlasContext::nu_breve(const QKElement& p) const {
  if (mode() != GluingMode::Breve) throw InputError("nu_breve needs the breve gluing");
  return glued().multiply(flat(base().multiply(p.w, w_K())), sharp(base().inverse(p.v)));
}

GroupElement AtlasContext::nu(const QKElement& p) const {
  return mode() == GluingMode::Tilde ? nu_tilde(p) : nu_breve(p);
}

GroupElement AtlasContext::pull(const GroupElement& x, const std::vector<std::optional<int>>& natural) const {
  std::vector<int> word;
  for (int s : glued().reduced_word(x)) {
    if (!natural.at(static_cast<std::size_t>(s))) throw InvariantError("letter outside the copy of W");
    word.push_back(*natural[static_cast<std::size_t>(s)]);
  }
  return base().from_word(word);
}

bool AtlasContext::in_flat_sharp_product(const GroupElement& c) const {
  return glued().in_parabolic(twisted_.decompose(c).y, sharp_nodes());
}

std::optional<QKElement> AtlasContext::nu_tilde_preimage(const GroupElement& c) const {
  const TwistedDecomposition d = twisted_.decompose(c);
  if (!glued().in_parabolic(d.y, sharp_nodes())) return std::nullopt;
  QKElement p{pull(d.x, diagram_.natural_flat), pull(d.y, diagram_.natural_sharp)};
  if (!(p.w.right_descents() & k_).empty() || !base().bruhat_leq(p.v, p.w)) return std::nullopt;
  if (nu_tilde(p) != c) throw InvariantError("nu_tilde preimage does not map back");
  return p;
}

std::string AtlasContext::name(const QKElement& p) const {
  return "(" + base().word_string(p.v) + "; " + base().word_string(p.w) + ")";
}

json AtlasContext::to_json(const QKElement& p) const {
  return {{"v", base().word_names(p.v)}, {"w", base().word_names(p.w)}, {"rank", rank(p)}};
}

// ---------------------------------------------------------------------------

AtlasPoset build_atlas_poset(const AtlasContext& ctx, int max_length, std::uint64_t seed, LabelSide side,
                             FinalSection final) {
  if (ctx.mode() != GluingMode::Tilde) throw InputError("the atlas poset is built from the tilde gluing");
  AtlasPoset out;
  out.side = side;
  out.final_support = final == FinalSection::Flat ? ctx.flat_nodes() : ctx.sharp_nodes();
  out.elements = ctx.enumerate(max_length);
  const std::size_t n = out.elements.size();

  std::vector<std::string> names;
  std::vector<int> rank;
  std::vector<GroupElement> images;
  for (const auto& p : out.elements) {
    names.push_back(ctx.name(p));
    rank.push_back(AtlasContext::rank(p));
    images.push_back(ctx.nu_tilde(p));
  }
  Relation rel(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      rel[i][j] = (i == j || (rank[i] < rank[j] && ctx.leq(out.elements[i], out.elements[j]))) ? 1 : 0;
  FinitePoset q(names, std::move(rel), rank);

  const auto roots = reflection_labels(ctx.glued(), q, images, side);
  std::vector<RootVector> label_roots;
  for (const auto& [edge, beta] : roots) label_roots.push_back(beta);
  out.order = build_reflection_order(std::move(label_roots), out.final_support, seed);
  out.minimal = q.minimal_elements();
  auto [hat, labels] = augment_zero_hat(q, out.minimal, Label{out.order.bottom_key(), kBottomLabel},
                                        label_edges_by_reflection(roots, out.order));
  out.poset = std::move(hat);
  out.labels = std::move(labels);
  out.bottom = n;
  return out;
}

Report verify_embeddings(const AtlasContext& ctx, int max_length) {
  Report r("embeddings");
  std::size_t count = 0;
  Ball ball = ctx.base().enumerate_ball(max_length, ctx.ball_cap());
  const auto& g = ctx.glued();
  for (const auto& u : ball.elements) {
    const GroupElement uf = ctx.flat(u), us = ctx.sharp(u);
    if (uf.length() != u.length() || us.length() != u.length())
      note(r, {{"element", ctx.base().word_names(u)}, {"reason", "length not preserved"}}, count);
    if (ctx.mode() == GluingMode::Tilde && ctx.base().in_parabolic(u, ctx.K()) && uf != us)
      note(r, {{"element", ctx.base().word_names(u)}, {"reason", "flat and sharp differ on W_K"}}, count);
  }
  // Homomorphism spot check on pairs of short elements.
  const int half = std::max(1, max_length / 2);
  std::vector<GroupElement> small;
  for (const auto& u : ball.elements)
    if (u.length() <= half) small.push_back(u);
  for (const auto& u : small)
    for (const auto& v : small) {
      const GroupElement uv = ctx.base().multiply(u, v);
      if (ctx.flat(uv) != g.multiply(ctx.flat(u), ctx.flat(v)) || ctx.sharp(uv) != g.multiply(ctx.sharp(u), ctx.sharp(v)))
        note(r, {{"pair", {ctx.base().word_names(u), ctx.base().word_names(v)}}, {"reason", "not multiplicative"}},
             count);
    }
  r.details = {{"elements", ball.elements.size()}, {"violation_count", count}};
  r.summary = "embeddings: " + std::to_string(ball.elements.size()) + " elements, " + std::to_string(count) +
              " violations: " + pass_fail(r);
  return r;
}

Report verify_qk_order(const AtlasContext& ctx, int max_length) {
  Report r("qk-order");
  std::size_t count = 0;
  const auto q = ctx.enumerate(max_length);
  const std::size_t n = q.size();
  std::vector<std::vector<char>> rel(n, std::vector<char>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rel[i][j] = ctx.leq(q[i], q[j]) ? 1 : 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!rel[i][i]) note(r, {{"element", ctx.name(q[i])}, {"reason", "not reflexive"}}, count);
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && rel[i][j] && rel[j][i])
        note(r, {{"pair", {ctx.name(q[i]), ctx.name(q[j])}}, {"reason", "not antisymmetric"}}, count);
      if (!rel[i][j]) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (rel[j][k] && !rel[i][k])
          note(r, {{"triple", {ctx.name(q[i]), ctx.name(q[j]), ctx.name(q[k])}}, {"reason", "not transitive"}}, count);
    }
  }
  // Minimal elements are exactly the (r, r).
  std::size_t minimal = 0, diagonal = 0;
  for (std::size_t j = 0; j < n; ++j) {
    bool is_min = true;
    for (std::size_t i = 0; i < n && is_min; ++i) is_min = i == j || !rel[i][j];
    minimal += is_min ? 1 : 0;
    diagonal += q[j].v == q[j].w ? 1 : 0;
    if (is_min != (q[j].v == q[j].w))
      note(r, {{"element", ctx.name(q[j])}, {"reason", "minimality differs from v = w"}}, count);
  }
  r.details = {{"size", n}, {"minimal", minimal}, {"diagonal", diagonal}, {"violation_count", count}};
  r.summary = "qk order: " + std::to_string(n) + " elements, " + std::to_string(minimal) + " minimal: " + pass_fail(r);
  return r;
}

Report verify_iso_tilde(const AtlasContext& ctx, int max_length) {
  Report r("iso");
  std::size_t count = 0;
  const auto q = ctx.enumerate(max_length);
  std::vector<GroupElement> images;
  for (const auto& p : q) images.push_back(ctx.nu_tilde(p));
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> seen;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (auto [it, fresh] = seen.emplace(images[i], i); !fresh)
      note(r, {{"pair", {ctx.name(q[it->second]), ctx.name(q[i])}}, {"reason", "nu_tilde not injective"}}, count);
  std::size_t relations = 0;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) {
      const bool lhs = ctx.leq(q[i], q[j]);
      const bool rhs = ctx.twisted().jleq(images[i], images[j]);
      relations += lhs ? 1 : 0;
      if (lhs != rhs)
        note(r, {{"lower", ctx.name(q[i])}, {"upper", ctx.name(q[j])}, {"qk_leq", lhs}, {"jleq", rhs}}, count);
    }
  r.details = {{"size", q.size()}, {"relations", relations}, {"violation_count", count}};
  r.summary = "iso: " + std::to_string(q.size()) + " elements, " + std::to_string(relations) + " relations, " +
              std::to_string(count) + " violations: " + pass_fail(r);
  return r;
}

Report verify_image_tilde(const AtlasContext& ctx, int max_length) {
  Report r("image");
  std::size_t count = 0;
  const CoxeterGroup& g = ctx.glued();
  const NodeSet flat = ctx.flat_nodes();

  // x in W~_{I flat}, y in W~^{I flat}, both of length <= L. The y side is
  // not restricted to W~_{I sharp}, so product membership is exercised too.
  const auto xs = ctx.twisted().parabolic_ball(max_length);
  std::vector<GroupElement> ys;
  for (auto& y : g.enumerate_ball(max_length, ctx.ball_cap()).elements)
    if ((y.right_descents() & flat).empty()) ys.push_back(std::move(y));

  std::vector<GroupElement> bases;  // r^flat (r^{-1})^sharp
  for (const auto& p : ctx.minimal_elements(max_length)) bases.push_back(ctx.nu_tilde(p));

  std::size_t window = 0, in_image = 0, in_product = 0;
  for (const auto& y : ys) {
    const bool product = g.in_parabolic(y, ctx.sharp_nodes());  // decompose(x y^{-1}).y == y
    const GroupElement y_inv = g.inverse(y);
    for (const auto& x : xs) {
      ++window;
      const GroupElement c = g.multiply(x, y_inv);
      const bool image = ctx.nu_tilde_preimage(c).has_value();
      bool predicted = false;
      if (product) {
        ++in_product;
        for (const auto& b : bases)
          if (ctx.twisted().jleq(b, c)) {
            predicted = true;
            break;
          }
      }
      in_image += image ? 1 : 0;
      if (image != predicted)
        note(r, {{"element", g.word_names(c)}, {"in_image", image}, {"characterized", predicted}}, count);
    }
  }
  r.details = {{"window", window}, {"in_product", in_product}, {"in_image", in_image}, {"violation_count", count}};
  r.summary = "image: window " + std::to_string(window) + ", image " + std::to_string(in_image) + ", " +
              std::to_string(count) + " violations: " + pass_fail(r);
  return r;
}

Report verify_convexity_tilde(const AtlasContext& ctx, int max_length) {
  Report r("convex");
  std::size_t count = 0;
  const CoxeterGroup& g = ctx.glued();
  const auto q = ctx.enumerate(max_length);
  std::vector<GroupElement> images;
  for (const auto& p : q) images.push_back(ctx.nu_tilde(p));

  std::size_t intervals = 0, checked = 0, covers = 0;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (i == j || !ctx.twisted().jleq(images[i], images[j])) continue;
      ++intervals;
      const auto interval = ctx.twisted().jinterval(images[i], images[j]);
      for (const auto& c : interval) {
        ++checked;
        if (!ctx.nu_tilde_preimage(c))
          note(r, {{"lower", ctx.name(q[i])}, {"upper", ctx.name(q[j])}, {"outside", g.word_names(c)}}, count);
      }
      for (auto [lo, hi] : ctx.twisted().jcovers(interval)) {
        ++covers;
        if (ctx.twisted().jlength(interval[hi]) - ctx.twisted().jlength(interval[lo]) != 1)
          note(r,
               {{"cover", {g.word_names(interval[lo]), g.word_names(interval[hi])}}, {"reason", "rank difference != 1"}},
               count);
      }
    }
  r.details = {{"intervals", intervals}, {"elements_checked", checked}, {"covers_checked", covers},
               {"violation_count", count}};
  r.summary = "convex: " + std::to_string(intervals) + " intervals, " + std::to_string(count) +
              " violations: " + pass_fail(r);
  return r;
}

Report verify_iso_breve(const AtlasContext& ctx, int max_length) {
  Report r("breve");
  const auto q = ctx.enumerate(max_length);
  std::vector<GroupElement> images;
  for (const auto& p : q) images.push_back(ctx.nu_breve(p));
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> seen;
  bool injective = true;
  for (std::size_t i = 0; i < q.size(); ++i) injective = seen.emplace(images[i], i).second && injective;

  std::size_t reversing_misses = 0, preserving_misses = 0;
  json reversing_witness, preserving_witness;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) {
      const bool lhs = ctx.leq(q[i], q[j]);
      if (lhs != ctx.twisted().jleq(images[j], images[i]) && reversing_misses++ == 0)
        reversing_witness = {{"lower", ctx.name(q[i])}, {"upper", ctx.name(q[j])}, {"qk_leq", lhs}};
      if (lhs != ctx.twisted().jleq(images[i], images[j]) && preserving_misses++ == 0)
        preserving_witness = {{"lower", ctx.name(q[i])}, {"upper", ctx.name(q[j])}, {"qk_leq", lhs}};
    }
  std::string direction = "neither";
  if (reversing_misses == 0 && preserving_misses == 0) direction = "both";
  else if (reversing_misses == 0) direction = "reversing";
  else if (preserving_misses == 0) direction = "preserving";

  r.passed = injective && direction != "neither";
  if (!injective) r.violations.push_back({{"reason", "nu_breve not injective"}});
  if (direction == "neither") r.violations.push_back({{"reversing", reversing_witness}, {"preserving", preserving_witness}});
  r.details = {{"direction", direction},
               {"size", q.size()},
               {"injective", injective},
               {"reversing_mismatches", reversing_misses},
               {"preserving_mismatches", preserving_misses}};
  r.summary = "breve: direction " + direction + " on " + std::to_string(q.size()) + " elements: " + pass_fail(r);
  return r;
}

Report verify_thin(const AtlasPoset& p) {
  Report r("thin");
  const ThinReport t = is_thin(p.poset);
  std::size_t above_bottom = 0;
  for (std::size_t j = 0; j < p.poset.size(); ++j)
    if (p.poset.rank() && (*p.poset.rank())[j] == 1) ++above_bottom;
  if (!t.thin)
    r.fail({{"lower", p.poset.name(t.witness->first)},
            {"upper", p.poset.name(t.witness->second)},
            {"size", t.witness_size}});
  r.details = {{"size", p.poset.size()}, {"length_two_intervals", t.length_two_intervals},
               {"rank_two_above_bottom", above_bottom}};
  r.summary = "thin: " + std::to_string(t.length_two_intervals) + " length-2 intervals: " + pass_fail(r);
  return r;
}

Report verify_graded(const AtlasPoset& p) {
  Report r("graded");
  std::size_t count = 0;
  const auto& rank = *p.poset.rank();
  for (auto [lo, hi] : p.poset.covers())
    if (rank[hi] - rank[lo] != 1)
      note(r, {{"cover", {p.poset.name(lo), p.poset.name(hi)}}, {"ranks", {rank[lo], rank[hi]}}}, count);
  const PurityReport pure = is_pure(p.poset);
  if (!pure.pure)
    note(r, {{"interval", {p.poset.name(pure.witness->first), p.poset.name(pure.witness->second)}},
             {"reason", "not pure"}},
         count);
  r.details = {{"covers", p.poset.covers().size()}, {"violation_count", count}};
  r.summary = "graded: " + std::to_string(p.poset.covers().size()) + " covers: " + pass_fail(r);
  return r;
}

Report verify_el(const AtlasPoset& p, const AtlasContext& ctx, ChainReading reading, std::size_t chain_cap) {
  (void)ctx;
  Report r("el");
  const ELReport el = el_check(p.poset, p.labels, reading, chain_cap);
  for (std::size_t k = 0; k < el.violations.size() && k < kMaxListed; ++k)
    r.violations.push_back(to_json(el.violations[k], p.poset));
  r.passed = el.passed;
  r.details = {{"intervals", el.intervals_checked},
               {"violation_count", el.violations.size()},
               {"reading", reading == ChainReading::TopDown ? "top-down" : "bottom-up"},
               {"label_side", p.side == LabelSide::Right ? "right" : "left"},
               {"order_seed", p.order.seed},
               {"order_attempts", p.order.attempts},
               {"labels", p.order.order.size()},
               {"final_section_begin", p.order.final_begin}};
  r.summary = "el: " + std::to_string(el.intervals_checked) + " intervals, " + std::to_string(el.violations.size()) +
              " violations: " + pass_fail(r);
  return r;
}

Report scan_bottom_chains(const AtlasPoset& p, const AtlasContext& ctx, ChainReading reading, std::size_t chain_cap) {
  Report r("bottom-chains");
  std::size_t count = 0, avoiding = 0, at_min_rep = 0, at_w = 0;
  const long bottom_key = p.order.bottom_key();
  const bool flat_final = p.final_support == ctx.flat_nodes();
  for (std::size_t i = 0; i < p.elements.size(); ++i) {
    Chain c = lex_least_chain(p.poset, p.labels, p.bottom, i, reading, chain_cap);
    if (reading == ChainReading::BottomUp) {
      std::reverse(c.elements.begin(), c.elements.end());
      std::reverse(c.keys.begin(), c.keys.end());
    }
    // c now reads (v, w) = c0 > c1 > ... > bottom.
    bool avoids = c.keys.back() == bottom_key;
    for (std::size_t k = 0; k + 1 < c.keys.size(); ++k) avoids = avoids && c.keys[k] < bottom_key;
    const QKElement& top = p.elements[i];
    const QKElement& last = p.elements[c.elements[c.elements.size() - 2]];
    const GroupElement rep = ctx.base().min_coset_rep_right(top.v, ctx.K());
    const bool ends_rep = last == QKElement{rep, rep};
    const bool ends_w = last == QKElement{top.w, top.w};
    avoiding += avoids ? 1 : 0;
    at_min_rep += ends_rep ? 1 : 0;
    at_w += ends_w ? 1 : 0;
    if (!avoids || !(flat_final ? ends_rep : ends_w)) {
      json names = json::array();
      for (std::size_t e : c.elements) names.push_back(p.poset.name(e));
      note(r, {{"element", ctx.name(top)}, {"avoids_final_section", avoids}, {"chain", names}}, count);
    }
  }
  const std::size_t n = p.elements.size();
  r.details = {{"chains", n},
               {"avoiding_final_section", avoiding},
               {"ending_at_min_v_WK", at_min_rep},
               {"ending_at_w", at_w},
               {"expected_end", flat_final ? "(r, r), r = min(v W_K)" : "(w, w)"},
               {"violation_count", count}};
  r.summary = "bottom chains: " + std::to_string(avoiding) + "/" + std::to_string(n) +
              " avoid the final section; end at (min(v W_K), .) " + std::to_string(at_min_rep) + "/" +
              std::to_string(n) + ", at (w, w) " + std::to_string(at_w) + "/" + std::to_string(n);
  return r;
}

}  // namespace bbatlas

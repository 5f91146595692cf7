#include "bbatlas/checks.hpp"

#include <algorithm>

#include "bbatlas/gluing_table.hpp"
#include "bbatlas/twisted_order.hpp"

namespace bbatlas {

namespace {

std::string subset_name(const CoxeterGroup& g, NodeSet j) {
  std::string s = "{";
  for (int i : j.indices()) s += (s.size() > 1 ? "," : "") + g.cartan().node(i);
  return s + "}";
}

// Finiteness probes stop early: desk-scale finite parabolics are far smaller.
constexpr std::size_t kProbeCap = 100'000;

std::optional<GroupElement> finite_longest(const CoxeterGroup& g, NodeSet j, std::size_t cap) {
  try {
    return g.longest_element(j, std::min(cap, kProbeCap));
  } catch (const NotFiniteError&) {
    return std::nullopt;
  }
}

void limit(Report& r, nlohmann::json v, std::size_t& count) {
  ++count;
  if (count <= 25) r.fail(std::move(v));
  r.passed = false;
}

}  // namespace

Report verify_glue_table() {
  Report r("glue-table");
  int rows = 0, breve_rows = 0;
  for (const auto& row : gluing_table()) {
    ++rows;
    if (!isomorphic(shape_of(glue_tilde(row.cartan, row.k)), row.tilde))
      r.fail({{"row", row.label}, {"gluing", "tilde"}});
    CoxeterGroup w(row.cartan);
    if (row.breve) {
      ++breve_rows;
      if (!isomorphic(shape_of(glue_breve(row.cartan, row.k, w.minus_wK_permutation(row.k))), *row.breve))
        r.fail({{"row", row.label}, {"gluing", "breve"}});
    } else {
      bool refused = false;
      try {
        (void)w.minus_wK_permutation(row.k, 10'000);
      } catch (const NotFiniteError&) {
        refused = true;
      }
      if (!refused) r.fail({{"row", row.label}, {"gluing", "breve"}, {"reason", "expected W_K infinite"}});
    }
  }
  r.details = {{"rows", rows}, {"breve_rows", breve_rows}};
  r.summary = std::to_string(rows) + " rows, " + std::to_string(r.violations.size()) + " mismatches";
  return r;
}

Report verify_twisted_oracles(const CoxeterGroup& g, NodeSet j, int ball, int sub_window, std::size_t cap) {
  Report r("oracles");
  const TwistedContext ctx(g, j);
  const auto rel = jleq_closure_oracle(ctx, ball, cap);
  std::vector<std::size_t> window;
  for (std::size_t i = 0; i < rel.ball.size(); ++i)
    if (rel.ball[i].length() <= sub_window) window.push_back(i);

  std::size_t closure_bad = 0, translation_bad = 0, pairs = 0;
  for (std::size_t a : window)
    for (std::size_t b : window) {
      ++pairs;
      if (ctx.jleq(rel.ball[a], rel.ball[b]) != (rel.leq[a][b] != 0))
        limit(r,
              {{"oracle", "closure"}, {"a", g.word_string(rel.ball[a])}, {"b", g.word_string(rel.ball[b])},
               {"closure", rel.leq[a][b] != 0}},
              closure_bad);
    }

  const auto wj = finite_longest(g, j, cap);
  if (wj) {
    for (std::size_t a : window) {
      const auto ta = g.multiply(*wj, rel.ball[a]);
      for (std::size_t b : window) {
        const bool expected = g.bruhat_leq(ta, g.multiply(*wj, rel.ball[b]));
        if (ctx.jleq(rel.ball[a], rel.ball[b]) != expected)
          limit(r,
                {{"oracle", "translation"}, {"a", g.word_string(rel.ball[a])}, {"b", g.word_string(rel.ball[b])},
                 {"expected", expected}},
                translation_bad);
      }
    }
  }
  r.details = {{"J", subset_name(g, j)},
               {"ball", ball},
               {"sub_window", sub_window},
               {"pairs", pairs},
               {"closure_mismatches", closure_bad},
               {"translation_checked", wj.has_value()},
               {"translation_mismatches", translation_bad}};
  r.summary = "J=" + subset_name(g, j) + ": " + std::to_string(pairs) + " pairs, " +
              std::to_string(closure_bad + translation_bad) + " mismatches";
  return r;
}

Report verify_twisted_length(const CoxeterGroup& g, NodeSet j, int ball, std::size_t cap) {
  Report r("jlength");
  const TwistedContext ctx(g, j);
  const auto elements = g.enumerate_ball(ball, cap);
  const bool full_finite = j == g.all_nodes() && finite_longest(g, j, cap).has_value();
  std::size_t bad = 0;
  for (const auto& w : elements.elements) {
    const int jl = ctx.jlength(w);
    const int inv = ctx.jlength_by_inversions(w);
    if (jl != inv) limit(r, {{"w", g.word_string(w)}, {"jlength", jl}, {"by_inversions", inv}}, bad);
    if (j.empty() && jl != w.length()) limit(r, {{"w", g.word_string(w)}, {"jlength", jl}, {"expected", w.length()}}, bad);
    if (full_finite && jl != -w.length())
      limit(r, {{"w", g.word_string(w)}, {"jlength", jl}, {"expected", -w.length()}}, bad);
  }
  r.details = {{"J", subset_name(g, j)},
               {"ball", ball},
               {"elements", elements.elements.size()},
               {"degenerate", j.empty() ? "empty" : (full_finite ? "full" : "none")},
               {"mismatches", bad}};
  r.summary = "J=" + subset_name(g, j) + ": " + std::to_string(elements.elements.size()) + " elements, " +
              std::to_string(bad) + " mismatches";
  return r;
}

}  // namespace bbatlas

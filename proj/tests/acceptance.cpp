// Acceptance run: one PASS/FAIL line per criterion, with the evidence
// behind each line underneath it.
//
//   acceptance [--expect-fail 7,...]
//
// Exit status is 0 when every criterion passes, or, with --expect-fail,
// when the failing criteria are exactly the listed ones.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bbatlas/catalog.hpp"
#include "bbatlas/checks.hpp"
#include "bbatlas/qk.hpp"

using namespace bbatlas;

namespace {

struct Outcome {
  bool passed = true;
  std::vector<std::string> lines;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      lines.push_back("violation: " + what);
    }
  }
  void info(const std::string& s) { lines.push_back(s); }
};

struct Config {
  std::string group;
  NodeSet k;
  int window;
};

std::vector<NodeSet> subsets(int n) {
  std::vector<NodeSet> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    NodeSet s;
    for (int i = 0; i < n; ++i)
      if ((bits >> i) & 1U) s.insert(i);
    out.push_back(s);
  }
  return out;
}

std::string set_name(NodeSet s) {
  std::string out = "{";
  for (int i : s.indices()) out += (out.size() > 1 ? "," : "") + std::to_string(i + 1);
  return out + "}";
}

std::string label(const Config& c) { return c.group + " K=" + set_name(c.k); }

GeneralizedCartanMatrix cartan(const std::string& name) { return *catalog_cartan(name); }

// A2, A3, B2 with every K at L = 4; affine A1 with every K at L = 5.
std::vector<Config> atlas_configs() {
  std::vector<Config> out;
  for (auto [name, window] : {std::pair{"A2", 4}, {"A3", 4}, {"B2", 4}, {"affineA1", 5}})
    for (NodeSet k : subsets(cartan(name).rank())) out.push_back({name, k, window});
  return out;
}

bool finite_parabolic(const GeneralizedCartanMatrix& a, NodeSet k) {
  try {
    (void)CoxeterGroup(a).longest_element(k, 100'000);
    return true;
  } catch (const NotFiniteError&) {
    return false;
  }
}

Outcome criterion_glue_table() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const Report r = verify_glue_table();
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& v : r.violations) o.check(false, v.dump());
  o.check(r.passed, "glue-table report");
  o.check(seconds < 1.0, "took " + std::to_string(seconds) + " s");
  o.info(r.summary);
  return o;
}

struct Ball {
  const char* group;
  int radius;
};

const std::vector<Ball> kOracleBalls = {{"A2", 6}, {"B2", 6}, {"A1xA1", 6}, {"A3", 6}, {"affineA1", 8}};

Outcome criterion_oracles() {
  Outcome o;
  std::size_t pairs = 0, translated = 0;
  for (auto [name, radius] : kOracleBalls) {
    const CoxeterGroup g(cartan(name));
    for (NodeSet j : subsets(g.rank())) {
      const Report r = verify_twisted_oracles(g, j, radius, radius - 2);
      o.check(r.passed, std::string(name) + " " + r.summary);
      pairs += r.details["pairs"].get<std::size_t>();
      if (r.details["translation_checked"].get<bool>()) ++translated;
    }
  }
  o.info(std::to_string(pairs) + " pairs against the closure; translation test on " + std::to_string(translated) +
         " (W, J) with W_J finite");
  return o;
}

Outcome criterion_jlength() {
  Outcome o;
  std::size_t elements = 0;
  for (auto [name, radius] : kOracleBalls) {
    const CoxeterGroup g(cartan(name));
    for (NodeSet j : subsets(g.rank())) {
      const Report r = verify_twisted_length(g, j, radius);
      o.check(r.passed, std::string(name) + " " + r.summary);
      elements += r.details["elements"].get<std::size_t>();
    }
  }
  o.info(std::to_string(elements) + " (element, J) pairs compared");
  return o;
}

Outcome per_config(const std::string& what, const std::function<Report(const AtlasContext&, const Config&)>& run) {
  Outcome o;
  std::size_t count = 0;
  for (const auto& c : atlas_configs()) {
    const AtlasContext ctx(cartan(c.group), c.k);
    const Report r = run(ctx, c);
    o.check(r.passed, label(c) + ": " + r.summary);
    ++count;
  }
  o.info(what + ": " + std::to_string(count) + " configurations");
  return o;
}

Outcome criterion_el() {
  Outcome o;
  std::size_t literal_fail = 0, right_flat_fail = 0, mirrored_fail = 0, configs = 0;
  std::size_t avoid = 0, chains = 0, ends_min = 0, ends_w = 0, avoid_sharp = 0;
  for (const auto& c : atlas_configs()) {
    ++configs;
    const AtlasContext ctx(cartan(c.group), c.k);
    auto run = [&](LabelSide side, FinalSection final, Report* scan) {
      try {
        const AtlasPoset p = build_atlas_poset(ctx, c.window, kDefaultSeed, side, final);
        if (scan) *scan = scan_bottom_chains(p, ctx);
        return verify_el(p, ctx);
      } catch (const ReflectionOrderError& e) {
        Report r("el");
        r.fail({{"reason", e.what()}});
        r.summary = std::string("no validated reflection order: ") + e.what();
        return r;
      }
    };
    Report scan;
    const Report literal = run(LabelSide::Left, FinalSection::Flat, &scan);
    if (!literal.passed) {
      ++literal_fail;
      o.check(false, label(c) + " (labels upper*lower^-1, flat final): " + literal.summary);
    }
    chains += scan.details.value("chains", std::size_t{0});
    avoid += scan.details.value("avoiding_final_section", std::size_t{0});
    ends_min += scan.details.value("ending_at_min_v_WK", std::size_t{0});
    if (!run(LabelSide::Right, FinalSection::Flat, nullptr).passed) ++right_flat_fail;
    Report mirrored_scan;
    if (!run(LabelSide::Right, FinalSection::Sharp, &mirrored_scan).passed) ++mirrored_fail;
    avoid_sharp += mirrored_scan.details.value("avoiding_final_section", std::size_t{0});
    ends_w += mirrored_scan.details.value("ending_at_w", std::size_t{0});
  }
  const auto n = std::to_string(configs);
  o.info("flat reflections final, labels upper*lower^-1: EL fails on " + std::to_string(literal_fail) + "/" + n +
         " configurations");
  o.info("flat reflections final, labels lower^-1*upper: EL fails on " + std::to_string(right_flat_fail) + "/" + n +
         " configurations");
  o.info("sharp reflections final, labels lower^-1*upper (mirrored construction): EL fails on " +
         std::to_string(mirrored_fail) + "/" + n + " configurations");
  o.info("bottom-chain scan, flat final: " + std::to_string(avoid) + "/" + std::to_string(chains) +
         " lex-least chains avoid flat labels, " + std::to_string(ends_min) + "/" + std::to_string(chains) +
         " end (min(v W_K), .) > 0hat");
  o.info("bottom-chain scan, mirrored: " + std::to_string(avoid_sharp) + "/" + std::to_string(chains) +
         " avoid sharp labels, " + std::to_string(ends_w) + "/" + std::to_string(chains) +
         " lex-least chains end (w, w) > 0hat");
  return o;
}

Outcome criterion_cardinality() {
  Outcome o;
  {
    const AtlasContext ctx(cartan("A2"), NodeSet{1});
    const auto q = ctx.enumerate(3);
    o.check(q.size() == 7, "|Q_K| for A2, K={2} is " + std::to_string(q.size()));
    o.info("|Q_K| for A2, K={2}: " + std::to_string(q.size()));
  }
  std::size_t total = 0;
  for (const auto& c : atlas_configs()) {
    const AtlasContext ctx(cartan(c.group), c.k);
    std::size_t reps = 0;
    for (const auto& w : ctx.base().enumerate_ball(c.window).elements)
      if ((w.right_descents() & c.k).empty()) ++reps;
    const auto minimal = ctx.minimal_elements(c.window).size();
    o.check(minimal == reps, label(c) + ": " + std::to_string(minimal) + " minimal elements, " +
                                 std::to_string(reps) + " minimal coset representatives");
    total += minimal;
  }
  o.info("minimal elements = W^K in the ball on every configuration (" + std::to_string(total) + " in all)");
  return o;
}

Outcome criterion_graded() {
  Outcome o;
  std::size_t covers = 0, wcovers = 0;
  for (const auto& c : atlas_configs()) {
    const AtlasContext ctx(cartan(c.group), c.k);
    const AtlasPoset p = build_atlas_poset(ctx, c.window);
    const Report r = verify_graded(p);
    o.check(r.passed, label(c) + ": " + r.summary);
    covers += p.poset.covers().size();

    const auto& tw = ctx.twisted();
    std::vector<GroupElement> images;
    for (const auto& e : p.elements) images.push_back(ctx.nu_tilde(e));
    for (const auto& a : images)
      for (const auto& b : images) {
        if (a == b || !tw.jleq(a, b)) continue;
        const auto interval = tw.jinterval(a, b);
        for (auto [lo, hi] : tw.jcovers(interval)) {
          ++wcovers;
          o.check(tw.jlength(interval[hi]) - tw.jlength(interval[lo]) == 1,
                  label(c) + ": cover in the glued group with rank difference != 1");
        }
      }
  }
  o.info(std::to_string(covers) + " Q-hat_K covers, " + std::to_string(wcovers) + " twisted-interval covers");
  return o;
}

Outcome criterion_breve() {
  Outcome o;
  std::set<std::string> determined;
  std::size_t degenerate = 0, skipped = 0;
  for (const auto& c : atlas_configs()) {
    const auto a = cartan(c.group);
    if (!finite_parabolic(a, c.k)) {
      ++skipped;
      continue;
    }
    const AtlasContext ctx(a, c.k, GluingMode::Breve);
    const Report r = verify_iso_breve(ctx, c.window);
    const auto dir = r.details["direction"].get<std::string>();
    o.check(r.passed, label(c) + ": " + r.summary);
    if (dir == "both") ++degenerate;
    else determined.insert(dir);
  }
  o.check(determined.size() == 1, "directions found: " + std::to_string(determined.size()));
  std::string dirs;
  for (const auto& d : determined) dirs += (dirs.empty() ? "" : ", ") + d;
  o.info("direction: " + dirs + "; " + std::to_string(degenerate) + " configurations where both hold; " +
         std::to_string(skipped) + " with W_K infinite skipped");
  return o;
}

std::set<int> parse_ids(const std::string& csv) {
  std::set<int> out;
  std::stringstream in(csv);
  for (std::string tok; std::getline(in, tok, ',');)
    if (!tok.empty()) out.insert(std::stoi(tok));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--expect-fail" && i + 1 < argc) expected = parse_ids(argv[++i]);
    else {
      std::cerr << "usage: acceptance [--expect-fail ids]\n";
      return 2;
    }
  }

  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "gluing table reproduction", criterion_glue_table},
      {2, "twisted-order oracle equivalence", criterion_oracles},
      {3, "twisted length consistency", criterion_jlength},
      {4, "atlas isomorphism",
       [] { return per_config("iso", [](const AtlasContext& ctx, const Config& c) { return verify_iso_tilde(ctx, c.window); }); }},
      {5, "image characterization and convexity",
       [] {
         Outcome image =
             per_config("image", [](const AtlasContext& ctx, const Config& c) { return verify_image_tilde(ctx, c.window); });
         Outcome convex =
             per_config("convex", [](const AtlasContext& ctx, const Config& c) { return verify_convexity_tilde(ctx, c.window); });
         image.passed = image.passed && convex.passed;
         image.lines.insert(image.lines.end(), convex.lines.begin(), convex.lines.end());
         return image;
       }},
      {6, "thinness of Q-hat_K",
       [] {
         return per_config("thin", [](const AtlasContext& ctx, const Config& c) {
           return verify_thin(build_atlas_poset(ctx, c.window));
         });
       }},
      {7, "EL-shellability with the flat reflections final", criterion_el},
      {8, "cardinality spot checks", criterion_cardinality},
      {9, "gradedness", criterion_graded},
      {10, "breve direction", criterion_breve},
  };

  const auto start = std::chrono::steady_clock::now();
  std::set<int> failed;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.lines.push_back(std::string("error: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.passed) failed.insert(c.id);
    std::printf("%s %d %s (%.2f s)\n", o.passed ? "PASS" : "FAIL", c.id, c.title, seconds);
    for (const auto& line : o.lines) std::printf("    %s\n", line.c_str());
    std::fflush(stdout);
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%zu/%zu criteria pass (%.1f s)\n", criteria.size() - failed.size(), criteria.size(), total);
  if (!expected.empty()) {
    std::printf("expected failures: ");
    for (int id : expected) std::printf("%d ", id);
    std::printf("\n");
    return failed == expected ? 0 : 1;
  }
  return failed.empty() ? 0 : 1;
}

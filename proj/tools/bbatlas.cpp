// bbatlas: command-line front end for gluing, enumeration, twisted-order
// queries, Q_K construction and the verification suites.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "bbatlas/checks.hpp"
#include "bbatlas/gluing_table.hpp"
#include "bbatlas/io.hpp"
#include "bbatlas/qk.hpp"

namespace {

using namespace bbatlas;
using nlohmann::json;

enum Exit { kPass = 0, kCheckFailed = 1, kUsage = 2, kCap = 3 };

const std::set<std::string> kChecks = {"iso", "image", "convex", "thin", "el", "oracles", "breve", "glue-table"};

struct RunConfig {
  std::string group = "A2";
  std::optional<std::string> k;
  std::string mode = "tilde";
  int max_length = 4;
  std::vector<std::string> checks;
  std::string out;
  std::uint64_t seed = kDefaultSeed;
  std::size_t ball_cap = kDefaultBallCap;
  std::size_t chain_cap = kDefaultChainCap;
  std::string labels = "right";
  std::string final_section = "sharp";
  bool all_k = false;
  std::string format = "json";
  bool ascii = false;

  // order queries
  std::string query;
  std::string j;
  std::string a;
  std::string b;
};

struct Loaded {
  GroupDefinition def;
  NodeSet k;
};

Loaded load(const RunConfig& c) {
  Loaded l{load_group(c.group), {}};
  const auto names = c.k ? split_names(*c.k) : l.def.k;
  l.k = node_set(l.def.cartan, names);
  return l;
}

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

json names_of(const GeneralizedCartanMatrix& a, NodeSet s) {
  json out = json::array();
  for (int i : s.indices()) out.push_back(a.node(i));
  return out;
}

/// Writes to --out when given (a directory gets `<stem>.<ext>`), else stdout.
void emit(const RunConfig& c, const std::string& stem, const std::string& text, const std::string& ext = "json") {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::path p(c.out);
  if (std::filesystem::is_directory(p) || !p.has_extension()) p /= stem + "." + ext;
  write_text(p, text);
  std::cerr << "wrote " << p.string() << "\n";
}

LabelSide label_side(const RunConfig& c) { return c.labels == "left" ? LabelSide::Left : LabelSide::Right; }
FinalSection final_section(const RunConfig& c) {
  return c.final_section == "flat" ? FinalSection::Flat : FinalSection::Sharp;
}

int cmd_glue(const RunConfig& c) {
  const auto l = load(c);
  const GluingMode mode = parse_gluing_mode(c.mode);
  const CoxeterGroup w(l.def.cartan);
  const GluedDiagram d = mode == GluingMode::Tilde
                             ? glue_tilde(l.def.cartan, l.k)
                             : glue_breve(l.def.cartan, l.k, w.minus_wK_permutation(l.k, c.ball_cap));
  const std::string picture = render(shape_of(d));
  if (c.ascii) {
    std::cout << picture;
    return kPass;
  }
  json j = glued_to_json(l.def.cartan, l.k, d, l.def.name + "-" + std::string(to_string(mode)));
  j["ascii"] = picture;
  emit(c, "glued", dump(j));
  return kPass;
}

int cmd_enumerate(const RunConfig& c) {
  const auto def = load_group(c.group);
  const CoxeterGroup w(def.cartan);
  const bool parabolic = !c.j.empty();
  const NodeSet j = parabolic ? node_set(def.cartan, split_names(c.j)) : w.all_nodes();
  const Ball ball = w.enumerate_parabolic(j, c.max_length, c.ball_cap);
  json elements = json::array();
  for (const auto& e : ball.elements) elements.push_back(element_to_json(w, e));
  json out = {{"group", def.name},
              {"J", names_of(def.cartan, j)},
              {"max_length", c.max_length},
              {"saturated", ball.saturated},
              {"count", ball.elements.size()},
              {"elements", elements}};
  emit(c, "ball", dump(out));
  return kPass;
}

int cmd_order(const RunConfig& c) {
  const auto def = load_group(c.group);
  const CoxeterGroup w(def.cartan);
  const NodeSet j = node_set(def.cartan, split_names(c.j));
  const TwistedContext ctx(w, j);
  const GroupElement a = w.parse_word(c.a);
  json out = {{"query", c.query}, {"group", def.name}, {"J", names_of(def.cartan, j)}, {"a", element_to_json(w, a)}};
  if (c.query == "jlen") {
    out["result"] = ctx.jlength(a);
  } else {
    const GroupElement b = w.parse_word(c.b);
    out["b"] = element_to_json(w, b);
    if (c.query == "bruhat") {
      out["result"] = w.bruhat_leq(a, b);
    } else if (c.query == "jleq") {
      out["result"] = ctx.jleq(a, b);
      if (auto u = ctx.jleq_witness(a, b)) out["witness"] = element_to_json(w, *u);
    } else {
      if (!ctx.jleq(a, b)) throw InputError("jinterval: a is not below b in the twisted order");
      const auto elements = ctx.jinterval(a, b);
      json names = json::array(), rank = json::array(), covers = json::array();
      for (const auto& e : elements) {
        names.push_back(w.word_string(e));
        rank.push_back(ctx.jlength(e));
      }
      for (auto [lo, hi] : ctx.jcovers(elements)) covers.push_back({lo, hi});
      out["elements"] = names;
      out["covers"] = covers;
      out["rank"] = rank;
    }
  }
  emit(c, c.query, dump(out));
  return kPass;
}

int cmd_qk_build(const RunConfig& c) {
  const auto l = load(c);
  if (parse_gluing_mode(c.mode) != GluingMode::Tilde) throw InputError("qk build uses the tilde gluing");
  const AtlasContext ctx(l.def.cartan, l.k, GluingMode::Tilde, c.ball_cap);
  const AtlasPoset p = build_atlas_poset(ctx, c.max_length, c.seed, label_side(c), final_section(c));
  if (c.format == "dot") {
    emit(c, "qk", to_dot(p.poset, &p.labels), "dot");
    return kPass;
  }
  json j = to_json(p.poset, &p.labels);
  j["minimal"] = p.minimal;
  j["bottom"] = p.bottom;
  j["group"] = l.def.name;
  j["K"] = names_of(l.def.cartan, l.k);
  j["max_length"] = c.max_length;
  j["seed"] = c.seed;
  json order = json::array();
  for (const auto& beta : p.order.order) order.push_back(beta.to_string());
  j["reflection_order"] = order;
  j["final_section_begin"] = p.order.final_begin;
  emit(c, "qk", dump(j));
  return kPass;
}

/// Runs one named check on one (group, K) and appends its reports.
void run_check(const RunConfig& c, const std::string& check, const GroupDefinition& def, NodeSet k,
               std::vector<Report>& out) {
  const CoxeterGroup w(def.cartan);
  if (check == "glue-table") {
    out.push_back(verify_glue_table());
  } else if (check == "oracles") {
    for (NodeSet j : subsets(w.rank())) {
      out.push_back(verify_twisted_oracles(w, j, c.max_length, c.max_length - 2, c.ball_cap));
      out.push_back(verify_twisted_length(w, j, c.max_length, c.ball_cap));
    }
  } else if (check == "breve") {
    try {
      const AtlasContext ctx(def.cartan, k, GluingMode::Breve, c.ball_cap);
      out.push_back(verify_iso_breve(ctx, c.max_length));
    } catch (const NotFiniteError&) {
      if (!c.all_k) throw;
      Report r("breve");
      r.summary = "skipped: W_K infinite";
      r.details = {{"direction", "undefined"}};
      out.push_back(std::move(r));
    }
  } else {
    const AtlasContext ctx(def.cartan, k, GluingMode::Tilde, c.ball_cap);
    if (check == "iso") {
      out.push_back(verify_iso_tilde(ctx, c.max_length));
    } else if (check == "image") {
      out.push_back(verify_image_tilde(ctx, c.max_length));
    } else if (check == "convex") {
      out.push_back(verify_convexity_tilde(ctx, c.max_length));
    } else {
      const AtlasPoset p = build_atlas_poset(ctx, c.max_length, c.seed, label_side(c), final_section(c));
      if (check == "thin") {
        out.push_back(verify_thin(p));
        out.push_back(verify_graded(p));
      } else {
        out.push_back(verify_el(p, ctx, ChainReading::TopDown, c.chain_cap));
        Report scan = scan_bottom_chains(p, ctx, ChainReading::TopDown, c.chain_cap);
        scan.passed = true;  // informational
        out.push_back(std::move(scan));
      }
    }
  }
}

int run_verify(const RunConfig& c, const std::vector<std::string>& checks) {
  for (const auto& name : checks)
    if (!kChecks.contains(name)) throw InputError("unknown check \"" + name + "\"");
  const bool needs_group =
      std::any_of(checks.begin(), checks.end(), [](const std::string& s) { return s != "glue-table"; });
  std::optional<Loaded> l;
  if (needs_group) l = load(c);

  json runs = json::array();
  bool passed = true;
  for (const auto& check : checks) {
    std::vector<NodeSet> ks{l ? l->k : NodeSet{}};
    const bool per_k = check != "glue-table" && check != "oracles";
    if (c.all_k && per_k) ks = subsets(l->def.cartan.rank());
    for (NodeSet k : ks) {
      std::vector<Report> reports;
      run_check(c, check, l ? l->def : GroupDefinition{}, k, reports);
      for (const auto& r : reports) {
        passed = passed && r.passed;
        std::cerr << (r.passed ? "PASS " : "FAIL ") << r.check;
        if (l && per_k) std::cerr << " K=" << names_of(l->def.cartan, k).dump();
        std::cerr << ": " << r.summary << "\n";
        json rj = r.to_json();
        if (l && per_k) rj["K"] = names_of(l->def.cartan, k);
        runs.push_back(rj);
      }
    }
  }
  json out = {{"passed", passed}, {"checks", checks}, {"reports", runs}, {"seed", c.seed}};
  if (l) {
    out["group"] = l->def.name;
    out["max_length"] = c.max_length;
    out["mode"] = c.mode;
  }
  emit(c, "report", dump(out));
  return passed ? kPass : kCheckFailed;
}

void add_group_options(CLI::App* app, RunConfig& c) {
  app->add_option("--group,--config", c.group, "group file (JSON) or catalog name")->capture_default_str();
  app->add_option("--K", c.k, "comma-separated node names (default: the group file's K)");
  app->add_option("--mode", c.mode, "gluing mode")->check(CLI::IsMember({"tilde", "breve"}))->capture_default_str();
  app->add_option("--ball-cap", c.ball_cap, "element-count cap for enumerations")->capture_default_str();
}

void add_window_options(CLI::App* app, RunConfig& c) {
  app->add_option("--max-length", c.max_length, "window L (bound on l(w))")->check(CLI::NonNegativeNumber)->capture_default_str();
  app->add_option("--seed", c.seed, "reflection-order seed")->capture_default_str();
  app->add_option("--chain-cap", c.chain_cap, "maximal-chain cap per interval")->capture_default_str();
  app->add_option("--labels", c.labels, "cover label side")->check(CLI::IsMember({"left", "right"}))->capture_default_str();
  app->add_option("--final", c.final_section, "parabolic whose reflections are final")
      ->check(CLI::IsMember({"flat", "sharp"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted Bruhat orders and Birkhoff-Bruhat atlases"};
  app.require_subcommand(1);
  RunConfig c;

  auto* glue = app.add_subcommand("glue", "glued diagram as JSON with an ASCII rendering");
  add_group_options(glue, c);
  glue->add_option("--out", c.out, "output file or directory");
  glue->add_flag("--ascii", c.ascii, "print only the rendering");

  auto* enumerate = app.add_subcommand("enumerate", "elements of length <= L");
  add_group_options(enumerate, c);
  enumerate->add_option("--max-length", c.max_length, "ball radius")->capture_default_str();
  enumerate->add_option("--J", c.j, "restrict to the parabolic W_J");
  enumerate->add_option("--out", c.out, "output file or directory");

  auto* order = app.add_subcommand("order", "Bruhat and twisted-order queries");
  add_group_options(order, c);
  order->add_option("query", c.query, "bruhat | jleq | jlen | jinterval")
      ->required()
      ->check(CLI::IsMember({"bruhat", "jleq", "jlen", "jinterval"}));
  order->add_option("--J", c.j, "twisting subset (comma or space separated)")->expected(0, 1);
  order->add_option("--a", c.a, "word, space separated (\"\" or e for the identity)");
  order->add_option("--b", c.b, "word, space separated");
  order->add_option("--out", c.out, "output file or directory");

  auto* qk = app.add_subcommand("qk", "the poset Q_K and its atlas checks");
  qk->require_subcommand(1);
  auto* build = qk->add_subcommand("build", "Q-hat_K with reflection labels");
  add_group_options(build, c);
  add_window_options(build, c);
  build->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "dot"}))->capture_default_str();
  build->add_option("--out", c.out, "output file or directory");
  auto* qverify = qk->add_subcommand("verify", "iso | image | convex | breve");
  add_group_options(qverify, c);
  add_window_options(qverify, c);
  qverify->add_option("--check", c.checks, "checks to run")
      ->delimiter(',')
      ->required()
      ->check(CLI::IsMember({"iso", "image", "convex", "breve"}));
  qverify->add_option("--out", c.out, "output file or directory");
  qverify->add_flag("--all-K", c.all_k, "run for every subset K");

  auto* verify = app.add_subcommand("verify", "verification suites; exit 0 iff every check passes");
  add_group_options(verify, c);
  add_window_options(verify, c);
  verify->add_option("--check", c.checks, "iso,image,convex,thin,el,oracles,breve,glue-table")
      ->delimiter(',')
      ->required();
  verify->add_option("--out", c.out, "output file or directory");
  verify->add_flag("--all-K", c.all_k, "run per-K checks for every subset K");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*glue) return cmd_glue(c);
    if (*enumerate) return cmd_enumerate(c);
    if (*order) return cmd_order(c);
    if (*build) return cmd_qk_build(c);
    if (*qverify || *verify) {
      if (*qverify && c.mode == "breve" && c.checks != std::vector<std::string>{"breve"})
        throw InputError("qk verify: iso, image and convex use the tilde gluing");
      return run_verify(c, c.checks);
    }
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NotFiniteError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}

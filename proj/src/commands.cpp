#include "solenoid/commands.hpp"

#include <algorithm>

#include "solenoid/coding.hpp"
#include "solenoid/errors.hpp"
#include "solenoid/kernels.hpp"
#include "solenoid/tower.hpp"

namespace solenoid {

namespace {

constexpr int kDefaultDepth = 6;
constexpr int kDefaultWords = 8;
constexpr std::uint64_t kDefaultSeed = 1;
constexpr std::size_t kExhaustiveTriangle = 200;
constexpr std::size_t kTriangleSamples = 10'000;
constexpr std::size_t kDistalityWork = 50'000'000;
constexpr std::size_t kDistalityElements = 20'000;

struct Context {
  Rational lambda{1, 2};
  int words = kDefaultWords;
  std::uint64_t seed = kDefaultSeed;
  int depth = 0;
  std::optional<SubgroupChain> chain;
  std::optional<QuotientTower> tower;
  std::optional<CantorAction> action;
  std::string action_skipped;  ///< why no action could be built, if so
};

Context prepare(const ConfigFile& cfg, const CommandOptions& opts, bool tolerate_cap) {
  Context ctx;
  if (auto l = opts.lambda ? opts.lambda : cfg.run.lambda) ctx.lambda = *l;
  if (!(Rational(0) < ctx.lambda && ctx.lambda < Rational(1)))
    throw PreconditionError("lambda must lie strictly between 0 and 1");
  if (auto w = opts.words ? opts.words : cfg.run.words) ctx.words = *w;
  if (ctx.words < 0) throw PreconditionError("word bound must be nonnegative");
  if (auto s = opts.seed ? opts.seed : cfg.run.seed) ctx.seed = *s;
  const auto requested = opts.depth ? opts.depth : cfg.run.depth;
  if (cfg.chain) {
    ctx.chain = build_chain(*cfg.chain);
    ctx.depth = requested ? *requested : std::min(kDefaultDepth, ctx.chain->length());
    if (ctx.depth < 1 || ctx.depth > ctx.chain->length())
      throw PreconditionError("depth " + std::to_string(ctx.depth) + " outside the chain's levels 1.." +
                              std::to_string(ctx.chain->length()));
    try {
      ctx.tower = build_tower(*ctx.chain, ctx.depth);
      ctx.action = boundary_action(*ctx.chain, *ctx.tower, ctx.lambda);
    } catch (const ResourceError& e) {
      if (!tolerate_cap) throw;
      ctx.action_skipped = e.what();
    }
  } else {
    ActionSpec spec = *cfg.action;
    if (requested && !spec.gallery.empty()) spec.depth = *requested;
    ctx.action = build_action(spec, ctx.lambda);
    ctx.depth = ctx.action->model().depth();
  }
  return ctx;
}

ReportNode header(const std::string& command, const Context& ctx, const std::vector<std::string>& inputs) {
  ReportNode root;
  root.add("schema", kReportSchema);
  root.add("tool", std::string("solenoid ") + kToolVersion);
  root.add("command", command);
  for (std::size_t i = 0; i < inputs.size(); ++i) root.add(inputs.size() == 1 ? "input" : "input_" + std::string(1, char('a' + i)), inputs[i]);
  auto& p = root.section("parameters");
  p.add("depth", ctx.depth);
  p.add("words", ctx.words);
  p.add("lambda", ctx.lambda.str());
  p.add("seed", std::to_string(ctx.seed));
  p.add("index_cap", std::to_string(configured_index_cap()));
  p.add("pairwise_cap", configured_pairwise_cap());
  return root;
}

void describe_chain(ReportNode& root, const Context& ctx) {
  const auto& ch = *ctx.chain;
  auto& c = root.section("chain");
  c.add("construction", ch.construction());
  c.add("levels", ch.length());
  auto& g = c.section("group");
  g.add("dimension", ch.group().dimension());
  g.add("denominator", std::to_string(ch.group().denom()));
  for (const auto& gen : ch.group().generators()) g.add("generator " + gen.name, gen.element.str());
  for (int l = 1; l <= ch.length(); ++l) {
    auto& lv = c.section("level " + std::to_string(l));
    lv.add("index", std::to_string(ch.index(l)));
    lv.add("subgroup", ch.level(l).str());
  }
}

std::string address_list(const CantorModel& m, const std::vector<int>& set, std::size_t limit = 12) {
  std::string s;
  for (std::size_t i = 0; i < set.size() && i < limit; ++i) s += (i ? " " : "") + m.label(set[i]);
  if (set.size() > limit) s += " ... (" + std::to_string(set.size()) + " addresses)";
  return s;
}

void describe_action(ReportNode& root, const CantorAction& a) {
  auto& n = root.section("action");
  n.add("addresses", std::to_string(a.size()));
  n.add("model_depth", a.model().depth());
  n.add("metric", a.model().is_tree_metric() ? "tree" : a.model().is_warp() ? "warp" : "table");
  std::string gens;
  for (const auto& g : a.generators()) gens += (gens.empty() ? "" : " ") + g.name;
  n.add("generators", gens);
  n.add("basepoint", a.model().label(a.basepoint()));
}

void minimality_section(ReportNode& root, const CantorAction& a, int depth) {
  auto& n = root.section("minimality");
  n.add("at_depth", depth);
  const auto m = is_minimal(a);
  n.add("minimal", m.minimal);
  if (!m.minimal) n.add("witness_orbit", "{" + address_list(a.model(), m.witness_orbit) + "}");
}

void modulus_rows(ReportNode& n, const ModulusTable& t) {
  n.add("method", t.method);
  n.add("rows", std::to_string(t.rows.size()));
  n.add("isometric", t.is_isometric());
  n.add("monotone", t.is_monotone());
  auto row_text = [](const ModulusRow& r) { return "r = " + r.r.str() + ", kappa = " + r.kappa.str(); };
  // short tables in full, otherwise three rows from each end
  const std::size_t rows = t.rows.size();
  for (std::size_t i = 0; i < rows; ++i) {
    if (rows > 6 && i == 3) {
      n.add("elided", std::to_string(rows - 6) + " rows");
      i = rows - 4;
      continue;
    }
    n.add("row " + std::to_string(i + 1), row_text(t.rows[i]));
  }
}

void modulus_section(ReportNode& root, const CantorAction& a) {
  auto& n = root.section("modulus");
  try {
    modulus_rows(n, modulus_table(a));
  } catch (const ResourceError& e) {
    n.add("skipped", e.what());
  }
}

void distality_section(ReportNode& root, const CantorAction& a, int words) {
  auto& n = root.section("distality");
  n.add("word_bound", words);
  try {
    const auto n_pairs = a.size() * (a.size() - 1) / 2;
    DistalityResult d;
    bool isometric = false;
    try {
      d = is_distal(a, 0);
      isometric = d.method == "isometry";
    } catch (const ResourceError&) {
    }
    if (!isometric) {
      if (a.size() > static_cast<std::size_t>(configured_pairwise_cap()))
        throw ResourceError("distality needs pairwise distances over " + std::to_string(a.size()) +
                            " addresses, above the limit of " + std::to_string(configured_pairwise_cap()) +
                            " (SOLENOID_PAIRWISE_CAP)");
      const auto elems = enumerate_elements(a, words, kDistalityElements);
      if (elems.size() * n_pairs > kDistalityWork)
        throw ResourceError("distality work " + std::to_string(elems.size()) + " elements x " +
                            std::to_string(n_pairs) + " pairs exceeds the limit " + std::to_string(kDistalityWork));
      d = kernels::distality_pairwise(a, elems);
    }
    n.add("method", d.method);
    if (d.method == "enumeration") n.add("elements", std::to_string(d.elements));
    n.add("distal", d.distal);
    if (d.worst_a >= 0) {
      n.add("min_delta", d.min_delta.str());
      n.add("attained_at", a.model().label(d.worst_a) + " " + a.model().label(d.worst_b));
    }
  } catch (const ResourceError& e) {
    n.add("skipped", e.what());
  }
}

void measure_section(ReportNode& root, const CantorAction& a) {
  auto& n = root.section("measure");
  const auto mu = invariant_measure(a);
  n.add("support", mu.full_support ? "all addresses" : "orbit closure of the basepoint");
  n.add("support_size", std::to_string(mu.support.size()));
  n.add("weight", mu.weights[mu.support.front()].str());
  if (!mu.full_support) n.add("support_addresses", "{" + address_list(a.model(), mu.support) + "}");
  n.add("pushforward_verified", mu.verified);
  n.add("generators_checked", std::to_string(a.generators().size()));
}

void triangle_section(ReportNode& root, const CantorAction& a, std::uint64_t seed) {
  const auto& m = a.model();
  auto& n = root.section("metric_check");
  const bool tree = m.is_tree_metric();
  const auto t = tree ? check_ultrametric(m, kExhaustiveTriangle, kTriangleSamples, seed)
                      : check_triangle(m, kExhaustiveTriangle, kTriangleSamples, seed);
  n.add("inequality", tree ? "ultrametric" : "triangle");
  n.add("mode", t.exhaustive ? "exhaustive" : "sampled");
  n.add("seed", std::to_string(seed));
  n.add("triples", std::to_string(t.triples_checked));
  n.add("holds", t.holds);
  if (!t.holds) {
    n.add("violation", m.label(t.a) + " " + m.label(t.b) + " " + m.label(t.c));
    n.add("d_ac", m.distance(t.a, t.c).str());
    n.add("d_ab_plus_d_bc", (m.distance(t.a, t.b) + m.distance(t.b, t.c)).str());
  }
}

void mccord_section(ReportNode& root, const Context& ctx) {
  const auto& ch = *ctx.chain;
  auto& n = root.section("mccord");
  const auto v = mccord_verdict(ch, ctx.depth);
  n.add("depth", v.depth);
  n.add("compatible_to_depth", v.compatible);
  for (const auto& l : v.levels) {
    auto& lv = n.section("level " + std::to_string(l.level));
    lv.add("core", l.core.str());
    if (l.cofinal_at) {
      lv.add("cofinal_at", *l.cofinal_at);
    } else {
      lv.add("cofinal", false);
      lv.add("witness", l.witness->str());
      lv.add("witness_level", l.witness_level);
      lv.add("witness_verified", l.witness_verified);
    }
  }
}

void normality_section(ReportNode& root, const Context& ctx) {
  const auto& ch = *ctx.chain;
  auto& n = root.section("normality");
  for (int l = 1; l <= ctx.depth; ++l) {
    const auto r = is_normal(ch.group(), ch.level(l));
    auto& lv = n.section("level " + std::to_string(l));
    lv.add("normal", r.normal);
    if (r.witness) lv.add("witness", ch.group().generators()[*r.witness].name);
  }
}

}  // namespace

ReportNode classify(const ConfigFile& cfg, const CommandOptions& opts, const std::string& input) {
  const Context ctx = prepare(cfg, opts, true);
  ReportNode root = header("classify", ctx, {input});
  if (ctx.chain) describe_chain(root, ctx);
  if (ctx.action) {
    describe_action(root, *ctx.action);
    minimality_section(root, *ctx.action, ctx.depth);
    modulus_section(root, *ctx.action);
    distality_section(root, *ctx.action, ctx.words);
    measure_section(root, *ctx.action);
    if (!ctx.chain) triangle_section(root, *ctx.action, ctx.seed);
  } else {
    root.section("action").add("skipped", ctx.action_skipped);
  }
  if (ctx.chain) {
    normality_section(root, ctx);
    mccord_section(root, ctx);
  }
  return root;
}

ReportNode compare(const ConfigFile& a, const ConfigFile& b, const CommandOptions& opts, const std::string& input_a,
                   const std::string& input_b) {
  if (!a.chain || !b.chain) throw PreconditionError("compare needs two chain configs");
  Context ctx;
  if (auto l = opts.lambda ? opts.lambda : a.run.lambda) ctx.lambda = *l;
  if (auto w = opts.words ? opts.words : a.run.words) ctx.words = *w;
  if (auto s = opts.seed ? opts.seed : a.run.seed) ctx.seed = *s;
  SubgroupChain ca = build_chain(*a.chain);
  SubgroupChain cb = build_chain(*b.chain);
  if (opts.depth) {
    ca = ca.truncated(std::min(*opts.depth, ca.length()));
    cb = cb.truncated(std::min(*opts.depth, cb.length()));
  }
  ctx.depth = std::max(ca.length(), cb.length());
  ReportNode root = header("compare", ctx, {input_a, input_b});
  auto& chains = root.section("chains");
  chains.add("a_levels", ca.length());
  chains.add("b_levels", cb.length());
  chains.add("a_construction", ca.construction());
  chains.add("b_construction", cb.construction());
  const auto v = interleave(ca, cb);
  auto& n = root.section("interleave");
  n.add("interleaved_to_available_depth", v.success);
  if (v.success) {
    auto map_text = [](const std::vector<int>& m) {
      std::string s;
      for (std::size_t i = 0; i < m.size(); ++i) s += (i ? " " : "") + std::to_string(i + 1) + "->" + std::to_string(m[i]);
      return s;
    };
    n.add("a_to_b", map_text(v.a_to_b));
    n.add("b_to_a", map_text(v.b_to_a));
  } else {
    const auto& f = *v.failure;
    n.add("uncovered_chain", std::string(1, f.chain));
    n.add("uncovered_level", f.level);
    n.add("witness", f.witness.str());
    n.add("witness_from", std::string(1, f.chain == 'A' ? 'B' : 'A') + " level " + std::to_string(f.other_level));
  }
  return root;
}

ReportNode code(const ConfigFile& cfg, const CommandOptions& opts, const std::string& input) {
  const Context ctx = prepare(cfg, opts, false);
  ReportNode root = header("code", ctx, {input});
  const auto& a = *ctx.action;
  describe_action(root, a);
  CodingOptions co;
  co.word_length = ctx.words;
  if (cfg.run.window_depth) co.window_depth = *cfg.run.window_depth;
  if (cfg.run.levels) co.max_levels = *cfg.run.levels;
  const auto chain = coding_chain(a, co);
  auto& n = root.section("coding");
  n.add("window_depth", chain.window_depth);
  n.add("window_size", std::to_string(chain.window.size()));
  n.add("minimal", chain.minimal);
  n.add("schreier_diameter", chain.schreier_diameter);
  n.add("truncation_bridge", "return words of bounded length, cross-checked against the fixed-point refinement");
  n.add("levels", std::to_string(chain.levels.size()));
  n.add("stop", chain.stop_reason);
  for (const auto& lv : chain.levels) {
    auto& l = n.section("level " + std::to_string(lv.level));
    l.add("epsilon", lv.epsilon.str());
    l.add("eta", lv.eta ? lv.eta->str() : "none");
    l.add("delta", lv.delta ? lv.delta->str() : lv.resolution_limit ? "none (resolution limit)" : "none");
    l.add("partition_depth", lv.partition_depth);
    l.add("blocks", std::to_string(lv.partition.blocks.size()));
    l.add("v_size", std::to_string(lv.v.size()));
    l.add("v", "{" + address_list(a.model(), lv.v) + "}");
    l.add("translates", std::to_string(lv.translates.size()));
    l.add("covers_window", lv.covers_window);
    l.add("word_bound", lv.words.max_length);
    l.add("return_words", std::to_string(lv.words.words.size()));
    std::string ws;
    for (std::size_t i = 0; i < lv.translates.size() && i < 8; ++i)
      ws += (i ? ", " : "") + word_str(a, lv.translates[i].word);
    if (lv.translates.size() > 8) ws += ", ...";
    l.add("translate_words", ws);
    l.add("fixed_point_agrees", lv.fixed_point_agrees);
    if (ctx.chain) {
      const auto core = normal_core(ctx.chain->group(), ctx.chain->level(lv.partition_depth));
      const auto cyl = subgroup_cylinder(*ctx.chain, *ctx.tower, core);
      auto& o = l.section("core_oracle");
      o.add("level", lv.partition_depth);
      o.add("core", core.str());
      o.add("equal", cyl == lv.v);
    }
  }
  const auto lemmas = check_lemmas(a, chain);
  auto& lm = root.section("lemmas");
  auto put = [&](const char* k, const LemmaCounts& c) {
    lm.add(k, std::to_string(c.checks) + " checks, " + std::to_string(c.violations) + " violations");
  };
  put("fixset", lemmas.fixset);
  put("disjointness", lemmas.disjointness);
  put("coverage", lemmas.coverage);
  put("equivariance", lemmas.equivariance);
  put("local_constancy", lemmas.local_constancy);
  put("nesting", lemmas.nesting);
  lm.add("ok", lemmas.ok());
  for (std::size_t i = 0; i < lemmas.messages.size(); ++i) lm.add("violation " + std::to_string(i + 1), lemmas.messages[i]);
  return root;
}

ReportNode holonomy(const ConfigFile& cfg, const CommandOptions& opts, const std::string& input) {
  const Context ctx = prepare(cfg, opts, false);
  ReportNode root = header("holonomy", ctx, {input});
  const auto& a = *ctx.action;
  const auto w = a.model().index_of(opts.at);
  if (!w) throw PreconditionError("unknown address '" + opts.at + "'");
  const Word word = parse_word(a, opts.word);
  const int image = act(a, word, *w);
  if (image != *w)
    throw PreconditionError("word '" + word_str(a, word) + "' does not stabilize " + opts.at + ": it maps it to " +
                            a.model().label(image));
  const auto r = germinal_holonomy(a, word, *w);
  auto& n = root.section("holonomy");
  n.add("word", word_str(a, word));
  n.add("at", opts.at);
  n.add("depth", a.model().depth());
  if (const auto* t = std::get_if<HolonomyTrivial>(&r)) {
    n.add("germ", "trivial");
    n.add("identity_from_depth", t->depth);
  } else {
    const auto& nt = std::get<HolonomyNontrivial>(r);
    n.add("germ", "nontrivial through depth " + std::to_string(nt.depth));
    n.add("deepest_disagreeing_cylinder", nt.witness_depth);
    n.add("moved", a.model().label(nt.moved_address) + " -> " + a.model().label(nt.moved_to));
  }
  return root;
}

ReportNode measure(const ConfigFile& cfg, const CommandOptions& opts, const std::string& input) {
  const Context ctx = prepare(cfg, opts, false);
  ReportNode root = header("measure", ctx, {input});
  describe_action(root, *ctx.action);
  minimality_section(root, *ctx.action, ctx.depth);
  measure_section(root, *ctx.action);
  return root;
}

}  // namespace solenoid

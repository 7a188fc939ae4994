#include "solenoid/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "solenoid/errors.hpp"
#include "solenoid/gallery.hpp"

namespace solenoid {

namespace {

struct Token {
  std::string text;
  int col;
};

std::vector<Token> tokenize(std::string_view s, int base_col) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back({std::string(s.substr(start, i - start)), base_col + static_cast<int>(start)});
  }
  return out;
}

struct Entry {
  std::string key;
  std::string name;
  std::string value;
  int line;
  int key_col;
  int value_col;
};

struct Section {
  std::string name;
  int level = 0;
  int line;
  std::vector<Entry> entries;
};

std::vector<Section> split_sections(std::string_view text) {
  std::vector<Section> sections;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) {
      if (end == text.size()) break;
      continue;
    }
    const auto last = line.find_last_not_of(" \t");
    const int col = static_cast<int>(first) + 1;
    if (line[first] == '[') {
      if (line[last] != ']') throw ParseError("section header is missing ']'", lineno, static_cast<int>(last) + 2);
      const auto inner = tokenize(std::string_view(line).substr(first + 1, last - first - 1), col + 1);
      if (inner.empty()) throw ParseError("empty section name", lineno, col);
      Section s{inner[0].text, 0, lineno, {}};
      if (s.name == "level") {
        if (inner.size() != 2) throw ParseError("expected [level N]", lineno, col);
        int n = 0;
        const auto& t = inner[1].text;
        auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), n);
        if (ec != std::errc() || p != t.data() + t.size() || n < 1)
          throw ParseError("level number must be a positive integer", lineno, inner[1].col);
        s.level = n;
      } else if (inner.size() != 1) {
        throw ParseError("unexpected text in section header", lineno, inner[1].col);
      }
      sections.push_back(std::move(s));
      if (end == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno, col);
    if (sections.empty()) throw ParseError("entry outside any section", lineno, col);
    const auto keys = tokenize(std::string_view(line).substr(0, eq), 1);
    if (keys.empty() || keys.size() > 2) throw ParseError("expected 'key' or 'key name' before '='", lineno, col);
    const auto vstart = line.find_first_not_of(" \t", eq + 1);
    std::string value = vstart == std::string::npos ? "" : line.substr(vstart, last + 1 - vstart);
    const int vcol = vstart == std::string::npos ? static_cast<int>(eq) + 2 : static_cast<int>(vstart) + 1;
    sections.back().entries.push_back(
        {keys[0].text, keys.size() == 2 ? keys[1].text : "", std::move(value), lineno, keys[0].col, vcol});
    if (end == text.size()) break;
  }
  return sections;
}

[[noreturn]] void bad_value(const Entry& e, const std::string& what, int col = 0) {
  throw ParseError(what, e.line, col ? col : e.value_col);
}

std::int64_t parse_int(const Token& t, const Entry& e) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || p != t.text.data() + t.text.size()) bad_value(e, "expected an integer, got '" + t.text + "'", t.col);
  return v;
}

std::int64_t parse_int(const Entry& e) {
  const auto toks = tokenize(e.value, e.value_col);
  if (toks.size() != 1) bad_value(e, "expected a single integer");
  return parse_int(toks[0], e);
}

int parse_small(const Entry& e, int lo, int hi) {
  const auto v = parse_int(e);
  if (v < lo || v > hi)
    bad_value(e, e.key + " must lie in " + std::to_string(lo) + ".." + std::to_string(hi));
  return static_cast<int>(v);
}

Rational parse_rational(const Token& t, const Entry& e) {
  try {
    return Rational::parse(t.text);
  } catch (const std::invalid_argument&) {
    bad_value(e, "malformed rational '" + t.text + "'", t.col);
  }
}

std::string parse_word_value(const Entry& e) {
  const auto toks = tokenize(e.value, e.value_col);
  if (toks.size() != 1) bad_value(e, "expected a single word");
  return toks[0].text;
}

bool parse_bool(const Entry& e) {
  const auto v = parse_word_value(e);
  if (v == "true") return true;
  if (v == "false") return false;
  bad_value(e, "expected true or false");
}

IntMatrix parse_matrix_tokens(const std::vector<Token>& toks, const Entry& e) {
  std::vector<std::vector<std::int64_t>> rows(1);
  for (const auto& t : toks) {
    if (t.text == "/") {
      rows.emplace_back();
      continue;
    }
    rows.back().push_back(parse_int(t, e));
  }
  const std::size_t n = rows.front().size();
  if (n == 0) bad_value(e, "empty matrix");
  for (const auto& r : rows)
    if (r.size() != n) bad_value(e, "matrix rows have unequal length");
  if (rows.size() != n) bad_value(e, "matrix must be square");
  IntMatrix m(static_cast<int>(n), static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  return m;
}

AffineSpec parse_affine(const Entry& e) {
  const auto bar = e.value.find('|');
  if (bar == std::string::npos) bad_value(e, "expected 'matrix | translation'");
  AffineSpec a;
  a.point = parse_matrix_tokens(tokenize(std::string_view(e.value).substr(0, bar), e.value_col), e);
  for (const auto& t : tokenize(std::string_view(e.value).substr(bar + 1), e.value_col + static_cast<int>(bar) + 1))
    a.trans.push_back(parse_rational(t, e));
  if (static_cast<int>(a.trans.size()) != a.point.rows())
    bad_value(e, "translation length does not match the matrix size", e.value_col + static_cast<int>(bar) + 1);
  return a;
}

[[noreturn]] void unknown_key(const Section& s, const Entry& e) {
  throw ParseError("unknown key '" + e.key + "' in [" + s.name + "]", e.line, e.key_col);
}

void no_name(const Entry& e) {
  if (!e.name.empty()) throw ParseError("key '" + e.key + "' takes no name", e.line, e.key_col);
}

std::string section_label(const Section& s) {
  return s.level ? "[level " + std::to_string(s.level) + "]" : "[" + s.name + "]";
}

const std::set<std::string> kChainGalleries{"vietoris", "fokkink_oversteegen", "rogers_tollefson",
                                            "small_fo_variant"};

}  // namespace

ConfigFile parse_config(std::string_view text) {
  ConfigFile cfg;
  std::set<std::string> seen;
  ChainSpec chain;
  bool has_chain = false, has_group = false, p_given = false;
  std::map<int, LevelSpec> levels;
  ActionSpec action;
  bool has_action = false;
  const auto sections = split_sections(text);
  for (const auto& s : sections) {
    const std::string label = section_label(s);
    if (!seen.insert(label).second) throw ParseError("duplicate section " + label, s.line, 1);
    if (s.name == "chain") {
      has_chain = true;
      for (const auto& e : s.entries) {
        no_name(e);
        if (e.key == "gallery") chain.gallery = parse_word_value(e);
        else if (e.key == "p") chain.p = parse_int(e), p_given = true;
        else if (e.key == "depth") chain.depth = parse_small(e, 1, 64);
        else unknown_key(s, e);
      }
    } else if (s.name == "group") {
      has_group = true;
      for (const auto& e : s.entries) {
        if (e.key == "generator") {
          if (e.name.empty()) throw ParseError("generator needs a name", e.line, e.key_col);
          chain.generators.push_back({e.name, parse_affine(e)});
          continue;
        }
        no_name(e);
        if (e.key == "dimension") chain.dimension = parse_small(e, 1, 8);
        else if (e.key == "denominator") chain.denominator = parse_small(e, 1, 1'000'000);
        else unknown_key(s, e);
      }
    } else if (s.name == "level") {
      LevelSpec lv;
      bool has_lattice = false;
      for (const auto& e : s.entries) {
        no_name(e);
        if (e.key == "lattice") {
          lv.lattice = parse_matrix_tokens(tokenize(e.value, e.value_col), e);
          has_lattice = true;
        } else if (e.key == "rep") {
          lv.reps.push_back(parse_affine(e));
        } else {
          unknown_key(s, e);
        }
      }
      if (!has_lattice) throw StructuralError(label + " has no lattice");
      levels[s.level] = std::move(lv);
    } else if (s.name == "action") {
      has_action = true;
      for (const auto& e : s.entries) {
        if (e.key == "generator") {
          if (e.name.empty()) throw ParseError("generator needs a name", e.line, e.key_col);
          PermutationSpec g{e.name, {}};
          for (const auto& t : tokenize(e.value, e.value_col)) g.images.push_back(t.text);
          action.generators.push_back(std::move(g));
          continue;
        }
        no_name(e);
        if (e.key == "gallery") action.gallery = parse_word_value(e);
        else if (e.key == "depth") action.depth = parse_small(e, 1, 12);
        else if (e.key == "fiber_generators") action.fiber_generators = parse_small(e, 1, 16);
        else if (e.key == "free_generator") action.free_generator = parse_bool(e);
        else if (e.key == "addresses")
          for (const auto& t : tokenize(e.value, e.value_col)) action.addresses.push_back(t.text);
        else if (e.key == "basepoint") action.basepoint = parse_word_value(e);
        else if (e.key == "metric") action.metric = parse_word_value(e);
        else unknown_key(s, e);
      }
    } else if (s.name == "distances") {
      for (const auto& e : s.entries) {
        if (e.name.empty()) throw ParseError("distance entries read 'a b = r'", e.line, e.key_col);
        const auto toks = tokenize(e.value, e.value_col);
        if (toks.size() != 1) bad_value(e, "expected a single rational");
        action.distances.push_back({e.key, e.name, parse_rational(toks[0], e)});
      }
    } else if (s.name == "run") {
      for (const auto& e : s.entries) {
        no_name(e);
        if (e.key == "depth") cfg.run.depth = parse_small(e, 1, 64);
        else if (e.key == "words") cfg.run.words = parse_small(e, 0, 4096);
        else if (e.key == "lambda") {
          const auto toks = tokenize(e.value, e.value_col);
          if (toks.size() != 1) bad_value(e, "expected a single rational");
          cfg.run.lambda = parse_rational(toks[0], e);
        } else if (e.key == "seed") {
          const auto v = parse_int(e);
          if (v < 0) bad_value(e, "seed must be nonnegative");
          cfg.run.seed = static_cast<std::uint64_t>(v);
        } else if (e.key == "window_depth") cfg.run.window_depth = parse_small(e, 0, 64);
        else if (e.key == "levels") cfg.run.levels = parse_small(e, 1, 1024);
        else unknown_key(s, e);
      }
    } else {
      throw ParseError("unknown section [" + s.name + "]", s.line, 1);
    }
  }

  if (has_chain || has_group || !levels.empty()) {
    if (has_chain && chain.gallery.empty()) throw StructuralError("[chain] needs a gallery name");
    if (!chain.gallery.empty()) {
      if (!kChainGalleries.contains(chain.gallery))
        throw StructuralError("[chain] unknown gallery '" + chain.gallery + "'");
      if (has_group || !levels.empty()) throw StructuralError("[chain] gallery chains take no [group] or [level] sections");
      if (chain.depth == 0) throw StructuralError("[chain] needs a depth");
      if (p_given && chain.gallery != "vietoris") throw StructuralError("[chain] p applies only to vietoris");
    } else {
      if (!has_group) throw StructuralError("explicit chain needs a [group] section");
      if (chain.dimension == 0) throw StructuralError("[group] needs a dimension");
      if (chain.generators.empty()) throw StructuralError("[group] needs at least one generator");
      int expect = 1;
      for (auto& [n, lv] : levels) {
        if (n != expect) throw StructuralError("[level " + std::to_string(expect) + "] is missing");
        chain.levels.push_back(std::move(lv));
        ++expect;
      }
      if (chain.levels.empty()) throw StructuralError("explicit chain needs [level 1]");
    }
    cfg.chain = std::move(chain);
  }
  if (has_action || !action.distances.empty()) {
    if (cfg.chain) throw StructuralError("a config describes either a chain or an action, not both");
    if (!action.gallery.empty()) {
      if (action.gallery != "warp") throw StructuralError("[action] unknown gallery '" + action.gallery + "'");
      if (!action.addresses.empty() || !action.generators.empty() || !action.distances.empty() ||
          !action.basepoint.empty())
        throw StructuralError("[action] the warp gallery takes no explicit addresses, generators or distances");
    } else {
      if (action.addresses.empty()) throw StructuralError("[action] needs addresses");
      if (action.basepoint.empty()) throw StructuralError("[action] needs a basepoint");
      if (action.metric != "tree" && action.metric != "table")
        throw StructuralError("[action] metric must be tree or table");
      if (action.metric == "tree" && !action.distances.empty())
        throw StructuralError("[distances] applies only to metric = table");
    }
    cfg.action = std::move(action);
  }
  if (!cfg.chain && !cfg.action) throw StructuralError("config defines neither a chain nor an action");
  return cfg;
}

ConfigFile load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

std::string matrix_text(const IntMatrix& m) { return m.str(); }

std::string affine_text(const AffineSpec& a) {
  std::string s = matrix_text(a.point) + " |";
  for (const auto& t : a.trans) s += " " + t.str();
  return s;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i];
  return s;
}

}  // namespace

std::string serialize_config(const ConfigFile& cfg) {
  std::ostringstream out;
  bool first = true;
  auto section = [&](const std::string& name) {
    if (!first) out << '\n';
    first = false;
    out << '[' << name << "]\n";
  };
  if (cfg.chain) {
    const auto& c = *cfg.chain;
    if (!c.gallery.empty()) {
      section("chain");
      out << "gallery = " << c.gallery << '\n';
      if (c.gallery == "vietoris") out << "p = " << c.p << '\n';
      out << "depth = " << c.depth << '\n';
    } else {
      section("group");
      out << "dimension = " << c.dimension << '\n' << "denominator = " << c.denominator << '\n';
      for (const auto& g : c.generators) out << "generator " << g.name << " = " << affine_text(g.element) << '\n';
      for (std::size_t i = 0; i < c.levels.size(); ++i) {
        section("level " + std::to_string(i + 1));
        out << "lattice = " << matrix_text(c.levels[i].lattice) << '\n';
        for (const auto& r : c.levels[i].reps) out << "rep = " << affine_text(r) << '\n';
      }
    }
  }
  if (cfg.action) {
    const auto& a = *cfg.action;
    section("action");
    if (!a.gallery.empty()) {
      out << "gallery = " << a.gallery << '\n'
          << "depth = " << a.depth << '\n'
          << "fiber_generators = " << a.fiber_generators << '\n'
          << "free_generator = " << (a.free_generator ? "true" : "false") << '\n';
    } else {
      out << "addresses = " << join(a.addresses) << '\n'
          << "basepoint = " << a.basepoint << '\n'
          << "metric = " << a.metric << '\n';
      for (const auto& g : a.generators) out << "generator " << g.name << " = " << join(g.images) << '\n';
      if (!a.distances.empty()) {
        section("distances");
        for (const auto& d : a.distances) out << d.a << ' ' << d.b << " = " << d.d.str() << '\n';
      }
    }
  }
  const auto& r = cfg.run;
  if (r.depth || r.words || r.lambda || r.seed || r.window_depth || r.levels) {
    section("run");
    if (r.depth) out << "depth = " << *r.depth << '\n';
    if (r.words) out << "words = " << *r.words << '\n';
    if (r.lambda) out << "lambda = " << r.lambda->str() << '\n';
    if (r.seed) out << "seed = " << *r.seed << '\n';
    if (r.window_depth) out << "window_depth = " << *r.window_depth << '\n';
    if (r.levels) out << "levels = " << *r.levels << '\n';
  }
  return out.str();
}

SubgroupChain build_chain(const ChainSpec& spec) {
  if (spec.gallery == "vietoris") return gallery::vietoris(spec.p, spec.depth);
  if (spec.gallery == "fokkink_oversteegen") return gallery::fokkink_oversteegen(spec.depth);
  if (spec.gallery == "rogers_tollefson") return gallery::rogers_tollefson(spec.depth);
  if (spec.gallery == "small_fo_variant") return gallery::small_fo_variant(spec.depth);
  if (!spec.gallery.empty()) throw StructuralError("[chain] unknown gallery '" + spec.gallery + "'");
  auto element = [&](const AffineSpec& a) {
    if (a.point.rows() != spec.dimension) throw StructuralError("matrix size differs from the dimension");
    return AffineElement::from_rational(a.point, a.trans, spec.denominator);
  };
  std::vector<NamedElement> gens;
  try {
    for (const auto& g : spec.generators) gens.push_back({g.name, element(g.element)});
  } catch (const StructuralError& e) {
    throw StructuralError(std::string("[group] ") + e.what());
  }
  auto group = AffineGroup::create(spec.dimension, spec.denominator, std::move(gens));
  std::vector<FiniteIndexSubgroup> levels;
  for (std::size_t i = 0; i < spec.levels.size(); ++i) {
    const std::string label = "[level " + std::to_string(i + 1) + "] ";
    try {
      const auto& lv = spec.levels[i];
      if (lv.lattice.rows() != spec.dimension) throw StructuralError("lattice size differs from the dimension");
      std::vector<AffineElement> reps;
      for (const auto& r : lv.reps) reps.push_back(element(r));
      levels.push_back(FiniteIndexSubgroup::generated(group, lv.lattice, reps));
      if (i > 0) {
        const auto& above = levels[i - 1];
        if (!is_subgroup_of(levels[i], above))
          throw StructuralError("subgroup is not contained in level " + std::to_string(i));
        if (levels[i].index_in(group) <= above.index_in(group))
          throw StructuralError("subgroup does not refine level " + std::to_string(i) + " (both have index " +
                                std::to_string(above.index_in(group)) + ")");
      }
    } catch (const StructuralError& e) {
      throw StructuralError(label + e.what());
    }
  }
  try {
    return SubgroupChain::create(std::move(group), std::move(levels), "explicit chain");
  } catch (const StructuralError& e) {
    throw StructuralError(std::string("[group] ") + e.what());
  }
}

CantorAction build_action(const ActionSpec& spec, const Rational& lambda) {
  if (spec.gallery == "warp")
    return gallery::warp_example(spec.depth, spec.fiber_generators, spec.free_generator, lambda);
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < spec.addresses.size(); ++i)
    if (!index.emplace(spec.addresses[i], static_cast<int>(i)).second)
      throw StructuralError("[action] duplicate address '" + spec.addresses[i] + "'");
  auto lookup = [&](const std::string& a, const char* where) {
    auto it = index.find(a);
    if (it == index.end()) throw StructuralError(std::string(where) + " unknown address '" + a + "'");
    return it->second;
  };
  CantorModel model;
  if (spec.metric == "tree") {
    std::vector<std::vector<int>> paths;
    for (const auto& a : spec.addresses) {
      std::vector<int> p;
      for (char c : a) p.push_back(static_cast<unsigned char>(c));
      paths.push_back(std::move(p));
    }
    model = CantorModel::tree(spec.addresses, paths, lambda);
  } else {
    const std::size_t n = spec.addresses.size();
    std::vector<std::vector<std::optional<Rational>>> t(n, std::vector<std::optional<Rational>>(n));
    for (std::size_t i = 0; i < n; ++i) t[i][i] = Rational(0);
    for (const auto& d : spec.distances) {
      const int a = lookup(d.a, "[distances]"), b = lookup(d.b, "[distances]");
      if (t[a][b] && a != b) throw StructuralError("[distances] pair " + d.a + " " + d.b + " given twice");
      t[a][b] = d.d;
      t[b][a] = d.d;
    }
    std::vector<std::vector<Rational>> table(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!t[i][j])
          throw StructuralError("[distances] missing pair " + spec.addresses[i] + " " + spec.addresses[j]);
        table[i][j] = *t[i][j];
      }
    model = CantorModel::explicit_table(spec.addresses, std::move(table));
  }
  std::vector<std::pair<std::string, std::vector<int>>> gens;
  for (const auto& g : spec.generators) {
    if (g.images.size() != spec.addresses.size())
      throw StructuralError("[action] generator " + g.name + " needs one image per address");
    std::vector<int> perm;
    for (const auto& im : g.images) perm.push_back(lookup(im, "[action]"));
    gens.emplace_back(g.name, std::move(perm));
  }
  return CantorAction::create(std::move(model), std::move(gens), lookup(spec.basepoint, "[action]"));
}

}  // namespace solenoid

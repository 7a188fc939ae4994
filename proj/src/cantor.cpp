#include "solenoid/cantor.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "solenoid/errors.hpp"
#include "solenoid/kernels.hpp"

namespace solenoid {

namespace {

void require_lambda(const Rational& lambda) {
  if (!(Rational(0) < lambda && lambda < Rational(1)))
    throw PreconditionError("metric base must lie strictly between 0 and 1, got " + lambda.str());
}

std::vector<Rational> powers(const Rational& lambda, int depth) {
  std::vector<Rational> p{Rational(1)};
  for (int j = 1; j <= depth; ++j) p.push_back(p.back() * lambda);
  return p;
}

}  // namespace

void CantorModel::assign_cylinders(const std::vector<std::vector<std::string>>& keys) {
  cylinders_.assign(depth_ + 1, std::vector<int>(labels_.size()));
  cylinder_counts_.assign(depth_ + 1, 0);
  for (int j = 0; j <= depth_; ++j) {
    std::map<std::string, int> ids;
    for (std::size_t a = 0; a < labels_.size(); ++a) {
      auto [it, inserted] = ids.try_emplace(keys[a][j], static_cast<int>(ids.size()));
      cylinders_[j][a] = it->second;
    }
    cylinder_counts_[j] = static_cast<int>(ids.size());
  }
  if (cylinder_counts_[depth_] != static_cast<int>(labels_.size()))
    throw PreconditionError("depth-" + std::to_string(depth_) + " cylinders are not singletons");
}

CantorModel CantorModel::tree(std::vector<std::string> labels, const std::vector<std::vector<int>>& paths,
                              Rational lambda) {
  require_lambda(lambda);
  if (labels.empty() || labels.size() != paths.size())
    throw PreconditionError("tree model needs one path per address");
  CantorModel m;
  m.depth_ = static_cast<int>(paths.front().size());
  std::vector<std::vector<std::string>> keys(paths.size());
  for (std::size_t a = 0; a < paths.size(); ++a) {
    if (static_cast<int>(paths[a].size()) != m.depth_)
      throw PreconditionError("address paths have unequal length");
    std::string key;
    keys[a].push_back(key);
    for (int s : paths[a]) {
      key += std::to_string(s) + '.';
      keys[a].push_back(key);
    }
  }
  m.labels_ = std::move(labels);
  m.assign_cylinders(keys);
  m.lambda_powers_ = powers(lambda, m.depth_);
  m.metric_ = TreeMetric{lambda};
  return m;
}

CantorModel CantorModel::explicit_table(std::vector<std::string> labels,
                                        std::vector<std::vector<Rational>> table) {
  const std::size_t n = labels.size();
  if (n == 0 || table.size() != n) throw PreconditionError("distance table does not match the address set");
  CantorModel m;
  m.depth_ = static_cast<int>(labels.front().size());
  std::vector<std::vector<std::string>> keys(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (static_cast<int>(labels[a].size()) != m.depth_)
      throw PreconditionError("addresses have unequal length");
    if (table[a].size() != n) throw PreconditionError("distance table is not square");
    for (int j = 0; j <= m.depth_; ++j) keys[a].push_back(labels[a].substr(0, j));
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Rational& d = table[a][b];
      if (d != table[b][a]) throw PreconditionError("distance table is not symmetric");
      if (d < Rational(0)) throw PreconditionError("negative distance");
      if ((a == b) != (d == Rational(0)))
        throw PreconditionError("distance must vanish exactly on equal addresses");
    }
  m.labels_ = std::move(labels);
  m.assign_cylinders(keys);
  m.metric_ = ExplicitMetric{std::move(table)};
  return m;
}

CantorModel CantorModel::warp(int depth, Rational lambda) {
  require_lambda(lambda);
  if (depth < 1 || depth > 12) throw PreconditionError("warp depth must lie in 1..12");
  const std::int64_t ymod = std::int64_t{1} << depth;
  struct Entry {
    std::vector<std::string> keys;
    WarpPoint point;
    std::string label;
  };
  std::vector<Entry> entries;
  {
    Entry w0;
    w0.point.collapsed = true;
    w0.label = "w0";
    w0.keys.assign(depth + 1, "!");
    w0.keys[0] = "";
    entries.push_back(std::move(w0));
  }
  for (std::int64_t xm = 1; xm < (std::int64_t{1} << depth); ++xm) {
    std::string xd;
    Rational x(0);
    Rational scale(1);
    for (int i = depth - 1; i >= 0; --i) {
      scale = scale / Rational(3);
      const bool two = (xm >> i) & 1;
      xd += two ? '2' : '0';
      if (two) x = x + Rational(2) * scale;
    }
    for (std::int64_t y = 0; y < ymod; ++y) {
      std::string yd;
      for (int i = 0; i < depth; ++i) yd += ((y >> i) & 1) ? '1' : '0';
      Entry e;
      e.point = WarpPoint{false, xd, y, x};
      e.label = xd + ":" + yd;
      e.keys.push_back("");
      for (int j = 1; j <= depth; ++j) {
        const std::string xp = xd.substr(0, j);
        e.keys.push_back(xp.find('2') == std::string::npos ? "!" : xp + ":" + yd.substr(0, j));
      }
      entries.push_back(std::move(e));
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.keys < b.keys; });
  CantorModel m;
  m.depth_ = depth;
  WarpMetric wm{lambda, depth, {}};
  std::vector<std::vector<std::string>> keys;
  for (auto& e : entries) {
    m.labels_.push_back(e.label);
    keys.push_back(std::move(e.keys));
    wm.points.push_back(std::move(e.point));
  }
  m.assign_cylinders(keys);
  m.lambda_powers_ = powers(lambda, depth);
  m.metric_ = std::move(wm);
  return m;
}

std::optional<int> CantorModel::index_of(std::string_view label) const {
  for (std::size_t a = 0; a < labels_.size(); ++a)
    if (labels_[a] == label) return static_cast<int>(a);
  return std::nullopt;
}

std::vector<int> CantorModel::cylinder_members(int depth, int a) const {
  std::vector<int> out;
  const int id = cylinders_[depth][a];
  for (std::size_t b = 0; b < labels_.size(); ++b)
    if (cylinders_[depth][b] == id) out.push_back(static_cast<int>(b));
  return out;
}

int CantorModel::cylinder_resolution(const std::vector<int>& set) const {
  std::vector<char> in(labels_.size(), 0);
  for (int a : set) in[a] = 1;
  for (int j = 0; j <= depth_; ++j) {
    std::vector<char> touched(cylinder_counts_[j], 0), missing(cylinder_counts_[j], 0);
    for (std::size_t b = 0; b < labels_.size(); ++b) (in[b] ? touched : missing)[cylinders_[j][b]] = 1;
    bool ok = true;
    for (int c = 0; c < cylinder_counts_[j] && ok; ++c) ok = !(touched[c] && missing[c]);
    if (ok) return j;
  }
  return depth_;
}

Rational warp_distance(const WarpMetric& m, const WarpPoint& a, const WarpPoint& b) {
  if (a.collapsed && b.collapsed) return Rational(0);
  if (a.collapsed) return b.x;
  if (b.collapsed) return a.x;
  Rational d1(0);
  if (a.y != b.y) d1 = pow(m.lambda, std::countr_zero(static_cast<std::uint64_t>(a.y ^ b.y)));
  return abs(a.x - b.x) + std::max(a.x, b.x) * d1;
}

Rational CantorModel::distance(int a, int b) const {
  if (a == b) return Rational(0);
  if (std::holds_alternative<TreeMetric>(metric_)) {
    for (int j = 1; j <= depth_; ++j)
      if (cylinders_[j][a] != cylinders_[j][b]) return lambda_powers_[j - 1];
    return Rational(0);
  }
  if (const auto* w = std::get_if<WarpMetric>(&metric_)) return warp_distance(*w, w->points[a], w->points[b]);
  return std::get<ExplicitMetric>(metric_).table[a][b];
}

Rational CantorModel::diameter(const std::vector<int>& set) const {
  Rational best(0);
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j) best = std::max(best, distance(set[i], set[j]));
  return best;
}

Rational CantorModel::set_distance(const std::vector<int>& a, const std::vector<int>& b) const {
  if (a.empty() || b.empty()) throw PreconditionError("distance to an empty set");
  Rational best = distance(a.front(), b.front());
  for (int x : a)
    for (int y : b) best = std::min(best, distance(x, y));
  return best;
}

CantorAction CantorAction::create(CantorModel model, std::vector<std::pair<std::string, std::vector<int>>> gens,
                                  int basepoint) {
  const std::size_t n = model.size();
  if (basepoint < 0 || static_cast<std::size_t>(basepoint) >= n)
    throw PreconditionError("basepoint outside the address set");
  CantorAction act;
  std::set<std::string> names;
  for (auto& [name, perm] : gens) {
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front())))
      throw PreconditionError("generator name must start with a letter: '" + name + "'");
    for (char c : name)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        throw PreconditionError("invalid character in generator name '" + name + "'");
    if (!names.insert(name).second) throw PreconditionError("duplicate generator name '" + name + "'");
    if (perm.size() != n) throw PreconditionError("generator '" + name + "' has the wrong domain size");
    std::vector<int> inv(n, -1);
    for (std::size_t a = 0; a < n; ++a) {
      const int b = perm[a];
      if (b < 0 || static_cast<std::size_t>(b) >= n || inv[b] != -1)
        throw PreconditionError("generator '" + name + "' is not a bijection");
      inv[b] = static_cast<int>(a);
    }
    act.gens_.push_back(Generator{name, std::move(perm), std::move(inv)});
  }
  act.model_ = std::move(model);
  act.basepoint_ = basepoint;
  return act;
}

std::vector<int> CantorAction::letters() const {
  std::vector<int> out;
  for (int g = 1; g <= static_cast<int>(gens_.size()); ++g) {
    out.push_back(g);
    out.push_back(-g);
  }
  return out;
}

CantorAction CantorAction::restricted(const std::vector<int>& generator_indices) const {
  CantorAction out;
  out.model_ = model_;
  out.basepoint_ = basepoint_;
  for (int i : generator_indices) out.gens_.push_back(gens_.at(i));
  return out;
}

Word parse_word(const CantorAction& action, std::string_view text) {
  std::string s(text);
  for (char& c : s)
    if (c == '*' || c == '.') c = ' ';
  std::istringstream in(s);
  Word w;
  std::string tok;
  while (in >> tok) {
    std::string name = tok;
    long long power = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      name = tok.substr(0, caret);
      const std::string p = tok.substr(caret + 1);
      std::size_t used = 0;
      try {
        power = std::stoll(p, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (p.empty() || used != p.size()) throw PreconditionError("bad exponent in word token '" + tok + "'");
      if (power > 1'000'000 || power < -1'000'000) throw PreconditionError("exponent too large in '" + tok + "'");
    }
    int letter = 0;
    for (std::size_t g = 0; g < action.generators().size(); ++g)
      if (action.generators()[g].name == name) letter = static_cast<int>(g) + 1;
    if (letter == 0) {
      if (name == "e" || name == "1") continue;
      throw PreconditionError("unknown generator '" + name + "' in word");
    }
    for (long long i = 0; i < (power < 0 ? -power : power); ++i) w.push_back(power < 0 ? -letter : letter);
  }
  return w;
}

std::string word_str(const CantorAction& action, const Word& word) {
  if (word.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < word.size();) {
    std::size_t j = i;
    while (j < word.size() && word[j] == word[i]) ++j;
    const long long run = static_cast<long long>(j - i) * (word[i] < 0 ? -1 : 1);
    if (!out.empty()) out += ' ';
    out += action.generators()[std::abs(word[i]) - 1].name;
    if (run != 1) out += "^" + std::to_string(run);
    i = j;
  }
  return out;
}

Word word_inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& l : out) l = -l;
  return out;
}

Word word_concat(const Word& w1, const Word& w2) {
  Word out = w1;
  out.insert(out.end(), w2.begin(), w2.end());
  return out;
}

int act(const CantorAction& action, const Word& word, int point) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) point = action.apply_letter(*it, point);
  return point;
}

std::vector<int> word_permutation(const CantorAction& action, const Word& word) {
  std::vector<int> p(action.size());
  std::iota(p.begin(), p.end(), 0);
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    for (int& x : p) x = action.apply_letter(*it, x);
  return p;
}

std::vector<int> orbit(const CantorAction& action, int point, int max_length) {
  std::vector<int> dist(action.size(), -1);
  std::deque<int> queue{point};
  dist[point] = 0;
  const auto letters = action.letters();
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    if (max_length >= 0 && dist[a] >= max_length) continue;
    for (int l : letters) {
      const int b = action.apply_letter(l, a);
      if (dist[b] < 0) {
        dist[b] = dist[a] + 1;
        queue.push_back(b);
      }
    }
  }
  std::vector<int> out;
  for (std::size_t a = 0; a < dist.size(); ++a)
    if (dist[a] >= 0) out.push_back(static_cast<int>(a));
  return out;
}

std::vector<int> full_orbit(const CantorAction& action, int point) { return orbit(action, point, -1); }

MinimalityResult is_minimal(const CantorAction& action) {
  MinimalityResult res;
  auto o = full_orbit(action, action.basepoint());
  res.minimal = o.size() == action.size();
  if (!res.minimal) res.witness_orbit = std::move(o);
  return res;
}

ModulusTable modulus_from_maxima(std::vector<ModulusRow> maxima, std::string method) {
  std::sort(maxima.begin(), maxima.end(), [](const ModulusRow& a, const ModulusRow& b) { return a.r < b.r; });
  ModulusTable t;
  t.method = std::move(method);
  for (auto& row : maxima) {
    if (!(Rational(0) < row.r)) continue;
    if (!t.rows.empty() && t.rows.back().r == row.r) {
      t.rows.back().kappa = std::max(t.rows.back().kappa, row.kappa);
      continue;
    }
    t.rows.push_back(row);
  }
  for (std::size_t i = 1; i < t.rows.size(); ++i) t.rows[i].kappa = std::max(t.rows[i].kappa, t.rows[i - 1].kappa);
  std::reverse(t.rows.begin(), t.rows.end());
  return t;
}

std::optional<Rational> ModulusTable::equicontinuity_witness(const Rational& epsilon) const {
  for (const auto& row : rows)
    if (row.kappa < epsilon) return row.r;
  return std::nullopt;
}

bool ModulusTable::is_isometric() const {
  return std::all_of(rows.begin(), rows.end(), [](const ModulusRow& r) { return r.r == r.kappa; });
}

int configured_pairwise_cap() {
  if (const char* env = std::getenv("SOLENOID_PAIRWISE_CAP")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1'000'000) return static_cast<int>(v);
  }
  return kDefaultPairwiseCap;
}

bool ModulusTable::is_monotone() const {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].r < rows[i - 1].r) || rows[i - 1].kappa < rows[i].kappa) return false;
  return true;
}

namespace {

int common_depth(const CantorModel& m, int a, int b) {
  int j = 0;
  while (j < m.depth() && m.cylinder(j + 1, a) == m.cylinder(j + 1, b)) ++j;
  return j;
}


void require_pairwise(const CantorAction& action, int cap, const char* what) {
  if (static_cast<std::int64_t>(action.size()) > cap)
    throw ResourceError(std::string(what) + " needs pairwise distances over " + std::to_string(action.size()) +
                        " addresses, above the limit of " + std::to_string(cap) + " (SOLENOID_PAIRWISE_CAP)");
}

bool generators_isometric(const CantorAction& action, int cap) {
  const auto& m = action.model();
  if (m.is_tree_metric()) {
    for (const auto& g : action.generators())
      for (int j = 1; j <= m.depth(); ++j) {
        std::vector<int> image(m.cylinder_count(j), -1);
        for (std::size_t a = 0; a < action.size(); ++a) {
          int& slot = image[m.cylinder(j, static_cast<int>(a))];
          const int c = m.cylinder(j, g.perm[a]);
          if (slot == -1) slot = c;
          else if (slot != c) return false;
        }
      }
    return true;
  }
  require_pairwise(action, cap, "isometry check");
  for (const auto& g : action.generators())
    for (std::size_t a = 0; a < action.size(); ++a)
      for (std::size_t b = a + 1; b < action.size(); ++b)
        if (m.distance(static_cast<int>(a), static_cast<int>(b)) != m.distance(g.perm[a], g.perm[b])) return false;
  return true;
}

}  // namespace

ModulusTable modulus_ultrametric(const CantorAction& action) {
  const auto& m = action.model();
  const auto* tm = std::get_if<TreeMetric>(&m.metric());
  if (!tm) throw PreconditionError("ultrametric modulus needs a tree metric");
  std::vector<ModulusRow> rows;
  Rational lam_j(1);
  for (int j = 0; j < m.depth(); ++j, lam_j = lam_j * tm->lambda) {
    const int count = m.cylinder_count(j);
    std::vector<int> first(count, -1);
    std::vector<char> split(count, 0);
    for (std::size_t a = 0; a < action.size(); ++a) {
      const int c = m.cylinder(j, static_cast<int>(a));
      if (first[c] < 0) first[c] = static_cast<int>(a);
      else if (m.cylinder(j + 1, first[c]) != m.cylinder(j + 1, static_cast<int>(a))) split[c] = 1;
    }
    if (std::none_of(split.begin(), split.end(), [](char s) { return s != 0; })) continue;
    int least = m.depth();
    for (const auto& g : action.generators())
      for (std::size_t a = 0; a < action.size(); ++a) {
        const int c = m.cylinder(j, static_cast<int>(a));
        least = std::min(least, common_depth(m, g.perm[first[c]], g.perm[a]));
      }
    rows.push_back({lam_j, pow(tm->lambda, least)});
  }
  return modulus_from_maxima(std::move(rows), "ultrametric");
}

ModulusTable modulus_table(const CantorAction& action, int pairwise_cap) {
  if (action.model().is_tree_metric()) return modulus_ultrametric(action);
  require_pairwise(action, pairwise_cap, "modulus table");
  return kernels::modulus_pairwise(action);
}

std::vector<std::vector<int>> enumerate_elements(const CantorAction& action, int max_length, std::size_t cap) {
  std::vector<int> id(action.size());
  std::iota(id.begin(), id.end(), 0);
  std::set<std::vector<int>> seen{id};
  std::vector<std::vector<int>> out{id};
  std::vector<std::vector<int>> frontier{id};
  const auto letters = action.letters();
  for (int len = 1; len <= max_length && !frontier.empty(); ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& p : frontier)
      for (int l : letters) {
        std::vector<int> q(p.size());
        for (std::size_t a = 0; a < p.size(); ++a) q[a] = action.apply_letter(l, p[a]);
        if (seen.insert(q).second) {
          if (out.size() >= cap)
            throw ResourceError("more than " + std::to_string(cap) + " group elements up to word length " +
                                std::to_string(max_length));
          out.push_back(q);
          next.push_back(std::move(q));
        }
      }
    frontier = std::move(next);
  }
  return out;
}

DistalityResult is_distal(const CantorAction& action, int max_length, int pairwise_cap) {
  const auto& m = action.model();
  if (generators_isometric(action, pairwise_cap)) {
    DistalityResult res;
    res.method = "isometry";
    res.distal = true;
    bool first = true;
    if (m.is_tree_metric()) {
      const auto& tm = std::get<TreeMetric>(m.metric());
      for (int j = m.depth() - 1; j >= 0 && first; --j) {
        std::vector<int> seen(m.cylinder_count(j), -1);
        for (std::size_t a = 0; a < action.size() && first; ++a) {
          int& s = seen[m.cylinder(j, static_cast<int>(a))];
          if (s < 0) s = static_cast<int>(a);
          else if (m.cylinder(j + 1, s) != m.cylinder(j + 1, static_cast<int>(a))) {
            res.min_delta = pow(tm.lambda, j);
            res.worst_a = s;
            res.worst_b = static_cast<int>(a);
            first = false;
          }
        }
      }
    } else {
      for (std::size_t a = 0; a < action.size(); ++a)
        for (std::size_t b = a + 1; b < action.size(); ++b) {
          const Rational d = m.distance(static_cast<int>(a), static_cast<int>(b));
          if (first || d < res.min_delta) {
            res.min_delta = d;
            res.worst_a = static_cast<int>(a);
            res.worst_b = static_cast<int>(b);
            first = false;
          }
        }
    }
    return res;
  }
  require_pairwise(action, pairwise_cap, "distality check");
  return kernels::distality_pairwise(action, enumerate_elements(action, max_length));
}

bool is_invariant(const CantorAction& action, const std::vector<Rational>& weights) {
  for (const auto& g : action.generators())
    for (std::size_t a = 0; a < action.size(); ++a)
      if (weights[g.perm[a]] != weights[a]) return false;
  return true;
}

CylinderMeasure invariant_measure(const CantorAction& action) {
  CylinderMeasure mu;
  mu.support = full_orbit(action, action.basepoint());
  mu.full_support = mu.support.size() == action.size();
  mu.weights.assign(action.size(), Rational(0));
  const Rational w(1, static_cast<std::int64_t>(mu.support.size()));
  for (int a : mu.support) mu.weights[a] = w;
  mu.verified = is_invariant(action, mu.weights);
  if (!mu.verified) throw InvariantViolation("orbit-uniform measure failed the pushforward check");
  return mu;
}

HolonomyResult germinal_holonomy(const CantorAction& action, const Word& word, int w) {
  if (act(action, word, w) != w)
    throw PreconditionError("word '" + word_str(action, word) + "' does not fix " + action.model().label(w));
  const auto& m = action.model();
  const auto perm = word_permutation(action, word);
  for (int j = 0; j < m.depth(); ++j) {
    const auto cyl = m.cylinder_members(j, w);
    if (std::all_of(cyl.begin(), cyl.end(), [&](int a) { return perm[a] == a; })) return HolonomyTrivial{j};
  }
  HolonomyNontrivial res{m.depth(), m.depth() - 1, -1, -1};
  for (int a : m.cylinder_members(m.depth() - 1, w))
    if (perm[a] != a) {
      res.moved_address = a;
      res.moved_to = perm[a];
      break;
    }
  return res;
}

int schreier_diameter(const CantorAction& action) {
  int diam = 0;
  const auto letters = action.letters();
  const std::size_t n = action.size();
  std::vector<int> dist(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<int> queue{static_cast<int>(s)};
    dist[s] = 0;
    while (!queue.empty()) {
      const int a = queue.front();
      queue.pop_front();
      diam = std::max(diam, dist[a]);
      for (int l : letters) {
        const int b = action.apply_letter(l, a);
        if (dist[b] < 0) {
          dist[b] = dist[a] + 1;
          queue.push_back(b);
        }
      }
    }
  }
  return diam;
}

namespace {

template <typename Violates>
TriangleCheck check_triples(const CantorModel& model, std::size_t exhaustive_limit, std::size_t samples,
                            std::uint64_t seed, Violates violates) {
  TriangleCheck res;
  const std::size_t n = model.size();
  auto test = [&](std::size_t a, std::size_t b, std::size_t c) {
    ++res.triples_checked;
    if (violates(model.distance(a, c), model.distance(a, b), model.distance(b, c))) {
      res.holds = false;
      res.a = static_cast<int>(a);
      res.b = static_cast<int>(b);
      res.c = static_cast<int>(c);
      return true;
    }
    return false;
  };
  if (n <= exhaustive_limit) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (test(a, b, c)) return res;
    return res;
  }
  res.exhaustive = false;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t i = 0; i < samples; ++i)
    if (test(pick(rng), pick(rng), pick(rng))) return res;
  return res;
}

}  // namespace

TriangleCheck check_triangle(const CantorModel& model, std::size_t exhaustive_limit, std::size_t samples,
                             std::uint64_t seed) {
  return check_triples(model, exhaustive_limit, samples, seed,
                       [](const Rational& ac, const Rational& ab, const Rational& bc) { return ab + bc < ac; });
}

TriangleCheck check_ultrametric(const CantorModel& model, std::size_t exhaustive_limit, std::size_t samples,
                                std::uint64_t seed) {
  return check_triples(model, exhaustive_limit, samples, seed,
                       [](const Rational& ac, const Rational& ab, const Rational& bc) { return std::max(ab, bc) < ac; });
}

}  // namespace solenoid

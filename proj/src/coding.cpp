#include "solenoid/coding.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "solenoid/errors.hpp"

namespace solenoid {

ClopenPartition ClopenPartition::from_blocks(std::vector<std::vector<int>> blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::erase_if(blocks, [](const std::vector<int>& b) { return b.empty(); });
  std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return ClopenPartition{std::move(blocks)};
}

std::vector<int> ClopenPartition::labels(std::size_t size) const {
  std::vector<int> out(size, 0);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (int a : blocks[i]) {
      if (out[a] != 0) throw InvariantViolation("partition blocks overlap at address " + std::to_string(a));
      out[a] = static_cast<int>(i) + 1;
    }
  return out;
}

namespace {

int position(const std::vector<int>& sorted, int a) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), a);
  return it != sorted.end() && *it == a ? static_cast<int>(it - sorted.begin()) : -1;
}

void require_window(const CantorAction& action, const std::vector<int>& window) {
  if (!std::is_sorted(window.begin(), window.end()) || position(window, action.basepoint()) < 0)
    throw PreconditionError("window must be an ascending address set containing the basepoint");
}

}  // namespace

namespace {

// Breadth-first search over restrictions to W, one word length at a time.
class ReturnWordSearch {
 public:
  ReturnWordSearch(const CantorAction& action, const std::vector<int>& window, std::size_t budget)
      : action_(action), window_(window), budget_(budget), letters_(action.letters()) {
    require_window(action, window);
    k0_ = position(window, action.basepoint());
    seen_.insert(window);
    frontier_.emplace_back(window, Word{});
    keep(window, Word{});
    out_.states = 1;
  }

  const ReturnWordSet& result() const { return out_; }
  int length() const { return out_.max_length; }
  bool closed() const { return out_.closed; }

  void extend() {
    const int len = out_.max_length + 1;
    std::vector<std::pair<std::vector<int>, Word>> next;
    for (const auto& [image, word] : frontier_)
      for (int l : letters_) {
        std::vector<int> img(image.size());
        for (std::size_t k = 0; k < image.size(); ++k) img[k] = action_.apply_letter(l, image[k]);
        if (!seen_.insert(img).second) continue;
        if (seen_.size() * window_.size() > budget_)
          throw ResourceError("return-word enumeration exceeded " + std::to_string(budget_) +
                              " stored images at word length " + std::to_string(len));
        Word w{l};
        w.insert(w.end(), word.begin(), word.end());
        keep(img, w);
        next.emplace_back(std::move(img), std::move(w));
      }
    frontier_ = std::move(next);
    out_.max_length = len;
    out_.closed = frontier_.empty();
    out_.states = seen_.size();
  }

 private:
  void keep(const std::vector<int>& image, const Word& w) {
    if (position(window_, image[k0_]) >= 0) {
      out_.words.push_back(w);
      out_.images.push_back(image);
    }
  }

  const CantorAction& action_;
  const std::vector<int>& window_;
  std::size_t budget_;
  std::vector<int> letters_;
  int k0_ = 0;
  std::set<std::vector<int>> seen_;
  std::vector<std::pair<std::vector<int>, Word>> frontier_;
  ReturnWordSet out_;
};

}  // namespace

ReturnWordSet return_words(const CantorAction& action, const std::vector<int>& window, int max_length,
                           std::size_t budget) {
  if (max_length < 0) throw PreconditionError("word length bound must be nonnegative");
  ReturnWordSearch search(action, window, budget);
  while (search.length() < max_length && !search.closed()) search.extend();
  ReturnWordSet out = search.result();
  out.max_length = max_length;
  return out;
}

int code(const CantorAction& action, const std::vector<int>& window, const ClopenPartition& partition, int u,
         const Word& word) {
  if (position(window, u) < 0) throw PreconditionError("coded address lies outside the window");
  const int img = act(action, word, u);
  for (std::size_t i = 0; i < partition.blocks.size(); ++i)
    if (std::binary_search(partition.blocks[i].begin(), partition.blocks[i].end(), img))
      return static_cast<int>(i) + 1;
  return 0;
}

std::vector<int> compute_V(const CantorAction& action, const std::vector<int>& window,
                           const ClopenPartition& partition, const ReturnWordSet& words) {
  require_window(action, window);
  const auto labels = partition.labels(action.size());
  const int k0 = position(window, action.basepoint());
  std::vector<int> out;
  for (std::size_t k = 0; k < window.size(); ++k) {
    bool same = true;
    for (std::size_t i = 0; i < words.images.size() && same; ++i)
      same = labels[words.images[i][k]] == labels[words.images[i][k0]];
    if (same) out.push_back(window[k]);
  }
  return out;
}

std::vector<int> refine_fixed_point(const CantorAction& action, const std::vector<int>& window,
                                    const ClopenPartition& partition) {
  require_window(action, window);
  const std::size_t n = action.size();
  std::vector<int> cls = partition.labels(n);
  std::vector<int> in(n, 0);
  for (int a : window) in[a] = 1;
  for (std::size_t a = 0; a < n; ++a)
    if (in[a] && cls[a] == 0) cls[a] = static_cast<int>(partition.blocks.size()) + 1;
  std::size_t classes = 0;
  for (;;) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> next(n);
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<int> sig{cls[a]};
      for (const auto& g : action.generators()) sig.push_back(cls[g.perm[a]]);
      next[a] = ids.try_emplace(std::move(sig), static_cast<int>(ids.size())).first->second;
    }
    cls = std::move(next);
    if (ids.size() == classes) return cls;
    classes = ids.size();
  }
}

std::vector<int> fixed_point_block(const CantorAction& action, const std::vector<int>& window,
                                   const ClopenPartition& partition) {
  const auto cls = refine_fixed_point(action, window, partition);
  std::vector<int> out;
  for (int a : window)
    if (cls[a] == cls[action.basepoint()]) out.push_back(a);
  return out;
}

std::vector<Translate> translates(const CantorAction& action, const std::vector<int>& window,
                                  const std::vector<int>& v, const ReturnWordSet& words) {
  std::vector<int> pos;
  for (int a : v) {
    const int p = position(window, a);
    if (p < 0) throw PreconditionError("V must lie inside the window");
    pos.push_back(p);
  }
  std::map<std::vector<int>, Word> found;
  std::vector<std::vector<int>> order;
  for (std::size_t i = 0; i < words.images.size(); ++i) {
    std::vector<int> s;
    for (int p : pos) s.push_back(words.images[i][p]);
    std::sort(s.begin(), s.end());
    if (found.try_emplace(s, words.words[i]).second) order.push_back(s);
  }
  std::vector<int> owner(action.size(), -1);
  std::vector<Translate> out;
  for (const auto& s : order) {
    for (int a : s) {
      if (position(window, a) < 0)
        throw InvariantViolation("translate under '" + word_str(action, found[s]) + "' leaves the window");
      if (owner[a] >= 0)
        throw InvariantViolation("translates under '" + word_str(action, found[s]) + "' and '" +
                                 word_str(action, out[owner[a]].word) + "' overlap without being equal");
      owner[a] = static_cast<int>(out.size());
    }
    out.push_back(Translate{s, found[s]});
  }
  std::sort(out.begin() + 1, out.end(),
            [](const Translate& a, const Translate& b) { return a.set.front() < b.set.front(); });
  return out;
}

namespace {

std::vector<int> image(const CantorAction& action, const Word& w, const std::vector<int>& set) {
  std::vector<int> out;
  for (int a : set) out.push_back(act(action, w, a));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> set_minus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Pieces of `base` at depth j: intersections with depth-j cylinders.
std::vector<std::vector<int>> pieces(const CantorModel& m, const std::vector<int>& base, int j) {
  std::map<int, std::vector<int>> by;
  for (int a : base) by[m.cylinder(j, a)].push_back(a);
  std::vector<std::vector<int>> out;
  for (auto& [c, p] : by) out.push_back(std::move(p));
  return out;
}

struct Stage {
  int depth;
  ClopenPartition partition;
};

Stage choose_partition(const CantorAction& action, const std::vector<int>& window, const std::vector<int>& base,
                       const std::vector<Translate>& family, const Rational& epsilon, int min_depth) {
  const auto& m = action.model();
  for (int j = std::max(min_depth, m.cylinder_resolution(base)); j <= m.depth(); ++j) {
    std::vector<std::vector<int>> blocks;
    bool ok = true;
    for (const auto& p : pieces(m, base, j)) {
      for (const auto& t : family) {
        auto b = image(action, t.word, p);
        if (!(m.diameter(b) < epsilon)) {
          ok = false;
          break;
        }
        blocks.push_back(std::move(b));
      }
      if (!ok) break;
    }
    if (!ok) continue;
    std::vector<int> covered;
    for (const auto& b : blocks) covered.insert(covered.end(), b.begin(), b.end());
    std::sort(covered.begin(), covered.end());
    auto rest = set_minus(window, covered);
    if (!rest.empty()) blocks.push_back(std::move(rest));
    return Stage{j, ClopenPartition::from_blocks(std::move(blocks))};
  }
  throw InvariantViolation("no cylinder depth separates the window below epsilon " + epsilon.str());
}

std::optional<Rational> block_separation(const CantorModel& m, const ClopenPartition& p,
                                         const std::vector<int>& window, bool include_outside) {
  std::optional<Rational> best;
  auto consider = [&](const Rational& d) {
    if (!best || d < *best) best = d;
  };
  for (std::size_t i = 0; i < p.blocks.size(); ++i)
    for (std::size_t j = i + 1; j < p.blocks.size(); ++j) consider(m.set_distance(p.blocks[i], p.blocks[j]));
  if (include_outside) {
    std::vector<int> all(m.size());
    for (std::size_t a = 0; a < all.size(); ++a) all[a] = static_cast<int>(a);
    const auto outside = set_minus(all, window);
    if (!outside.empty()) consider(m.set_distance(window, outside));
  }
  return best;
}

bool all_singletons(const ClopenPartition& p) {
  return std::all_of(p.blocks.begin(), p.blocks.end(), [](const auto& b) { return b.size() == 1; });
}

}  // namespace

CodingChain coding_chain(const CantorAction& action, const CodingOptions& opts) {
  const auto& m = action.model();
  if (opts.window_depth < 0 || opts.window_depth > m.depth())
    throw PreconditionError("window depth must lie in 0.." + std::to_string(m.depth()));
  if (opts.word_length < 0) throw PreconditionError("word length bound must be nonnegative");
  CodingChain chain;
  chain.window_depth = opts.window_depth;
  chain.window = m.cylinder_members(opts.window_depth, action.basepoint());
  chain.minimal = is_minimal(action).minimal;
  chain.schreier_diameter = schreier_diameter(action);
  if (chain.window.size() == 1) {
    chain.stop_reason = "single-address window";
    return chain;
  }
  chain.modulus = modulus_table(action, opts.pairwise_cap);
  const auto& window = chain.window;
  const int max_length = std::max(opts.word_length, chain.schreier_diameter);

  std::vector<int> base = window;
  std::vector<Translate> family{Translate{window, Word{}}};
  ReturnWordSearch search(action, window, opts.budget);
  bool budget_hit = false;
  Rational epsilon = m.diameter(window);
  int min_depth = opts.window_depth;
  for (int level = 1; level <= opts.max_levels; ++level) {
    CodingLevel lv;
    lv.level = level;
    lv.epsilon = epsilon;
    Stage st = choose_partition(action, window, base, family, epsilon, min_depth);
    lv.partition_depth = st.depth;
    lv.partition = std::move(st.partition);
    lv.eta = block_separation(m, lv.partition, window, level == 1);
    if (lv.eta) {
      lv.delta = chain.modulus.equicontinuity_witness(*lv.eta);
      if (!lv.delta) {
        const bool below_resolution = chain.modulus.rows.empty() || !(chain.modulus.rows.back().r < *lv.eta);
        if (!below_resolution && !all_singletons(lv.partition)) {
          chain.aborted = true;
          chain.stop_reason = "not equicontinuous at level " + std::to_string(level) +
                              ": no tabled delta with kappa(delta) < eta = " + lv.eta->str();
          return chain;
        }
        lv.resolution_limit = true;
      }
    }
    // one shared search, grown a letter at a time until V agrees with the refinement
    const auto refined = fixed_point_block(action, window, lv.partition);
    for (;;) {
      const auto& words = search.result();
      lv.v = compute_V(action, window, lv.partition, words);
      lv.fixed_point_agrees = lv.v == refined;
      lv.translates = translates(action, window, lv.v, words);
      std::size_t covered = 0;
      for (const auto& t : lv.translates) covered += t.set.size();
      lv.covers_window = covered == window.size();
      const bool settled = lv.fixed_point_agrees && (lv.covers_window || !chain.minimal);
      if (settled || search.closed() || search.length() >= max_length || budget_hit) break;
      try {
        search.extend();
      } catch (const ResourceError&) {
        budget_hit = true;
      }
    }
    lv.words = search.result();
    std::vector<const std::vector<int>*> outputs{&lv.v};
    for (const auto& t : lv.translates) outputs.push_back(&t.set);
    for (const auto* o : outputs)
      if (m.cylinder_resolution(*o) > lv.partition_depth) {
        chain.aborted = true;
        chain.stop_reason = "not equicontinuous at level " + std::to_string(level) +
                            ": codes are not constant on depth-" + std::to_string(lv.partition_depth) +
                            " cylinders";
        return chain;
      }
    min_depth = lv.partition_depth;
    base = lv.v;
    family = lv.translates;
    Rational smallest = m.diameter(family.front().set);
    for (const auto& t : family) smallest = std::min(smallest, m.diameter(t.set));
    const bool singleton = lv.v.size() == 1;
    chain.levels.push_back(std::move(lv));
    if (singleton || smallest == Rational(0)) {
      chain.stop_reason = "singletons";
      return chain;
    }
    epsilon = smallest / Rational(2);
  }
  chain.stop_reason = "levels";
  return chain;
}

LemmaReport check_lemmas(const CantorAction& action, const CodingChain& chain) {
  LemmaReport rep;
  const auto& m = action.model();
  const auto& window = chain.window;
  auto fail = [&](LemmaCounts& c, const std::string& msg) {
    ++c.violations;
    if (rep.messages.size() < 16) rep.messages.push_back(msg);
  };
  std::vector<Word> short_words{Word{}};
  for (int l : action.letters()) short_words.push_back(Word{l});
  for (std::size_t li = 0; li < chain.levels.size(); ++li) {
    const auto& lv = chain.levels[li];
    const std::string at = "level " + std::to_string(lv.level) + ": ";
    std::vector<int> vpos;
    for (int a : lv.v) vpos.push_back(position(window, a));

    for (const auto& img : lv.words.images) {
      ++rep.fixset.checks;
      std::vector<int> s;
      for (int p : vpos) s.push_back(img[p]);
      std::sort(s.begin(), s.end());
      std::vector<int> common;
      std::set_intersection(s.begin(), s.end(), lv.v.begin(), lv.v.end(), std::back_inserter(common));
      if (!common.empty() && s != lv.v) fail(rep.fixset, at + "an image of V meets V without equality");
    }

    std::vector<int> owner(action.size(), -1);
    std::size_t covered = 0;
    for (std::size_t t = 0; t < lv.translates.size(); ++t)
      for (int a : lv.translates[t].set) {
        ++rep.disjointness.checks;
        if (owner[a] >= 0) fail(rep.disjointness, at + "translates overlap at " + m.label(a));
        owner[a] = static_cast<int>(t);
        ++covered;
      }
    if (chain.minimal) {
      ++rep.coverage.checks;
      if (covered != window.size()) fail(rep.coverage, at + "translates do not cover the window");
    }

    for (std::size_t k = 0; k < window.size(); ++k)
      for (std::size_t i = 0; i < lv.words.words.size(); ++i) {
        const int moved = lv.words.images[i][k];
        if (position(window, moved) < 0) continue;
        for (const auto& g : short_words) {
          ++rep.equivariance.checks;
          const int lhs = code(action, window, lv.partition, moved, g);
          const int rhs = code(action, window, lv.partition, window[k], word_concat(g, lv.words.words[i]));
          if (lhs != rhs)
            fail(rep.equivariance, at + "code at " + m.label(moved) + " disagrees with the composed code at " +
                                       m.label(window[k]));
        }
      }

    auto check_cylinders = [&](const std::vector<int>& s, const std::string& what) {
      ++rep.local_constancy.checks;
      if (m.cylinder_resolution(s) > lv.partition_depth)
        fail(rep.local_constancy, at + what + " is not a union of depth-" + std::to_string(lv.partition_depth) +
                                      " cylinders");
    };
    check_cylinders(lv.v, "V");
    for (const auto& t : lv.translates) check_cylinders(t.set, "translate " + word_str(action, t.word));

    ++rep.nesting.checks;
    if (!std::binary_search(lv.v.begin(), lv.v.end(), action.basepoint()))
      fail(rep.nesting, at + "V misses the basepoint");
    for (const auto& t : lv.translates) {
      ++rep.nesting.checks;
      if (!(m.diameter(t.set) < lv.epsilon)) fail(rep.nesting, at + "translate diameter not below epsilon");
    }
    if (li > 0) {
      const auto& prev = chain.levels[li - 1];
      ++rep.nesting.checks;
      if (!std::includes(prev.v.begin(), prev.v.end(), lv.v.begin(), lv.v.end()))
        fail(rep.nesting, at + "V is not nested in the previous level");
      ++rep.nesting.checks;
      if (!(lv.epsilon < prev.epsilon / Rational(2))) fail(rep.nesting, at + "epsilon did not halve");
    }
  }
  return rep;
}

}  // namespace solenoid

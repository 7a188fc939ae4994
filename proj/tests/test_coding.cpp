#include <map>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "random_actions.hpp"
#include "solenoid/coding.hpp"
#include "solenoid/errors.hpp"
#include "solenoid/gallery.hpp"
#include "solenoid/tower.hpp"

using namespace solenoid;

namespace {

std::vector<int> ids(const CantorAction& a, std::initializer_list<const char*> labels) {
  std::vector<int> out;
  for (const char* l : labels) out.push_back(*a.model().index_of(l));
  std::sort(out.begin(), out.end());
  return out;
}

// All restrictions to W of words of length <= L that map W into itself, by plain enumeration.
std::set<std::vector<int>> returning_restrictions(const CantorAction& action, const std::vector<int>& w, int L) {
  std::set<std::vector<int>> out;
  std::vector<Word> frontier{{}};
  const std::set<int> in(w.begin(), w.end());
  for (int len = 0; len <= L; ++len) {
    std::vector<Word> next;
    for (const auto& word : frontier) {
      std::vector<int> img;
      bool inside = true;
      for (int u : w) {
        img.push_back(act(action, word, u));
        inside = inside && in.count(img.back());
      }
      if (inside) out.insert(img);
      if (len < L)
        for (int l : action.letters()) {
          Word longer = word;
          longer.insert(longer.begin(), l);
          next.push_back(std::move(longer));
        }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

TEST_SUITE("coding") {

TEST_CASE("dyadic odometer: first level") {
  auto action = boundary_action(gallery::vietoris(2, 3), 3);
  auto chain = coding_chain(action);
  CHECK(chain.window == ids(action, {"0.0.0", "0.2.2", "0.0.4", "0.2.6"}));
  REQUIRE(chain.levels.size() >= 1);
  const auto& l1 = chain.levels[0];
  CHECK(l1.v == ids(action, {"0.0.0", "0.0.4"}));
  CHECK(l1.epsilon == Rational(1, 2));
  CHECK(l1.fixed_point_agrees);
  CHECK(l1.covers_window);

  auto rw = return_words(action, chain.window, 2);
  bool has_t2 = false;
  for (const auto& w : rw.words) has_t2 = has_t2 || word_str(action, w) == "t^2";
  CHECK(has_t2);
  const int two = *action.model().index_of("0.2.2");
  CHECK(code(action, chain.window, l1.partition, two, parse_word(action, "t^2")) == 1);
  CHECK(code(action, chain.window, l1.partition, two, parse_word(action, "t^4")) == 2);
  CHECK_THROWS_AS(code(action, chain.window, l1.partition, *action.model().index_of("1.1.1"), {}),
                  PreconditionError);
  CHECK(chain.stop_reason == "singletons");
}

TEST_CASE("return word classes on small examples") {
  auto model = CantorModel::explicit_table({"a", "b"}, {{0, 1}, {1, 0}});
  auto still = CantorAction::create(model, {{"e", {0, 1}}}, 0);
  auto trivial = return_words(still, {0, 1}, 4);
  CHECK(trivial.words.size() == 1);
  CHECK(trivial.words[0].empty());

  auto odo = boundary_action(gallery::vietoris(2, 3), 3);
  const auto evens = ids(odo, {"0.0.0", "0.2.2", "0.0.4", "0.2.6"});
  auto rw = return_words(odo, evens, 4);
  std::set<std::string> names;
  for (const auto& w : rw.words) names.insert(word_str(odo, w));
  CHECK(names == std::set<std::string>{"e", "t^2", "t^-2", "t^4"});

  std::vector<int> all(odo.size());
  std::iota(all.begin(), all.end(), 0);
  CHECK(return_words(odo, all, 3).words.size() == 7);
}

TEST_CASE("codes, V and translates on the dyadic example") {
  auto odo = boundary_action(gallery::vietoris(2, 3), 3);
  const auto evens = ids(odo, {"0.0.0", "0.2.2", "0.0.4", "0.2.6"});
  auto part = ClopenPartition::from_blocks({ids(odo, {"0.0.0", "0.0.4"}), ids(odo, {"0.2.2", "0.2.6"})});
  auto rw = return_words(odo, evens, 4);
  const int two = *odo.model().index_of("0.2.2");
  CHECK(code(odo, evens, part, two, parse_word(odo, "t^2")) == 1);
  CHECK(code(odo, evens, part, two, parse_word(odo, "t")) == 0);
  for (const auto& w : rw.words) CHECK(code(odo, evens, part, odo.basepoint(), w) != 0);
  const auto v = compute_V(odo, evens, part, rw);
  CHECK(v == ids(odo, {"0.0.0", "0.0.4"}));
  CHECK(v == fixed_point_block(odo, evens, part));
  auto tr = translates(odo, evens, v, rw);
  REQUIRE(tr.size() == 2);
  CHECK(tr[0].word.empty());
  CHECK(tr[0].set == v);
  CHECK(tr[1].set == ids(odo, {"0.2.2", "0.2.6"}));

  // invariant window with a single block
  std::vector<int> all(odo.size());
  std::iota(all.begin(), all.end(), 0);
  auto one = ClopenPartition::from_blocks({all});
  auto rw_all = return_words(odo, all, 3);
  CHECK(compute_V(odo, all, one, rw_all) == all);
  CHECK(translates(odo, all, all, rw_all).size() == 1);
  const auto cls = refine_fixed_point(odo, all, one);
  CHECK(std::set<int>(cls.begin(), cls.end()).size() == 1);
}

TEST_CASE("overlapping translates are a hard error") {
  auto model = CantorModel::explicit_table({"a", "b", "c"}, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  auto cyc = CantorAction::create(model, {{"s", {1, 2, 0}}}, 0);
  std::vector<int> all{0, 1, 2};
  auto rw = return_words(cyc, all, 2);
  CHECK_THROWS_AS(translates(cyc, all, {0, 1}, rw), InvariantViolation);
}

TEST_CASE("return words are complete against plain enumeration") {
  const std::uint64_t seed = 41;
  MESSAGE("seed " << seed);
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 12; ++trial) {
    auto action = testutil::random_tree_action(rng, 48);
    const auto& m = action.model();
    auto window = m.cylinder_members(std::min(1, m.depth()), action.basepoint());
    const int L = action.generators().size() > 1 ? 3 : 4;
    auto rw = return_words(action, window, L);
    const std::set<std::vector<int>> got(rw.images.begin(), rw.images.end());
    CHECK(got == returning_restrictions(action, window, L));
    for (std::size_t i = 0; i < rw.words.size(); ++i) {
      CHECK(static_cast<int>(rw.words[i].size()) <= L);
      for (std::size_t k = 0; k < window.size(); ++k) CHECK(act(action, rw.words[i], window[k]) == rw.images[i][k]);
    }
  }
}

TEST_CASE("coding blocks match the core cylinders on boundary actions") {
  struct Case {
    SubgroupChain chain;
    int depth;
  };
  for (auto c : {Case{gallery::vietoris(2, 4), 4}, Case{gallery::vietoris(3, 3), 3},
                 Case{gallery::small_fo_variant(2), 2}, Case{gallery::rogers_tollefson(4), 4}}) {
    auto tower = build_tower(c.chain, c.depth);
    auto action = boundary_action(c.chain, tower);
    auto chain = coding_chain(action);
    CHECK_FALSE(chain.aborted);
    for (const auto& level : chain.levels) {
      auto core = normal_core_by_generators(c.chain.group(), c.chain.level(level.partition_depth));
      auto cyl = subgroup_cylinder(c.chain, tower, core);
      std::sort(cyl.begin(), cyl.end());
      CHECK(level.v == cyl);
    }
    auto lemmas = check_lemmas(action, chain);
    CHECK(lemmas.ok());
  }
}

TEST_CASE("lemmas hold on random tree actions") {
  const std::uint64_t seed = 2024;
  MESSAGE("seed " << seed);
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 10; ++trial) {
    auto action = testutil::random_tree_action(rng, 128);
    auto chain = coding_chain(action);
    auto lemmas = check_lemmas(action, chain);
    for (const auto& msg : lemmas.messages) MESSAGE(msg);
    CHECK(lemmas.ok());
    for (std::size_t i = 1; i < chain.levels.size(); ++i) {
      CHECK(chain.levels[i].epsilon * 2 <= chain.levels[i - 1].epsilon);
      CHECK(std::includes(chain.levels[i - 1].v.begin(), chain.levels[i - 1].v.end(), chain.levels[i].v.begin(),
                          chain.levels[i].v.end()));
    }
  }
}

TEST_CASE("warp action with the free generator is not equicontinuous") {
  auto action = gallery::warp_example(4, 1);
  auto chain = coding_chain(action);
  CHECK(chain.aborted);
  CHECK(chain.stop_reason.rfind("not equicontinuous", 0) == 0);
  CHECK(chain.levels.empty());
}

TEST_CASE("fiber-only warp action codes down to singletons") {
  auto action = gallery::warp_example(4, 2, false);
  auto chain = coding_chain(action);
  CHECK_FALSE(chain.aborted);
  CHECK(chain.stop_reason == "singletons");
  CHECK(check_lemmas(action, chain).ok());
}

TEST_CASE("single-address window gives an empty chain") {
  auto action = boundary_action(gallery::vietoris(2, 1), 1);
  auto chain = coding_chain(action);
  CHECK(chain.window.size() == 1);
  CHECK(chain.levels.empty());
  CHECK(chain.stop_reason == "single-address window");
}

TEST_CASE("translates of V tile the window") {
  auto action = boundary_action(gallery::small_fo_variant(2), 2);
  auto chain = coding_chain(action);
  REQUIRE_FALSE(chain.levels.empty());
  const auto& l = chain.levels[0];
  std::map<int, int> hits;
  for (const auto& t : l.translates)
    for (int a : t.set) ++hits[a];
  CHECK(hits.size() == chain.window.size());
  for (const auto& [a, n] : hits) CHECK(n == 1);
  for (const auto& t : l.translates) {
    std::vector<int> img;
    for (int a : l.v) img.push_back(act(action, t.word, a));
    std::sort(img.begin(), img.end());
    CHECK(img == t.set);
  }
}

}

#include <random>
#include <set>

#include "doctest.h"
#include "random_actions.hpp"
#include "solenoid/errors.hpp"
#include "solenoid/gallery.hpp"
#include "solenoid/kernels.hpp"
#include "solenoid/tower.hpp"

using namespace solenoid;

namespace {

CantorAction expanding_action() {
  const Rational q(1, 4);
  auto model = CantorModel::explicit_table({"a", "b", "c"}, {{0, q, 1}, {q, 0, 1}, {1, 1, 0}});
  return CantorAction::create(std::move(model), {{"s", {0, 2, 1}}}, 0);
}

// κ(r) straight from the definition: worst image distance over pairs at distance <= r.
Rational kappa_by_definition(const CantorAction& action, const Rational& r) {
  const auto& m = action.model();
  Rational best(0);
  for (std::size_t a = 0; a < action.size(); ++a)
    for (std::size_t b = 0; b < action.size(); ++b) {
      if (a == b || r < m.distance(a, b)) continue;
      for (const auto& g : action.generators()) best = std::max(best, m.distance(g.perm[a], g.perm[b]));
    }
  return best;
}

bool fixes_cylinder(const CantorAction& action, const Word& w, int point, int depth) {
  const auto& m = action.model();
  for (int a : m.cylinder_members(depth, point))
    if (act(action, w, a) != a) return false;
  return true;
}

}  // namespace

TEST_SUITE("cantor") {

TEST_CASE("dyadic odometer adds one") {
  auto action = boundary_action(gallery::vietoris(2, 3), 3);
  CHECK(action.size() == 8);
  const int six = *action.model().index_of("0.2.6");
  CHECK(act(action, parse_word(action, "t t"), six) == *action.model().index_of("0.0.0"));
  CHECK(act(action, parse_word(action, "t^-1"), *action.model().index_of("0.0.0")) ==
        *action.model().index_of("1.3.7"));
  CHECK(action.model().distance(six, *action.model().index_of("0.2.2")) == Rational(1, 4));
}

TEST_CASE("orbits") {
  auto odo = boundary_action(gallery::vietoris(2, 3), 3);
  CHECK(orbit(odo, 0, 8).size() == 8);
  CHECK(orbit(odo, 0, 2).size() == 5);
  CHECK(act(odo, parse_word(odo, "t t^-1"), 3) == 3);
  auto fiber = gallery::warp_example(4, 2, false);
  const int w0 = *fiber.model().index_of("w0");
  CHECK(orbit(fiber, w0, 8) == std::vector<int>{w0});
  CHECK(is_minimal(gallery::warp_example(4, 1, true)).minimal);
  auto model = CantorModel::explicit_table({"a", "b"}, {{0, 1}, {1, 0}});
  auto still = CantorAction::create(model, {{"e", {0, 1}}}, 0);
  CHECK(orbit(still, 1, 5) == std::vector<int>{1});
}

TEST_CASE("word evaluation is a homomorphism") {
  std::mt19937_64 rng(29);
  MESSAGE("seed 29");
  std::vector<CantorAction> actions{boundary_action(gallery::vietoris(3, 3), 3),
                                    boundary_action(gallery::small_fo_variant(2), 2),
                                    boundary_action(gallery::rogers_tollefson(5), 5), gallery::warp_example(4, 2)};
  for (const auto& a : actions) {
    const auto letters = a.letters();
    std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
    std::uniform_int_distribution<int> len(0, 12);
    for (int trial = 0; trial < 30; ++trial) {
      Word w1, w2;
      for (int k = len(rng); k > 0; --k) w1.push_back(letters[pick(rng)]);
      for (int k = len(rng); k > 0; --k) w2.push_back(letters[pick(rng)]);
      for (std::size_t p = 0; p < a.size(); p += 7)
        CHECK(act(a, word_concat(w1, w2), static_cast<int>(p)) ==
              act(a, w1, act(a, w2, static_cast<int>(p))));
    }
  }
}

TEST_CASE("warp metric values") {
  auto model = CantorModel::warp(3, Rational(1, 2));
  const int w0 = *model.index_of("w0");
  CHECK(model.distance(w0, w0) == Rational(0));
  const int a = *model.index_of("202:101");
  const int b = *model.index_of("202:001");
  // same x: x times the 2-adic distance, here first disagreement at the first digit
  CHECK(model.distance(a, b) == Rational(2 * 9 + 2, 27));
  // the collapsed class sits at distance x from [x, y]; x = 1 - 3^-K for the all-2 address
  const int top = *model.index_of("222:000");
  CHECK(model.distance(top, w0) == Rational(26, 27));
}

TEST_CASE("words parse, print and invert") {
  auto action = gallery::warp_example(3, 2);
  auto w = parse_word(action, "g1^2 * f^-1 g2");
  CHECK(word_str(action, w) == "g1^2 f^-1 g2");
  CHECK(parse_word(action, "e").empty());
  auto id = word_concat(w, word_inverse(w));
  for (std::size_t a = 0; a < action.size(); ++a) CHECK(act(action, id, static_cast<int>(a)) == static_cast<int>(a));
  try {
    parse_word(action, "h");
    FAIL("unknown letter accepted");
  } catch (const Error& e) {
    CHECK(e.exit_code() == 2);
  }
}

TEST_CASE("modulus of a stretching generator") {
  auto action = expanding_action();
  auto t = modulus_table(action);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1].r == Rational(1, 4));
  CHECK(t.rows[1].kappa == Rational(1));
  CHECK_FALSE(t.is_isometric());
  CHECK(t.is_monotone());
  CHECK_FALSE(t.equicontinuity_witness(Rational(1, 2)));
}

TEST_CASE("modulus tables match the definition on random tree actions") {
  const std::uint64_t seed = 101;
  MESSAGE("seed " << seed);
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 15; ++trial) {
    auto action = testutil::random_tree_action(rng, 96);
    auto ultra = modulus_ultrametric(action);
    auto pair = kernels::modulus_pairwise(action);
    CHECK(pair == kernels::modulus_pairwise_serial(action));
    CHECK(ultra.is_isometric());
    CHECK(pair.is_isometric());
    for (const auto& row : pair.rows) CHECK(row.kappa == kappa_by_definition(action, row.r));
  }
}

TEST_CASE("distality routes agree") {
  std::mt19937_64 rng(7);
  MESSAGE("seed 7");
  for (int trial = 0; trial < 8; ++trial) {
    auto action = testutil::random_tree_action(rng, 64);
    auto elements = enumerate_elements(action, 4);
    auto par = kernels::distality_pairwise(action, elements);
    auto ser = kernels::distality_pairwise_serial(action, elements);
    CHECK(par.deltas == ser.deltas);
    CHECK(par.distal);
    CHECK(is_distal(action, 4).distal);
  }
}

TEST_CASE("minimality of odometers and the fibered warp action") {
  CHECK(is_minimal(boundary_action(gallery::vietoris(3, 3), 3)).minimal);
  auto fiber = gallery::warp_example(4, 1, false);
  auto r = is_minimal(fiber);
  CHECK_FALSE(r.minimal);
  REQUIRE(r.witness_orbit.size() == 1);
  CHECK(fiber.model().label(r.witness_orbit[0]) == "w0");
}

TEST_CASE("invariant measure is verified by exact pushforward") {
  auto action = boundary_action(gallery::small_fo_variant(2), 2);
  auto mu = invariant_measure(action);
  CHECK(mu.verified);
  CHECK(mu.full_support);
  CHECK(mu.weights[0] == Rational(1, 225));
  CHECK(is_invariant(action, mu.weights));
  std::vector<Rational> skew(action.size(), Rational(0));
  skew[0] = Rational(1);
  CHECK_FALSE(is_invariant(action, skew));

  auto fiber = gallery::warp_example(4, 2, false);
  auto dirac = invariant_measure(fiber);
  CHECK(dirac.verified);
  CHECK(dirac.weights[*fiber.model().index_of("w0")] == Rational(1));
}

TEST_CASE("holonomy of trivial words") {
  auto odo = boundary_action(gallery::vietoris(2, 3), 3);
  auto r = germinal_holonomy(odo, {}, 5);
  REQUIRE(std::holds_alternative<HolonomyTrivial>(r));
  CHECK(std::get<HolonomyTrivial>(r).depth == 0);
  auto r8 = germinal_holonomy(odo, parse_word(odo, "t^8"), 0);
  REQUIRE(std::holds_alternative<HolonomyTrivial>(r8));
  CHECK(std::get<HolonomyTrivial>(r8).depth == 0);
}

TEST_CASE("uniform measures on boundary actions") {
  auto odo = boundary_action(gallery::vietoris(2, 3), 3);
  auto mu = invariant_measure(odo);
  CHECK(mu.verified);
  for (const auto& w : mu.weights) CHECK(w == Rational(1, 8));
  auto fo = boundary_action(gallery::fokkink_oversteegen(1), 1);
  auto nu = invariant_measure(fo);
  CHECK(nu.verified);
  CHECK(nu.weights[17] == Rational(1, 105));
}

TEST_CASE("FO boundary action is distal") {
  auto fo = boundary_action(gallery::fokkink_oversteegen(1), 1);
  auto d = is_distal(fo, 6);
  CHECK(d.distal);
  CHECK(d.min_delta == Rational(1));
}

TEST_CASE("germinal holonomy depth is the least fixed cylinder") {
  auto action = boundary_action(gallery::vietoris(2, 4), 4);
  for (const char* text : {"e", "t^16", "t^8 t^-8", "t^32"})
    for (std::size_t a = 0; a < action.size(); ++a) {
      const auto w = parse_word(action, text);
      auto r = germinal_holonomy(action, w, static_cast<int>(a));
      REQUIRE(std::holds_alternative<HolonomyTrivial>(r));
      const int j = std::get<HolonomyTrivial>(r).depth;
      CHECK(fixes_cylinder(action, w, static_cast<int>(a), j));
      for (int k = j; k <= action.model().depth(); ++k) CHECK(fixes_cylinder(action, w, static_cast<int>(a), k));
      if (j > 0) CHECK_FALSE(fixes_cylinder(action, w, static_cast<int>(a), j - 1));
    }
}

TEST_CASE("warp fiber generator has holonomy at the collapsed point") {
  auto action = gallery::warp_example(6, 1);
  const int w0 = *action.model().index_of("w0");
  auto r = germinal_holonomy(action, parse_word(action, "g1"), w0);
  REQUIRE(std::holds_alternative<HolonomyNontrivial>(r));
  const auto& n = std::get<HolonomyNontrivial>(r);
  CHECK(n.depth == 6);
  CHECK(action.model().cylinder(n.witness_depth, n.moved_address) == action.model().cylinder(n.witness_depth, w0));
  CHECK(n.moved_to != n.moved_address);
  CHECK_THROWS_AS(germinal_holonomy(action, parse_word(action, "f"), w0), PreconditionError);
}

TEST_CASE("tree metrics are ultrametrics") {
  auto action = boundary_action(gallery::rogers_tollefson(4), 4);
  CHECK(check_ultrametric(action.model(), 200, 10000, 3).holds);
}

TEST_CASE("warp metric satisfies the triangle inequality" * doctest::should_fail()) {
  auto model = gallery::warp_example(6, 1).model();
  auto r = check_triangle(model, 0, 20000, 1);
  if (!r.holds)
    MESSAGE(model.label(r.a) << " " << model.label(r.b) << " " << model.label(r.c) << ": "
                             << model.distance(r.a, r.c) << " > " << model.distance(r.a, r.b) << " + "
                             << model.distance(r.b, r.c));
  CHECK(r.holds);
}

TEST_CASE("explicit tables are validated") {
  CHECK_THROWS(CantorModel::explicit_table({"a", "b"}, {{0, 1}, {2, 0}}));
  CHECK_THROWS(CantorModel::explicit_table({"a", "b"}, {{0, 0}, {0, 0}}));
  auto m = expanding_action().model();
  CHECK(m.diameter({0, 1}) == Rational(1, 4));
  CHECK(m.set_distance({0, 1}, {2}) == Rational(1));
}

TEST_CASE("actions reject non-bijections") {
  auto model = CantorModel::explicit_table({"a", "b"}, {{0, 1}, {1, 0}});
  CHECK_THROWS(CantorAction::create(model, {{"s", {0, 0}}}, 0));
}

}

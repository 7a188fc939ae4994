#include <set>

#include "doctest.h"
#include "solenoid/errors.hpp"
#include "solenoid/gallery.hpp"
#include "solenoid/tower.hpp"

using namespace solenoid;

TEST_SUITE("tower") {

TEST_CASE("bonding maps commute with the group action") {
  auto chain = gallery::small_fo_variant(3);
  auto tower = build_tower(chain, 3);
  CHECK(tower.size(3) == 3375);
  for (int l = 2; l <= 3; ++l) {
    const auto& up = tower.levels[l - 1];
    const auto& down = tower.levels[l - 2];
    for (std::size_t g = 0; g < chain.group().generators().size(); ++g)
      for (int c = 0; c < up.index(); ++c)
        CHECK(tower.project(up.gen_perms()[g][c], l, l - 1) == down.gen_perms()[g][tower.project(c, l, l - 1)]);
    // each coset lies in the coset it projects to
    for (int c = 0; c < up.index(); ++c)
      CHECK(down.coset_id(up.reps()[c]) == tower.project(c, l, l - 1));
  }
}

TEST_CASE("tower level sizes") {
  auto dyadic = build_tower(gallery::vietoris(2, 3), 3);
  CHECK(dyadic.size(1) == 2);
  CHECK(dyadic.size(2) == 4);
  CHECK(dyadic.size(3) == 8);
  auto fo = build_tower(gallery::fokkink_oversteegen(2), 2);
  CHECK(fo.size(1) == 105);
  CHECK(fo.size(2) == 11025);
  auto rt = build_tower(gallery::rogers_tollefson(4), 4);
  for (int l = 1; l <= 4; ++l) CHECK(rt.size(l) == (std::int64_t{1} << l));
  auto single = build_tower(gallery::vietoris(5, 1), 1);
  CHECK(single.depth() == 1);
  CHECK(single.bonding.empty());
  // fibers of every bonding map have the index ratio as size
  for (int c = 0; c < fo.size(1); ++c) {
    int fiber = 0;
    for (int d = 0; d < fo.size(2); ++d) fiber += fo.project(d, 2, 1) == c;
    CHECK(fiber == 105);
  }
}

TEST_CASE("dyadic truncated points") {
  auto tower = build_tower(gallery::vietoris(2, 3), 3);
  CHECK(truncated_point(tower, 0).coords == std::vector<int>{0, 0, 0});
  CHECK(truncated_point(tower, 5).coords == std::vector<int>{1, 1, 5});
}

TEST_CASE("boundary actions of small chains") {
  auto two = boundary_action(gallery::vietoris(2, 1), 1);
  CHECK(two.size() == 2);
  CHECK(two.generators()[0].perm == std::vector<int>{1, 0});
  auto fo = boundary_action(gallery::fokkink_oversteegen(1), 1);
  CHECK(fo.size() == 105);
  CHECK(fo.generators().size() == 3);
  CHECK(full_orbit(fo, fo.basepoint()).size() == 105);
  CHECK(fo.model().label(fo.basepoint()) == "0");
}

TEST_CASE("truncated points and incompatible coordinates") {
  auto chain = gallery::vietoris(3, 3);
  auto tower = build_tower(chain, 3);
  auto p = truncated_point(tower, 23);
  CHECK(p.coords == std::vector<int>{2, 5, 23});
  CHECK(project(p, 2) == 5);
  CHECK(make_point(tower, {2, 5, 23}).coords == p.coords);
  CHECK_THROWS_AS(make_point(tower, {1, 5, 23}), StructuralError);
}

TEST_CASE("chains must descend") {
  auto v = gallery::vietoris(2, 2);
  CHECK_THROWS_AS(SubgroupChain::create(v.group(), {v.level(2), v.level(1)}), StructuralError);
  CHECK_THROWS_AS(SubgroupChain::create(v.group(), {v.level(1), v.level(1)}), StructuralError);
}

TEST_CASE("McCord verdict on normal and non-normal chains") {
  auto v = mccord_verdict(gallery::vietoris(5, 4), 4);
  CHECK(v.compatible);
  for (const auto& l : v.levels) {
    CHECK(l.normal);
    CHECK(l.cofinal_at == l.level);
  }
  auto fo = mccord_verdict(gallery::fokkink_oversteegen(2), 2);
  CHECK_FALSE(fo.compatible);
  for (const auto& l : fo.levels) {
    CHECK_FALSE(l.normal);
    CHECK_FALSE(l.cofinal_at);
    REQUIRE(l.witness);
    CHECK(l.witness_verified);
    CHECK_FALSE(l.witness->is_translation());
  }
}

TEST_CASE("a non-normal level fails exactly where nothing deeper lies in its core") {
  auto rt = gallery::rogers_tollefson(2);
  const auto& g = rt.group();
  CHECK(is_normal(g, rt.level(1)).normal);
  CHECK_FALSE(is_normal(g, rt.level(2)).normal);
  auto v = mccord_verdict(rt, 2);
  CHECK(v.levels[0].cofinal_at == 1);
  CHECK_FALSE(v.levels[1].cofinal_at);
  REQUIRE(v.levels[1].witness);
  CHECK(v.levels[1].witness_verified);
  // a normal level below the non-normal one restores cofinality at depth 3
  auto below = FiniteIndexSubgroup::generated(g, IntMatrix{{2, 0}, {0, 4}}, {});
  auto chain = SubgroupChain::create(g, {rt.level(1), rt.level(2), below});
  auto w = mccord_verdict(chain, 3);
  CHECK(w.compatible);
  CHECK(w.levels[1].cofinal_at == 3);
  CHECK_FALSE(w.levels[1].normal);
}

TEST_CASE("interleaving") {
  auto two = gallery::vietoris(2, 6);
  auto four = gallery::vietoris(4, 3);
  auto ok = interleave(two, four);
  CHECK(ok.success);
  CHECK(ok.a_to_b == std::vector<int>{1, 1, 2, 2, 3, 3});
  CHECK(ok.b_to_a == std::vector<int>{2, 4, 6});

  auto bad = interleave(gallery::vietoris(2, 4), gallery::vietoris(3, 4));
  CHECK_FALSE(bad.success);
  REQUIRE(bad.failure);
  CHECK(bad.failure->witness.scaled_trans()[0] % 2 != 0);

  for (auto chain : {two, four, gallery::fokkink_oversteegen(2), gallery::rogers_tollefson(5)}) {
    auto self = interleave(chain, chain);
    CHECK(self.success);
    for (int l = 1; l <= chain.length(); ++l) CHECK(self.a_to_b[l - 1] == l);
  }
  // symmetric
  auto back = interleave(four, two);
  CHECK(back.a_to_b == ok.b_to_a);
  CHECK(back.b_to_a == ok.a_to_b);

  CHECK_THROWS_AS(interleave(two, gallery::small_fo_variant(2)), StructuralError);

  auto fo = gallery::fokkink_oversteegen(2);
  auto even = SubgroupChain::create(fo.group(), {fo.level(2)});
  auto sub = interleave(fo, even);
  CHECK(sub.success);
  CHECK(sub.a_to_b == std::vector<int>{1, 1});
  CHECK(sub.b_to_a == std::vector<int>{2});
}

TEST_CASE("subgroup cylinder of the core") {
  auto chain = gallery::small_fo_variant(2);
  auto tower = build_tower(chain, 2);
  auto core = normal_core(chain.group(), chain.level(1));
  auto cyl = subgroup_cylinder(chain, tower, core);
  // |N H_2 / H_2| = [N : N ∩ H_2]
  CHECK(static_cast<std::int64_t>(cyl.size()) * core.index_in(chain.group()) ==
        intersect(core, chain.level(2)).index_in(chain.group()));
  auto gens = subgroup_generators(core);
  for (const auto& e : subgroup_generators(chain.level(2))) gens.push_back(e);
  const auto product = FiniteIndexSubgroup::generated_by(chain.group(), gens);
  const std::set<int> members(cyl.begin(), cyl.end());
  for (int a = 0; a < tower.size(2); ++a)
    CHECK(contains(product, tower.levels[1].reps()[a]) == (members.count(a) == 1));
}

}

#include <algorithm>
#include <random>

#include "doctest.h"
#include "solenoid/affine.hpp"
#include "solenoid/errors.hpp"
#include "solenoid/gallery.hpp"
#include "solenoid/kernels.hpp"

using namespace solenoid;

namespace {

const IntMatrix kD = IntMatrix::diagonal({1, -1});

// Every element of the Klein-bottle group with translation part in a box.
std::vector<AffineElement> klein_box(int r) {
  std::vector<AffineElement> out;
  for (int x = -r; x <= r; ++x)
    for (int y = -r; y <= r; ++y) {
      out.push_back(AffineElement::translation({2 * x, 2 * y}, 2));
      out.push_back(AffineElement(kD, {2 * x + 1, 2 * y}, 2));
    }
  return out;
}

}  // namespace

TEST_SUITE("affine") {

TEST_CASE("composition, inverse and order") {
  auto g = gallery::klein_group();
  const auto& gamma = g.generators()[2].element;
  CHECK((gamma * gamma) == AffineElement::translation({2, 0}, 2));
  CHECK((gamma * gamma.inverse()).is_identity());
  CHECK(gamma.point_order() == 2);
  CHECK(g.contains(gamma * g.generators()[1].element));
  CHECK_FALSE(g.contains(AffineElement::translation({1, 0}, 2)));
}

TEST_CASE("conjugating a vertical translation by the glide reverses it") {
  auto g = gallery::klein_group();
  const auto& gamma = g.generators()[2].element;
  const auto t01 = AffineElement::translation({0, 2}, 2);
  CHECK(gamma * t01 * gamma.inverse() == AffineElement::translation({0, -2}, 2));
  const auto id = AffineElement::identity(2, 2);
  CHECK(id * id == id);
}

TEST_CASE("membership in the first FO subgroup") {
  auto fo = gallery::fokkink_oversteegen(1);
  CHECK_FALSE(contains(fo.level(1), AffineElement::translation({0, 2}, 2)));
  CHECK(contains(fo.level(1), AffineElement(kD, {3, 0}, 2)));
  CHECK(contains(fo.level(1), AffineElement(kD, {9, 70}, 2)));
  auto v = gallery::vietoris(2, 1);
  CHECK(contains(v.level(1), AffineElement::translation({4}, 1)));
  CHECK_FALSE(contains(v.level(1), AffineElement::translation({3}, 1)));
}

TEST_CASE("cosets of 2Z") {
  auto v = gallery::vietoris(2, 1);
  auto cs = coset_space(v.group(), v.level(1));
  CHECK(cs.index() == 2);
  CHECK(cs.gen_perms()[0] == std::vector<int>{1, 0});
}

TEST_CASE("translation lattices and conjugation by the identity") {
  auto g = gallery::klein_group();
  auto fo = gallery::fokkink_oversteegen(1);
  CHECK(conjugate(AffineElement::identity(2, 2), fo.level(1)) == fo.level(1));
  const auto lattice_only = FiniteIndexSubgroup::generated(g, IntMatrix{{3, 0}, {0, 35}}, {});
  CHECK(is_normal(g, lattice_only).normal);
  CHECK(normal_core(g, lattice_only) == lattice_only);
  CHECK(coset_space(g, lattice_only).index() == 210);
  CHECK(coset_space(gallery::klein_group(), fo.level(1)).index() == 105);
}

TEST_CASE("index of the induced Klein-bottle subgroups") {
  auto fo = gallery::fokkink_oversteegen(2);
  CHECK(fo.index(1) == 105);
  CHECK(fo.index(2) == 11025);
  CHECK(fo.level(1).lattice_str().find("3 0 / 0 35") != std::string::npos);
}

TEST_CASE("conjugate is g^-1 H g, checked element by element") {
  auto chain = gallery::fokkink_oversteegen(1);
  const auto& g = chain.group();
  const auto& h = chain.level(1);
  for (const auto& gen : g.generators()) {
    const auto c = conjugate(gen.element, h);
    CHECK(c.index_in(g) == h.index_in(g));
    for (const auto& e : subgroup_generators(h))
      CHECK(contains(c, gen.element.inverse() * e * gen.element));
    for (const auto& e : subgroup_generators(c))
      CHECK(contains(h, gen.element * e * gen.element.inverse()));
  }
  // the glide of t2^-1 H t2 carries vertical translation -2 mod 35
  const auto c = conjugate(g.generators()[1].element, h);
  CHECK(contains(c, AffineElement(kD, {3, -4}, 2)));
  CHECK_FALSE(contains(c, AffineElement(kD, {3, 4}, 2)));
}

TEST_CASE("normality test names t2 as witness on the FO chain") {
  auto chain = gallery::fokkink_oversteegen(1);
  auto r = is_normal(chain.group(), chain.level(1));
  CHECK_FALSE(r.normal);
  REQUIRE(r.witness);
  CHECK(chain.group().generators()[*r.witness].name == "t2");
  auto v = gallery::vietoris(3, 2);
  CHECK(is_normal(v.group(), v.level(2)).normal);
}

TEST_CASE("coset permutations are a homomorphism") {
  auto chain = gallery::small_fo_variant(2);
  const auto& g = chain.group();
  auto cs = coset_space(g, chain.level(2));
  CHECK(cs.index() == 225);
  std::mt19937_64 rng(5);
  MESSAGE("seed 5");
  std::uniform_int_distribution<int> pick(0, 5);
  for (int trial = 0; trial < 50; ++trial) {
    AffineElement w = AffineElement::identity(2, 2);
    std::vector<int> perm(cs.index());
    for (int c = 0; c < cs.index(); ++c) perm[c] = c;
    for (int k = 0; k < 6; ++k) {
      const int letter = pick(rng);
      const auto& gen = g.generators()[letter % 3].element;
      const bool inv = letter >= 3;
      w = (inv ? gen.inverse() : gen) * w;
      for (auto& p : perm) {
        if (!inv) {
          p = cs.gen_perms()[letter % 3][p];
        } else {
          const auto& fwd = cs.gen_perms()[letter % 3];
          p = static_cast<int>(std::find(fwd.begin(), fwd.end(), p) - fwd.begin());
        }
      }
    }
    for (int c = 0; c < cs.index(); ++c) CHECK(cs.coset_id(w * cs.reps()[c]) == perm[c]);
  }
}

TEST_CASE("normal core agrees with brute-force conjugate membership") {
  for (auto chain : {gallery::small_fo_variant(1), gallery::fokkink_oversteegen(1), gallery::rogers_tollefson(2)}) {
    const auto& g = chain.group();
    const auto& h = chain.level(1);
    auto cs = coset_space(g, h);
    const auto core = normal_core(g, h);
    CHECK(core == normal_core_by_generators(g, h));
    CHECK(is_normal(g, core).normal);
    CHECK((core == h) == is_normal(g, h).normal);
    for (const auto& e : klein_box(40)) {
      bool in_all = true;
      for (const auto& x : cs.reps())
        if (!contains(h, x.inverse() * e * x)) {
          in_all = false;
          break;
        }
      CHECK(contains(core, e) == in_all);
    }
  }
}

TEST_CASE("parallel and serial conjugate intersections agree") {
  auto chain = gallery::small_fo_variant(2);
  auto cs = coset_space(chain.group(), chain.level(2));
  CHECK(kernels::intersect_conjugates(cs.reps(), chain.level(2)) ==
        kernels::intersect_conjugates_serial(cs.reps(), chain.level(2)));
}

TEST_CASE("conjugation preserves the index for random subgroups") {
  std::mt19937_64 rng(23);
  MESSAGE("seed 23");
  auto g = gallery::klein_group();
  std::uniform_int_distribution<int> small(1, 5);
  std::uniform_int_distribution<int> shear(0, 4);
  for (int trial = 0; trial < 50; ++trial) {
    const std::int64_t a = 2 * small(rng) - 1;  // odd, so a glide with first coordinate a/2 lies in G
    const std::int64_t b = small(rng);
    IntMatrix lat{{a, 0}, {0, b}};
    lat(0, 1) = shear(rng);
    FiniteIndexSubgroup h = FiniteIndexSubgroup::generated(g, lat, {AffineElement(kD, {a, 0}, 2)});
    for (const auto& x : klein_box(2)) {
      auto c = conjugate(x, h);
      CHECK(c.index_in(g) == h.index_in(g));
      CHECK(intersect(c, h).index_in(g) % h.index_in(g) == 0);
    }
    auto core = normal_core(g, h);
    CHECK(is_subgroup_of(core, h));
    CHECK(is_normal(g, core).normal);
    CHECK((core == h) == is_normal(g, h).normal);
    CHECK(core == normal_core_by_generators(g, h));
  }
}

TEST_CASE("coset space respects the index cap") {
  auto chain = gallery::fokkink_oversteegen(2);
  CHECK_THROWS_AS(coset_space(chain.group(), chain.level(2), 1000), ResourceError);
}

}

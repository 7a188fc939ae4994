#include "solenoid/gallery.hpp"

#include <map>

#include "solenoid/errors.hpp"

namespace solenoid::gallery {

namespace {

void require_depth(int depth, int max_depth, const char* name) {
  if (depth < 1 || depth > max_depth)
    throw PreconditionError(std::string(name) + " depth must lie in 1.." + std::to_string(max_depth));
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r = checked::mul(r, b);
  return r;
}

}  // namespace

SubgroupChain vietoris(std::int64_t p, int depth) {
  if (p < 2) throw PreconditionError("vietoris base must be at least 2");
  require_depth(depth, 40, "vietoris");
  auto g = AffineGroup::create(1, 1, {{"t", AffineElement::translation({1}, 1)}});
  std::vector<FiniteIndexSubgroup> levels;
  for (int l = 1; l <= depth; ++l)
    levels.push_back(FiniteIndexSubgroup::generated(g, IntMatrix{{ipow(p, l)}}, {}));
  return SubgroupChain::create(std::move(g), std::move(levels), "H_l = " + std::to_string(p) + "^l Z");
}

AffineGroup klein_group() {
  const IntMatrix d = IntMatrix::diagonal({1, -1});
  return AffineGroup::create(2, 2,
                             {{"t1", AffineElement::translation({2, 0}, 2)},
                              {"t2", AffineElement::translation({0, 2}, 2)},
                              {"gamma", AffineElement(d, {1, 0}, 2)}});
}

SubgroupChain klein_chain(std::int64_t a, std::int64_t b, int depth, int max_depth) {
  require_depth(depth, max_depth, "Klein-bottle chain");
  if (a % 2 == 0) throw PreconditionError("first diagonal entry must be odd");
  auto g = klein_group();
  const IntMatrix d = IntMatrix::diagonal({1, -1});
  std::vector<FiniteIndexSubgroup> levels;
  for (int l = 1; l <= depth; ++l) {
    const std::int64_t al = ipow(a, l);
    levels.push_back(FiniteIndexSubgroup::generated(g, IntMatrix::diagonal({al, ipow(b, l)}),
                                                    {AffineElement(d, {al, 0}, 2)}));
  }
  return SubgroupChain::create(std::move(g), std::move(levels),
                               "induced Klein-bottle chain H_l = <A^l Z^2, (D, (" + std::to_string(a) +
                                   "^l/2, 0))>, A = " + std::to_string(a) + " 0 / 0 " + std::to_string(b) +
                                   ", D = 1 0 / 0 -1");
}

SubgroupChain fokkink_oversteegen(int depth) { return klein_chain(3, 35, depth, 3); }
SubgroupChain rogers_tollefson(int depth) { return klein_chain(1, 2, depth, 8); }
SubgroupChain small_fo_variant(int depth) { return klein_chain(3, 5, depth, 4); }

CantorAction warp_example(int depth, int k1_gens, bool with_f, const Rational& lambda) {
  require_depth(depth, 8, "warp example");
  if (k1_gens < 1) throw PreconditionError("warp example needs at least one fiber generator");
  CantorModel model = CantorModel::warp(depth, lambda);
  const auto& wm = std::get<WarpMetric>(model.metric());
  const std::int64_t mod = std::int64_t{1} << depth;
  std::map<std::pair<std::string, std::int64_t>, int> index;
  for (std::size_t a = 0; a < wm.points.size(); ++a)
    if (!wm.points[a].collapsed) index[{wm.points[a].x_digits, wm.points[a].y}] = static_cast<int>(a);
  const int n = static_cast<int>(model.size());
  std::vector<std::pair<std::string, std::vector<int>>> gens;
  for (int i = 1; i <= k1_gens; ++i) {
    std::vector<int> perm(n);
    for (int a = 0; a < n; ++a) {
      const auto& p = wm.points[a];
      perm[a] = p.collapsed ? a : index.at({p.x_digits, (p.y + 2 * i - 1) % mod});
    }
    gens.emplace_back("g" + std::to_string(i), std::move(perm));
  }
  if (with_f) {
    std::vector<int> perm(n);
    for (int a = 0; a < n; ++a) perm[a] = (a + 1) % n;
    gens.emplace_back("f", std::move(perm));
  }
  const int w0 = *model.index_of("w0");
  return CantorAction::create(std::move(model), std::move(gens), w0);
}

}  // namespace solenoid::gallery

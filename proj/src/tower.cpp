#include "solenoid/tower.hpp"

#include "solenoid/errors.hpp"

namespace solenoid {

SubgroupChain SubgroupChain::create(AffineGroup group, std::vector<FiniteIndexSubgroup> levels,
                                    std::string construction) {
  if (levels.empty()) throw StructuralError("subgroup chain has no levels");
  std::int64_t prev = 1;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const std::string where = "level " + std::to_string(i + 1);
    for (const auto& r : levels[i].affine_reps()) group.require_member(r, where);
    const std::int64_t idx = levels[i].index_in(group);
    if (i > 0 && !is_subgroup_of(levels[i], levels[i - 1]))
      throw StructuralError(where + " is not contained in level " + std::to_string(i));
    if (idx % prev != 0 || idx / prev <= 1)
      throw StructuralError(where + " is not a proper finite-index refinement (index " + std::to_string(idx) +
                            " after " + std::to_string(prev) + ")");
    prev = idx;
  }
  SubgroupChain c;
  c.group_ = std::move(group);
  c.levels_ = std::move(levels);
  c.construction_ = std::move(construction);
  return c;
}

SubgroupChain SubgroupChain::truncated(int depth) const {
  if (depth < 1 || depth > length())
    throw PreconditionError("depth " + std::to_string(depth) + " outside 1.." + std::to_string(length()));
  SubgroupChain c = *this;
  c.levels_.resize(depth);
  return c;
}

int QuotientTower::project(int coset, int from, int to) const {
  if (to < 1 || to > from || from > depth()) throw PreconditionError("invalid projection levels");
  for (int l = from; l > to; --l) coset = bonding[l - 2][coset];
  return coset;
}

QuotientTower build_tower(const SubgroupChain& chain, int depth, std::int64_t cap) {
  if (depth < 1 || depth > chain.length())
    throw PreconditionError("tower depth " + std::to_string(depth) + " exceeds the chain length " +
                            std::to_string(chain.length()));
  QuotientTower t;
  for (int l = 1; l <= depth; ++l) t.levels.push_back(CosetSpace::build(chain.group(), chain.level(l), cap));
  for (int l = 1; l < depth; ++l) {
    const auto& lower = t.levels[l - 1];
    const auto& upper = t.levels[l];
    std::vector<int> bond(upper.index());
    std::vector<std::int64_t> fiber(lower.index(), 0);
    for (std::size_t c = 0; c < bond.size(); ++c) {
      bond[c] = lower.coset_id(upper.reps()[c]);
      ++fiber[bond[c]];
    }
    const std::int64_t ratio = upper.index() / lower.index();
    for (auto f : fiber)
      if (f != ratio)
        throw InvariantViolation("bonding map " + std::to_string(l + 1) + " -> " + std::to_string(l) +
                                 " has a fiber of size " + std::to_string(f) + ", expected " +
                                 std::to_string(ratio));
    t.bonding.push_back(std::move(bond));
  }
  return t;
}

TruncatedPoint truncated_point(const QuotientTower& tower, int address) {
  const int k = tower.depth();
  if (address < 0 || address >= tower.size(k)) throw PreconditionError("address outside the level-K coset space");
  TruncatedPoint p;
  p.coords.resize(k);
  for (int l = k; l >= 1; --l) p.coords[l - 1] = tower.project(address, k, l);
  return p;
}

TruncatedPoint make_point(const QuotientTower& tower, std::vector<int> coords) {
  if (static_cast<int>(coords.size()) != tower.depth())
    throw StructuralError("point needs " + std::to_string(tower.depth()) + " coordinates");
  for (int l = 1; l <= tower.depth(); ++l)
    if (coords[l - 1] < 0 || coords[l - 1] >= tower.size(l))
      throw StructuralError("coordinate at level " + std::to_string(l) + " is not a coset id");
  for (int l = 1; l < tower.depth(); ++l)
    if (tower.bonding[l - 1][coords[l]] != coords[l - 1])
      throw StructuralError("coordinates at levels " + std::to_string(l) + " and " + std::to_string(l + 1) +
                            " are incompatible under the bonding map");
  return TruncatedPoint{std::move(coords)};
}

int project(const TruncatedPoint& point, int level) {
  if (level < 1 || level > static_cast<int>(point.coords.size())) throw PreconditionError("level out of range");
  return point.coords[level - 1];
}

namespace {

std::optional<AffineElement> element_outside(const FiniteIndexSubgroup& source, const FiniteIndexSubgroup& target) {
  for (const auto& g : subgroup_generators(source))
    if (!contains(target, g)) return g;
  return std::nullopt;
}

}  // namespace

McCordVerdict mccord_verdict(const SubgroupChain& chain, int depth) {
  if (depth < 1 || depth > chain.length())
    throw PreconditionError("McCord depth " + std::to_string(depth) + " outside 1.." +
                            std::to_string(chain.length()));
  McCordVerdict v;
  v.depth = depth;
  for (int l = 1; l <= depth; ++l) {
    McCordLevel rec;
    rec.level = l;
    rec.core = normal_core_by_generators(chain.group(), chain.level(l));
    rec.normal = rec.core == chain.level(l);
    for (int lp = l; lp <= depth && !rec.cofinal_at; ++lp)
      if (is_subgroup_of(chain.level(lp), rec.core)) rec.cofinal_at = lp;
    if (!rec.cofinal_at) {
      rec.witness_level = depth;
      rec.witness = element_outside(chain.level(depth), rec.core);
      if (!rec.witness) throw InvariantViolation("no generator of the deepest level escapes the core");
      rec.witness_verified = contains(chain.level(depth), *rec.witness) && !contains(rec.core, *rec.witness);
      if (!rec.witness_verified) throw InvariantViolation("McCord witness failed re-verification");
      v.compatible = false;
    }
    v.levels.push_back(std::move(rec));
  }
  return v;
}

InterleaveVerdict interleave(const SubgroupChain& a, const SubgroupChain& b) {
  if (!(a.group() == b.group())) throw StructuralError("chains are not over the same ambient group");
  InterleaveVerdict v;
  auto cover = [](const SubgroupChain& x, const SubgroupChain& y, char name,
                  std::vector<int>& map) -> std::optional<InterleaveFailure> {
    for (int l = 1; l <= x.length(); ++l) {
      int found = 0;
      for (int n = 1; n <= y.length() && !found; ++n)
        if (is_subgroup_of(y.level(n), x.level(l))) found = n;
      if (!found) {
        auto w = element_outside(y.level(y.length()), x.level(l));
        if (!w) throw InvariantViolation("containment failed but no generator escapes");
        return InterleaveFailure{name, l, y.length(), *w};
      }
      map.push_back(found);
    }
    return std::nullopt;
  };
  v.failure = cover(a, b, 'A', v.a_to_b);
  if (!v.failure) v.failure = cover(b, a, 'B', v.b_to_a);
  v.success = !v.failure;
  if (!v.success) {
    v.a_to_b.clear();
    v.b_to_a.clear();
  }
  return v;
}

CantorAction boundary_action(const SubgroupChain& chain, int depth, const Rational& lambda, std::int64_t cap) {
  return boundary_action(chain, build_tower(chain, depth, cap), lambda);
}

CantorAction boundary_action(const SubgroupChain& chain, const QuotientTower& tower, const Rational& lambda) {
  const int k = tower.depth();
  const auto n = tower.size(k);
  std::vector<std::string> labels;
  std::vector<std::vector<int>> paths;
  for (int a = 0; a < n; ++a) {
    auto p = truncated_point(tower, a);
    std::string s;
    for (std::size_t i = 0; i < p.coords.size(); ++i) s += (i ? "." : "") + std::to_string(p.coords[i]);
    labels.push_back(std::move(s));
    paths.push_back(std::move(p.coords));
  }
  std::vector<std::pair<std::string, std::vector<int>>> gens;
  const auto& named = chain.group().generators();
  for (std::size_t i = 0; i < named.size(); ++i) gens.emplace_back(named[i].name, tower.levels.back().gen_perms()[i]);
  return CantorAction::create(CantorModel::tree(std::move(labels), paths, lambda), std::move(gens), 0);
}

std::vector<int> subgroup_cylinder(const SubgroupChain& chain, const QuotientTower& tower,
                                   const FiniteIndexSubgroup& normal) {
  const auto& hk = tower.levels.back().subgroup();
  auto gens = subgroup_generators(normal);
  for (auto& g : subgroup_generators(hk)) gens.push_back(std::move(g));
  const auto product = FiniteIndexSubgroup::generated_by(chain.group(), gens);
  std::vector<int> out;
  const auto& reps = tower.levels.back().reps();
  for (std::size_t c = 0; c < reps.size(); ++c)
    if (contains(product, reps[c])) out.push_back(static_cast<int>(c));
  return out;
}

}  // namespace solenoid

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "solenoid/affine.hpp"
#include "solenoid/cantor.hpp"

namespace solenoid {

/// A strictly descending chain H₁ ⊋ H₂ ⊋ … of finite-index subgroups.
/// Levels are numbered from 1.
class SubgroupChain {
 public:
  /// Validates membership, containment and index ratio > 1 at every step.
  static SubgroupChain create(AffineGroup group, std::vector<FiniteIndexSubgroup> levels,
                              std::string construction = {});

  const AffineGroup& group() const { return group_; }
  int length() const { return static_cast<int>(levels_.size()); }
  const FiniteIndexSubgroup& level(int l) const { return levels_.at(l - 1); }
  const std::vector<FiniteIndexSubgroup>& levels() const { return levels_; }
  const std::string& construction() const { return construction_; }
  std::int64_t index(int l) const { return level(l).index_in(group_); }
  /// The first `depth` levels.
  SubgroupChain truncated(int depth) const;

 private:
  AffineGroup group_;
  std::vector<FiniteIndexSubgroup> levels_;
  std::string construction_;
};

/// Coset spaces G/H_ℓ for ℓ = 1..K with bonding maps level ℓ+1 → level ℓ.
struct QuotientTower {
  std::vector<CosetSpace> levels;
  /// bonding[ℓ-1][c] is the level-ℓ coset under level-(ℓ+1) coset c.
  std::vector<std::vector<int>> bonding;

  int depth() const { return static_cast<int>(levels.size()); }
  std::int64_t size(int l) const { return levels.at(l - 1).index(); }
  /// Composite projection from level `from` down to level `to` ≤ from.
  int project(int coset, int from, int to) const;
};

QuotientTower build_tower(const SubgroupChain& chain, int depth, std::int64_t cap = configured_index_cap());

/// One coset id per level, compatible under the bonding maps.
struct TruncatedPoint {
  std::vector<int> coords;
};

/// Coordinates of a level-K coset.
TruncatedPoint truncated_point(const QuotientTower& tower, int address);
/// Validates coordinates; throws StructuralError naming the first
/// incompatible level.
TruncatedPoint make_point(const QuotientTower& tower, std::vector<int> coords);
int project(const TruncatedPoint& point, int level);

struct McCordLevel {
  int level = 0;
  FiniteIndexSubgroup core;
  bool normal = false;
  std::optional<int> cofinal_at;
  std::optional<AffineElement> witness;  ///< in H_{witness_level} but not in core(H_level)
  int witness_level = 0;
  bool witness_verified = false;
};

struct McCordVerdict {
  int depth = 0;
  bool compatible = true;
  std::vector<McCordLevel> levels;
};

/// For each level ℓ ≤ depth, the least ℓ' ≥ ℓ with H_{ℓ'} ⊆ core(H_ℓ), or a
/// verified element of the deepest level outside the core.
McCordVerdict mccord_verdict(const SubgroupChain& chain, int depth);

struct InterleaveFailure {
  char chain;       ///< 'A' when some level of A contains no level of B
  int level;        ///< the uncovered level of that chain
  int other_level;  ///< deepest level of the other chain, source of the witness
  AffineElement witness;
};

struct InterleaveVerdict {
  bool success = false;
  std::vector<int> a_to_b;  ///< ν_ℓ: least ν with B_ν ⊆ A_ℓ
  std::vector<int> b_to_a;  ///< ℓ_ν: least ℓ with A_ℓ ⊆ B_ν
  std::optional<InterleaveFailure> failure;
};

/// Finite-depth interleaving over the available levels of both chains.
InterleaveVerdict interleave(const SubgroupChain& a, const SubgroupChain& b);

/// Left translation on the level-K coset space with the tree metric of the
/// tower; addresses are spelled "c1.c2.…cK".
CantorAction boundary_action(const SubgroupChain& chain, int depth, const Rational& lambda = Rational(1, 2),
                             std::int64_t cap = configured_index_cap());
CantorAction boundary_action(const SubgroupChain& chain, const QuotientTower& tower,
                             const Rational& lambda = Rational(1, 2));

/// Addresses of the level-K coset space whose cosets lie in N·H_K, for a
/// normal subgroup N (the cylinder of N at depth K).
std::vector<int> subgroup_cylinder(const SubgroupChain& chain, const QuotientTower& tower,
                                   const FiniteIndexSubgroup& normal);

}  // namespace solenoid

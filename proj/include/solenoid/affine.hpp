#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "solenoid/lattice.hpp"
#include "solenoid/matrix.hpp"
#include "solenoid/rational.hpp"

namespace solenoid {

inline constexpr int kDefaultOrderBound = 12;
inline constexpr std::int64_t kDefaultIndexCap = 1'000'000;

/// Index cap honoring the SOLENOID_INDEX_CAP environment variable.
std::int64_t configured_index_cap();

/// An affine map x ↦ A x + v with A ∈ GL(n, Z) and v ∈ (1/d) Z^n.
///
/// The translation is stored scaled by the group-wide denominator d, so all
/// arithmetic is integral.
class AffineElement {
 public:
  AffineElement() = default;
  AffineElement(IntMatrix point, IntVector scaled_trans, std::int64_t denom);

  static AffineElement identity(int n, std::int64_t denom);
  /// Pure translation by (scaled / denom).
  static AffineElement translation(IntVector scaled, std::int64_t denom);
  /// Throws StructuralError when d·v is not integral.
  static AffineElement from_rational(IntMatrix point, const std::vector<Rational>& trans,
                                     std::int64_t denom);

  const IntMatrix& point() const { return point_; }
  const IntVector& scaled_trans() const { return trans_; }
  std::int64_t denom() const { return denom_; }
  int dimension() const { return point_.rows(); }
  std::vector<Rational> trans() const;
  bool is_translation() const { return point_.is_identity(); }
  bool is_identity() const { return is_translation() && is_zero(trans_); }

  /// Multiplicative order of the point part, or nullopt above `bound`.
  std::optional<int> point_order(int bound = kDefaultOrderBound) const;

  AffineElement inverse() const;

  friend bool operator==(const AffineElement& a, const AffineElement& b) = default;
  friend auto operator<=>(const AffineElement& a, const AffineElement& b) {
    if (auto c = a.point_ <=> b.point_; c != 0) return c;
    return a.trans_ <=> b.trans_;
  }

  /// "[1 0 / 0 -1] + (3/2, 0)"
  std::string str() const;

 private:
  IntMatrix point_;
  IntVector trans_;
  std::int64_t denom_ = 1;
};

/// (A_a, v_a)·(A_b, v_b) = (A_a A_b, v_a + A_a v_b).
AffineElement compose(const AffineElement& a, const AffineElement& b);
inline AffineElement operator*(const AffineElement& a, const AffineElement& b) { return compose(a, b); }

/// Integer inverse of a unimodular matrix.
IntMatrix unimodular_inverse(const IntMatrix& m);

struct NamedElement {
  std::string name;
  AffineElement element;
};

/// Point classes and translation kernel of a finitely generated affine
/// group, computed by Schreier closure over the point group.
struct AffineSpan {
  std::vector<IntMatrix> points;        ///< identity first, then lexicographic
  std::vector<IntVector> point_reps;    ///< scaled translation per point, reduced
  IntegerLattice translations;          ///< scaled translation kernel
};

AffineSpan affine_closure(int dim, std::int64_t denom, const std::vector<AffineElement>& generators,
                          int order_bound = kDefaultOrderBound);

/// A crystallographic-type group given by generators: finite point group,
/// full-rank translation lattice.
class AffineGroup {
 public:
  static AffineGroup create(int dim, std::int64_t denom, std::vector<NamedElement> generators,
                            int order_bound = kDefaultOrderBound);

  int dimension() const { return dim_; }
  std::int64_t denom() const { return denom_; }
  int order_bound() const { return order_bound_; }
  const std::vector<NamedElement>& generators() const { return generators_; }
  const std::vector<IntMatrix>& point_classes() const { return span_.points; }
  std::optional<int> point_class_id(const IntMatrix& point) const;
  const IntegerLattice& translations() const { return span_.translations; }

  bool contains(const AffineElement& g) const;
  /// Throws StructuralError when g has the wrong shape or lies outside.
  void require_member(const AffineElement& g, const std::string& context) const;
  /// Generator named `name`, or nullopt.
  std::optional<int> generator_index(const std::string& name) const;

  friend bool operator==(const AffineGroup& a, const AffineGroup& b);

 private:
  int dim_ = 0;
  std::int64_t denom_ = 1;
  int order_bound_ = kDefaultOrderBound;
  std::vector<NamedElement> generators_;
  AffineSpan span_;
};

/// A finite-index subgroup H of an affine group, in canonical form: the
/// translation lattice of H in Hermite normal form and one representative
/// per point class, identity first, translations reduced modulo the lattice.
class FiniteIndexSubgroup {
 public:
  FiniteIndexSubgroup() = default;

  /// Subgroup generated by translations along the columns of
  /// `lattice_columns` (unscaled integer coordinates) together with `extra`.
  static FiniteIndexSubgroup generated(const AffineGroup& group, const IntMatrix& lattice_columns,
                                       const std::vector<AffineElement>& extra);
  /// Subgroup generated by arbitrary elements of `group`.
  static FiniteIndexSubgroup generated_by(const AffineGroup& group,
                                          const std::vector<AffineElement>& elements);
  /// Builds from already-canonical parts; used by the algebra below.
  static FiniteIndexSubgroup from_parts(IntegerLattice lattice, std::vector<AffineElement> reps);

  const IntegerLattice& lattice() const { return lattice_; }
  const std::vector<AffineElement>& affine_reps() const { return reps_; }
  int dimension() const { return lattice_.dimension(); }
  std::int64_t denom() const { return reps_.front().denom(); }

  /// Representative with the given point part, or nullptr.
  const AffineElement* rep_for(const IntMatrix& point) const;

  /// Index in `group`: [T_G : L] · |P_G| / |P_H|.
  std::int64_t index_in(const AffineGroup& group) const;

  /// Lattice basis in unscaled coordinates, e.g. "3 0 / 0 35".
  std::string lattice_str() const;
  std::string str() const;

  friend bool operator==(const FiniteIndexSubgroup& a, const FiniteIndexSubgroup& b) = default;

 private:
  IntegerLattice lattice_;
  std::vector<AffineElement> reps_;
};

bool contains(const FiniteIndexSubgroup& h, const AffineElement& g);
/// A generating set: the non-translation representatives, then translations
/// along the lattice basis columns.
std::vector<AffineElement> subgroup_generators(const FiniteIndexSubgroup& h);
/// g⁻¹ H g in canonical form.
FiniteIndexSubgroup conjugate(const AffineElement& g, const FiniteIndexSubgroup& h);
FiniteIndexSubgroup intersect(const FiniteIndexSubgroup& a, const FiniteIndexSubgroup& b);
bool is_subgroup_of(const FiniteIndexSubgroup& a, const FiniteIndexSubgroup& b);

struct NormalityResult {
  bool normal = true;
  std::optional<int> witness;  ///< generator index with g⁻¹Hg ≠ H
};

NormalityResult is_normal(const AffineGroup& group, const FiniteIndexSubgroup& h);

/// Left coset space G/H with canonical representatives and the left
/// multiplication permutation of every generator.
class CosetSpace {
 public:
  static CosetSpace build(const AffineGroup& group, const FiniteIndexSubgroup& h,
                          std::int64_t cap = configured_index_cap());

  std::int64_t index() const { return static_cast<std::int64_t>(reps_.size()); }
  const std::vector<AffineElement>& reps() const { return reps_; }
  const std::vector<std::vector<int>>& gen_perms() const { return gen_perms_; }
  const FiniteIndexSubgroup& subgroup() const { return subgroup_; }

  /// Canonical representative of the coset x·H.
  AffineElement canonical(const AffineElement& x) const;
  /// Id of the coset x·H; x must lie in the ambient group.
  int coset_id(const AffineElement& x) const;

 private:
  struct Key {
    int point_class;
    IntVector trans;
    friend auto operator<=>(const Key&, const Key&) = default;
  };
  Key key_of(const AffineElement& x) const;

  AffineGroup group_;
  FiniteIndexSubgroup subgroup_;
  std::vector<IntegerLattice> class_lattices_;  ///< P_c · L per point class of G
  std::vector<AffineElement> reps_;
  std::vector<std::vector<int>> gen_perms_;
  std::map<Key, int> ids_;
};

inline CosetSpace coset_space(const AffineGroup& group, const FiniteIndexSubgroup& h,
                              std::int64_t cap = configured_index_cap()) {
  return CosetSpace::build(group, h, cap);
}

/// Largest subgroup of H normal in G, as the intersection of x H x⁻¹ over one
/// representative x of every left coset. Parallel over cosets.
FiniteIndexSubgroup normal_core(const AffineGroup& group, const FiniteIndexSubgroup& h,
                                std::int64_t cap = configured_index_cap());

/// The same core reached without coset enumeration: N ← N ∩ ⋂ s⁻¹Ns over
/// the generators s until stable. Works beyond the index cap.
FiniteIndexSubgroup normal_core_by_generators(const AffineGroup& group,
                                              const FiniteIndexSubgroup& h);

}  // namespace solenoid

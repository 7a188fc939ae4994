#pragma once

#include <optional>
#include <string>

#include "solenoid/matrix.hpp"

namespace solenoid {

/// Column-style Hermite normal form of a generating set.
///
/// For an n×m integer matrix G of rank n, produces a unimodular m×m matrix U
/// with G·U = [0 | H], where H (the last n columns) is upper triangular with
/// positive diagonal and every entry above the diagonal reduced into
/// [0, diagonal of its row). The first m−n columns of U span the integer
/// kernel of G.
struct HermiteDecomposition {
  IntMatrix hnf;        ///< n×n canonical basis
  IntMatrix transform;  ///< m×m unimodular U
};

/// Throws DegenerateLatticeError when the columns of `generators` do not
/// span a full-rank lattice.
HermiteDecomposition hermite_decomposition(const IntMatrix& generators);

/// Full-rank sublattice of Z^n held in canonical Hermite normal form, so two
/// lattices are equal iff their bases compare equal.
class IntegerLattice {
 public:
  IntegerLattice() = default;

  /// Lattice spanned by the columns of an n×m matrix (m ≥ n).
  static IntegerLattice from_generators(const IntMatrix& generators);
  static IntegerLattice standard(int n) { return from_generators(IntMatrix::identity(n)); }

  const IntMatrix& basis() const { return basis_; }
  int dimension() const { return basis_.rows(); }

  /// Index in Z^n, the product of the diagonal.
  std::int64_t index() const;

  bool contains(const IntVector& v) const;
  /// Coefficients x with basis·x = v, if v is a lattice vector.
  std::optional<IntVector> solve(const IntVector& v) const;
  /// Canonical residue of v modulo the lattice: 0 ≤ r_i < basis(i,i).
  IntVector reduce(const IntVector& v) const;

  bool is_subset_of(const IntegerLattice& other) const;
  /// Image under a linear map (m must be invertible over Q).
  IntegerLattice transformed(const IntMatrix& m) const;

  friend bool operator==(const IntegerLattice& a, const IntegerLattice& b) = default;
  friend auto operator<=>(const IntegerLattice& a, const IntegerLattice& b) {
    return a.basis_ <=> b.basis_;
  }

 private:
  explicit IntegerLattice(IntMatrix basis) : basis_(std::move(basis)) {}
  IntMatrix basis_;
};

/// Square-matrix entry point: the canonical basis of the column lattice of M.
IntegerLattice hermite_normal_form(const IntMatrix& m);

IntegerLattice lattice_intersect(const IntegerLattice& a, const IntegerLattice& b);
IntegerLattice lattice_sum(const IntegerLattice& a, const IntegerLattice& b);

/// Finds a common point of the cosets (ua + A) and (ub + B), if any.
std::optional<IntVector> coset_intersection(const IntVector& ua, const IntegerLattice& a,
                                            const IntVector& ub, const IntegerLattice& b);

}  // namespace solenoid

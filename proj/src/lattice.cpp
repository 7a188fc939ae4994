#include "solenoid/lattice.hpp"

#include <cstdlib>
#include <stdexcept>

#include "solenoid/errors.hpp"
#include "solenoid/rational.hpp"

namespace solenoid {

namespace {

std::int64_t magnitude(std::int64_t x) { return x < 0 ? -x : x; }

void column_op(IntMatrix& w, IntMatrix& u, int target, int source, std::int64_t factor) {
  w.add_column_multiple(target, source, factor);
  u.add_column_multiple(target, source, factor);
}

}  // namespace

HermiteDecomposition hermite_decomposition(const IntMatrix& generators) {
  const int n = generators.rows();
  const int m = generators.cols();
  if (m < n) throw DegenerateLatticeError("fewer generators than the dimension");
  IntMatrix w = generators;
  IntMatrix u = IntMatrix::identity(m);

  // Row by row from the bottom: gcd-combine the active columns until one
  // nonzero entry remains, then park it in the pivot slot.
  int pivot = m - 1;
  for (int row = n - 1; row >= 0; --row, --pivot) {
    for (;;) {
      int best = -1;
      for (int c = 0; c <= pivot; ++c)
        if (w(row, c) != 0 && (best < 0 || magnitude(w(row, c)) < magnitude(w(row, best)))) best = c;
      if (best < 0) throw DegenerateLatticeError("generators do not span a full-rank lattice");
      w.swap_columns(best, pivot);
      u.swap_columns(best, pivot);
      bool clean = true;
      for (int c = 0; c < pivot; ++c) {
        if (w(row, c) == 0) continue;
        column_op(w, u, c, pivot, -checked::floor_div(w(row, c), w(row, pivot)));
        if (w(row, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (w(row, pivot) < 0) {
      w.negate_column(pivot);
      u.negate_column(pivot);
    }
  }

  const int offset = m - n;
  for (int i = n - 1; i >= 0; --i)
    for (int j = i + 1; j < n; ++j) {
      const std::int64_t q = checked::floor_div(w(i, offset + j), w(i, offset + i));
      column_op(w, u, offset + j, offset + i, -q);
    }

  IntMatrix h(n, n);
  for (int c = 0; c < n; ++c) h.set_column(c, w.column(offset + c));
  return {std::move(h), std::move(u)};
}

IntegerLattice IntegerLattice::from_generators(const IntMatrix& generators) {
  return IntegerLattice(hermite_decomposition(generators).hnf);
}

IntegerLattice hermite_normal_form(const IntMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("hermite_normal_form expects a square matrix");
  if (m.determinant() == 0) throw DegenerateLatticeError("singular matrix " + m.str());
  return IntegerLattice::from_generators(m);
}

std::int64_t IntegerLattice::index() const {
  std::int64_t d = 1;
  for (int i = 0; i < dimension(); ++i) d = checked::mul(d, basis_(i, i));
  return d;
}

std::optional<IntVector> IntegerLattice::solve(const IntVector& v) const {
  const int n = dimension();
  if (static_cast<int>(v.size()) != n) throw StructuralError("vector dimension does not match lattice");
  IntVector x(n, 0);
  for (int i = n - 1; i >= 0; --i) {
    std::int64_t r = v[i];
    for (int j = i + 1; j < n; ++j) r = checked::sub(r, checked::mul(basis_(i, j), x[j]));
    if (r % basis_(i, i) != 0) return std::nullopt;
    x[i] = r / basis_(i, i);
  }
  return x;
}

bool IntegerLattice::contains(const IntVector& v) const { return solve(v).has_value(); }

IntVector IntegerLattice::reduce(const IntVector& v) const {
  IntVector r = v;
  for (int i = dimension() - 1; i >= 0; --i) {
    const std::int64_t q = checked::floor_div(r[i], basis_(i, i));
    if (q == 0) continue;
    for (int k = 0; k <= i; ++k) r[k] = checked::sub(r[k], checked::mul(q, basis_(k, i)));
  }
  return r;
}

bool IntegerLattice::is_subset_of(const IntegerLattice& other) const {
  for (int c = 0; c < dimension(); ++c)
    if (!other.contains(basis_.column(c))) return false;
  return true;
}

IntegerLattice IntegerLattice::transformed(const IntMatrix& m) const {
  return from_generators(m * basis_);
}

namespace {

IntMatrix concatenate(const IntegerLattice& a, const IntegerLattice& b) {
  if (a.dimension() != b.dimension()) throw StructuralError("lattice dimension mismatch");
  const int n = a.dimension();
  IntMatrix g(n, 2 * n);
  for (int c = 0; c < n; ++c) {
    g.set_column(c, a.basis().column(c));
    g.set_column(n + c, b.basis().column(c));
  }
  return g;
}

}  // namespace

IntegerLattice lattice_intersect(const IntegerLattice& a, const IntegerLattice& b) {
  const int n = a.dimension();
  const auto dec = hermite_decomposition(concatenate(a, b));
  // Kernel columns (x; y) satisfy A x + B y = 0, so A x lies in both.
  IntMatrix gens(n, n);
  for (int k = 0; k < n; ++k) {
    IntVector x(n);
    for (int i = 0; i < n; ++i) x[i] = dec.transform(i, k);
    gens.set_column(k, a.basis() * x);
  }
  return IntegerLattice::from_generators(gens);
}

IntegerLattice lattice_sum(const IntegerLattice& a, const IntegerLattice& b) {
  return IntegerLattice::from_generators(concatenate(a, b));
}

std::optional<IntVector> coset_intersection(const IntVector& ua, const IntegerLattice& a,
                                            const IntVector& ub, const IntegerLattice& b) {
  const int n = a.dimension();
  const auto dec = hermite_decomposition(concatenate(a, b));
  const IntegerLattice sum = IntegerLattice::from_generators(dec.hnf);
  const auto z = sum.solve(sub(ub, ua));
  if (!z) return std::nullopt;
  // The last n columns of U map the HNF coordinates back to (x; y).
  IntVector x(n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      x[i] = checked::add(x[i], checked::mul(dec.transform(i, n + k), (*z)[k]));
  return add(ua, a.basis() * x);
}

}  // namespace solenoid

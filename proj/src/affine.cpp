#include "solenoid/affine.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <sstream>

#include "solenoid/errors.hpp"
#include "solenoid/kernels.hpp"

namespace solenoid {

std::int64_t configured_index_cap() {
  if (const char* env = std::getenv("SOLENOID_INDEX_CAP")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultIndexCap;
}

// ---------------------------------------------------------------------------
// AffineElement

AffineElement::AffineElement(IntMatrix point, IntVector scaled_trans, std::int64_t denom)
    : point_(std::move(point)), trans_(std::move(scaled_trans)), denom_(denom) {
  if (!point_.is_square() || static_cast<int>(trans_.size()) != point_.rows())
    throw StructuralError("affine element with inconsistent dimensions");
  if (denom_ <= 0) throw StructuralError("denominator must be positive");
  const auto det = point_.determinant();
  if (det != 1 && det != -1)
    throw StructuralError("point part " + point_.str() + " is not unimodular");
}

AffineElement AffineElement::identity(int n, std::int64_t denom) {
  return AffineElement(IntMatrix::identity(n), IntVector(n, 0), denom);
}

AffineElement AffineElement::translation(IntVector scaled, std::int64_t denom) {
  const int n = static_cast<int>(scaled.size());
  return AffineElement(IntMatrix::identity(n), std::move(scaled), denom);
}

AffineElement AffineElement::from_rational(IntMatrix point, const std::vector<Rational>& trans,
                                           std::int64_t denom) {
  IntVector scaled(trans.size());
  for (std::size_t i = 0; i < trans.size(); ++i) {
    const Rational s = trans[i] * Rational(denom);
    if (!s.is_integer())
      throw StructuralError("translation " + trans[i].str() + " is not a multiple of 1/" +
                            std::to_string(denom));
    scaled[i] = s.num();
  }
  return AffineElement(std::move(point), std::move(scaled), denom);
}

std::vector<Rational> AffineElement::trans() const {
  std::vector<Rational> v;
  v.reserve(trans_.size());
  for (auto x : trans_) v.emplace_back(x, denom_);
  return v;
}

std::optional<int> AffineElement::point_order(int bound) const {
  IntMatrix p = point_;
  for (int k = 1; k <= bound; ++k) {
    if (p.is_identity()) return k;
    p = p * point_;
  }
  return std::nullopt;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  // Gauss-Jordan over Q; the result is integral because det = ±1.
  const int n = m.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = Rational(m(i, j));
    a[i][n + i] = Rational(1);
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) throw StructuralError("singular point part");
    std::swap(a[piv], a[col]);
    const Rational inv = Rational(1) / a[col][col];
    for (auto& x : a[col]) x *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const Rational f = a[r][col];
      for (int c = 0; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  IntMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!a[i][n + j].is_integer()) throw StructuralError("point part is not unimodular");
      inv(i, j) = a[i][n + j].num();
    }
  return inv;
}

AffineElement AffineElement::inverse() const {
  IntMatrix inv = unimodular_inverse(point_);
  IntVector t = negate(inv * trans_);
  return AffineElement(std::move(inv), std::move(t), denom_);
}

std::string AffineElement::str() const {
  std::ostringstream os;
  os << '[' << point_.str() << "] + (";
  for (std::size_t i = 0; i < trans_.size(); ++i) {
    if (i > 0) os << ", ";
    os << Rational(trans_[i], denom_).str();
  }
  os << ')';
  return os.str();
}

AffineElement compose(const AffineElement& a, const AffineElement& b) {
  if (a.dimension() != b.dimension()) throw StructuralError("dimension mismatch in composition");
  if (a.denom() != b.denom()) throw StructuralError("denominator mismatch in composition");
  return AffineElement(a.point() * b.point(), add(a.scaled_trans(), a.point() * b.scaled_trans()),
                       a.denom());
}

// ---------------------------------------------------------------------------
// Closure

namespace {

bool point_less(const IntMatrix& a, const IntMatrix& b) {
  const bool ia = a.is_identity(), ib = b.is_identity();
  if (ia != ib) return ia;
  return a < b;
}

}  // namespace

AffineSpan affine_closure(int dim, std::int64_t denom, const std::vector<AffineElement>& generators,
                          int order_bound) {
  std::vector<AffineElement> letters;
  for (const auto& g : generators) {
    if (g.dimension() != dim || g.denom() != denom)
      throw StructuralError("generator " + g.str() + " does not match dimension/denominator");
    if (!g.point_order(order_bound))
      throw StructuralError("point part of " + g.str() + " exceeds the order bound " +
                            std::to_string(order_bound));
    letters.push_back(g);
    letters.push_back(g.inverse());
  }

  // Transversal of the point group; Schreier generators r_{sp}⁻¹ s r_p are
  // translations that span the kernel.
  std::map<IntMatrix, AffineElement> transversal;
  std::deque<IntMatrix> queue;
  const auto id = AffineElement::identity(dim, denom);
  transversal.emplace(id.point(), id);
  queue.push_back(id.point());
  std::vector<IntVector> kernel;
  const std::size_t point_cap = 10'000;
  while (!queue.empty()) {
    const IntMatrix p = queue.front();
    queue.pop_front();
    const AffineElement rp = transversal.at(p);
    for (const auto& s : letters) {
      const AffineElement srp = s * rp;
      auto it = transversal.find(srp.point());
      if (it == transversal.end()) {
        transversal.emplace(srp.point(), srp);
        queue.push_back(srp.point());
        if (transversal.size() > point_cap) throw ResourceError("point group is not finite");
      } else {
        const AffineElement t = it->second.inverse() * srp;
        if (!is_zero(t.scaled_trans())) kernel.push_back(t.scaled_trans());
      }
    }
  }
  if (kernel.empty()) throw DegenerateLatticeError("group has no translations");

  AffineSpan span;
  span.translations = IntegerLattice::from_generators(IntMatrix::from_columns(kernel, dim));
  for (const auto& [p, r] : transversal) span.points.push_back(p);
  std::sort(span.points.begin(), span.points.end(), point_less);
  for (const auto& p : span.points)
    span.point_reps.push_back(span.translations.reduce(transversal.at(p).scaled_trans()));
  return span;
}

// ---------------------------------------------------------------------------
// AffineGroup

AffineGroup AffineGroup::create(int dim, std::int64_t denom, std::vector<NamedElement> generators,
                                int order_bound) {
  if (dim <= 0) throw StructuralError("dimension must be positive");
  if (generators.empty()) throw StructuralError("group needs at least one generator");
  AffineGroup g;
  g.dim_ = dim;
  g.denom_ = denom;
  g.order_bound_ = order_bound;
  std::vector<AffineElement> elems;
  for (const auto& ne : generators) {
    if (ne.name.empty()) throw StructuralError("generator without a name");
    elems.push_back(ne.element);
  }
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j)
      if (generators[i].name == generators[j].name)
        throw StructuralError("duplicate generator name '" + generators[i].name + "'");
  g.span_ = affine_closure(dim, denom, elems, order_bound);
  g.generators_ = std::move(generators);
  return g;
}

std::optional<int> AffineGroup::point_class_id(const IntMatrix& point) const {
  const auto& pts = span_.points;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pts[i] == point) return static_cast<int>(i);
  return std::nullopt;
}

bool AffineGroup::contains(const AffineElement& g) const {
  if (g.dimension() != dim_ || g.denom() != denom_) return false;
  const auto c = point_class_id(g.point());
  if (!c) return false;
  return span_.translations.contains(sub(g.scaled_trans(), span_.point_reps[*c]));
}

void AffineGroup::require_member(const AffineElement& g, const std::string& context) const {
  if (g.dimension() != dim_ || g.denom() != denom_)
    throw StructuralError(context + ": element " + g.str() + " has the wrong dimension or denominator");
  if (!contains(g)) throw StructuralError(context + ": element " + g.str() + " is not in the group");
}

std::optional<int> AffineGroup::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

bool operator==(const AffineGroup& a, const AffineGroup& b) {
  if (a.dim_ != b.dim_ || a.denom_ != b.denom_) return false;
  if (a.span_.points != b.span_.points || !(a.span_.translations == b.span_.translations)) return false;
  if (a.span_.point_reps != b.span_.point_reps) return false;
  // Same group; generator lists must also agree so permutations line up.
  if (a.generators_.size() != b.generators_.size()) return false;
  for (std::size_t i = 0; i < a.generators_.size(); ++i)
    if (!(a.generators_[i].element == b.generators_[i].element)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// FiniteIndexSubgroup

namespace {

bool rep_less(const AffineElement& a, const AffineElement& b) {
  if (a.point() != b.point()) return point_less(a.point(), b.point());
  return a.scaled_trans() < b.scaled_trans();
}

}  // namespace

FiniteIndexSubgroup FiniteIndexSubgroup::from_parts(IntegerLattice lattice,
                                                    std::vector<AffineElement> reps) {
  FiniteIndexSubgroup h;
  for (auto& r : reps) r = AffineElement(r.point(), lattice.reduce(r.scaled_trans()), r.denom());
  std::sort(reps.begin(), reps.end(), rep_less);
  if (reps.empty() || !reps.front().is_translation())
    throw StructuralError("subgroup without identity class");
  h.lattice_ = std::move(lattice);
  h.reps_ = std::move(reps);
  return h;
}

FiniteIndexSubgroup FiniteIndexSubgroup::generated_by(const AffineGroup& group,
                                                      const std::vector<AffineElement>& elements) {
  for (const auto& e : elements) group.require_member(e, "subgroup generator");
  const auto span = affine_closure(group.dimension(), group.denom(), elements, group.order_bound());
  std::vector<AffineElement> reps;
  for (std::size_t i = 0; i < span.points.size(); ++i)
    reps.emplace_back(span.points[i], span.point_reps[i], group.denom());
  return from_parts(span.translations, std::move(reps));
}

FiniteIndexSubgroup FiniteIndexSubgroup::generated(const AffineGroup& group,
                                                   const IntMatrix& lattice_columns,
                                                   const std::vector<AffineElement>& extra) {
  if (lattice_columns.rows() != group.dimension())
    throw StructuralError("lattice matrix has the wrong dimension");
  std::vector<AffineElement> elems;
  for (int c = 0; c < lattice_columns.cols(); ++c) {
    IntVector v = lattice_columns.column(c);
    for (auto& x : v) x = checked::mul(x, group.denom());
    elems.push_back(AffineElement::translation(std::move(v), group.denom()));
  }
  elems.insert(elems.end(), extra.begin(), extra.end());
  return generated_by(group, elems);
}

const AffineElement* FiniteIndexSubgroup::rep_for(const IntMatrix& point) const {
  for (const auto& r : reps_)
    if (r.point() == point) return &r;
  return nullptr;
}

std::int64_t FiniteIndexSubgroup::index_in(const AffineGroup& group) const {
  if (!lattice_.is_subset_of(group.translations()))
    throw StructuralError("subgroup lattice is not contained in the group lattice");
  const std::int64_t lattice_index = lattice_.index() / group.translations().index();
  const auto pg = static_cast<std::int64_t>(group.point_classes().size());
  const auto ph = static_cast<std::int64_t>(reps_.size());
  if (pg % ph != 0) throw StructuralError("point classes of the subgroup do not divide the group's");
  return checked::mul(lattice_index, pg / ph);
}

std::string FiniteIndexSubgroup::lattice_str() const {
  const auto& b = lattice_.basis();
  std::string s;
  for (int r = 0; r < b.rows(); ++r) {
    if (r > 0) s += " / ";
    for (int c = 0; c < b.cols(); ++c) {
      if (c > 0) s += ' ';
      s += Rational(b(r, c), denom()).str();
    }
  }
  return s;
}

std::string FiniteIndexSubgroup::str() const {
  std::string s = "<lattice " + lattice_str();
  for (const auto& r : reps_)
    if (!r.is_translation()) s += ", " + r.str();
  return s + ">";
}

bool contains(const FiniteIndexSubgroup& h, const AffineElement& g) {
  if (g.dimension() != h.dimension() || g.denom() != h.denom()) return false;
  const AffineElement* r = h.rep_for(g.point());
  if (!r) return false;
  return h.lattice().contains(sub(g.scaled_trans(), r->scaled_trans()));
}

std::vector<AffineElement> subgroup_generators(const FiniteIndexSubgroup& h) {
  std::vector<AffineElement> out;
  for (const auto& r : h.affine_reps())
    if (!r.is_translation()) out.push_back(r);
  const auto& b = h.lattice().basis();
  for (int c = 0; c < b.cols(); ++c) out.push_back(AffineElement::translation(b.column(c), h.denom()));
  return out;
}

FiniteIndexSubgroup conjugate(const AffineElement& g, const FiniteIndexSubgroup& h) {
  const AffineElement gi = g.inverse();
  IntegerLattice lattice = h.lattice().transformed(gi.point());
  std::vector<AffineElement> reps;
  reps.reserve(h.affine_reps().size());
  for (const auto& r : h.affine_reps()) reps.push_back(gi * r * g);
  return FiniteIndexSubgroup::from_parts(std::move(lattice), std::move(reps));
}

FiniteIndexSubgroup intersect(const FiniteIndexSubgroup& a, const FiniteIndexSubgroup& b) {
  IntegerLattice lattice = lattice_intersect(a.lattice(), b.lattice());
  std::vector<AffineElement> reps;
  for (const auto& ra : a.affine_reps()) {
    const AffineElement* rb = b.rep_for(ra.point());
    if (!rb) continue;
    const auto u = coset_intersection(ra.scaled_trans(), a.lattice(), rb->scaled_trans(), b.lattice());
    if (u) reps.emplace_back(ra.point(), *u, ra.denom());
  }
  return FiniteIndexSubgroup::from_parts(std::move(lattice), std::move(reps));
}

bool is_subgroup_of(const FiniteIndexSubgroup& a, const FiniteIndexSubgroup& b) {
  if (!a.lattice().is_subset_of(b.lattice())) return false;
  for (const auto& r : a.affine_reps())
    if (!contains(b, r)) return false;
  return true;
}

NormalityResult is_normal(const AffineGroup& group, const FiniteIndexSubgroup& h) {
  const auto& gens = group.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!(conjugate(gens[i].element, h) == h)) return {false, static_cast<int>(i)};
  return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// CosetSpace

CosetSpace::Key CosetSpace::key_of(const AffineElement& x) const {
  // Among x·r over the subgroup's point classes, pick the smallest point
  // class of G; its translations form a coset of P·L.
  int best_class = -1;
  const AffineElement* best_rep = nullptr;
  for (const auto& r : subgroup_.affine_reps()) {
    const auto c = group_.point_class_id(x.point() * r.point());
    if (!c) throw StructuralError("element " + x.str() + " is not in the group");
    if (best_class < 0 || *c < best_class) {
      best_class = *c;
      best_rep = &r;
    }
  }
  const IntVector t = add(x.scaled_trans(), x.point() * best_rep->scaled_trans());
  return Key{best_class, class_lattices_[best_class].reduce(t)};
}

AffineElement CosetSpace::canonical(const AffineElement& x) const {
  const Key k = key_of(x);
  return AffineElement(group_.point_classes()[k.point_class], k.trans, group_.denom());
}

int CosetSpace::coset_id(const AffineElement& x) const {
  const auto it = ids_.find(key_of(x));
  if (it == ids_.end()) throw StructuralError("element " + x.str() + " is not in the group");
  return it->second;
}

CosetSpace CosetSpace::build(const AffineGroup& group, const FiniteIndexSubgroup& h, std::int64_t cap) {
  const std::int64_t index = h.index_in(group);
  if (index > cap)
    throw ResourceError("coset index " + std::to_string(index) + " exceeds the cap " + std::to_string(cap) +
                        " (SOLENOID_INDEX_CAP)");
  CosetSpace cs;
  cs.group_ = group;
  cs.subgroup_ = h;
  for (const auto& p : group.point_classes()) cs.class_lattices_.push_back(h.lattice().transformed(p));

  std::vector<AffineElement> letters;
  for (const auto& g : group.generators()) {
    letters.push_back(g.element);
    letters.push_back(g.element.inverse());
  }
  std::map<Key, AffineElement> found;
  std::deque<AffineElement> queue;
  const auto id = cs.canonical(AffineElement::identity(group.dimension(), group.denom()));
  found.emplace(cs.key_of(id), id);
  queue.push_back(id);
  while (!queue.empty()) {
    const AffineElement x = queue.front();
    queue.pop_front();
    for (const auto& s : letters) {
      const AffineElement y = s * x;
      Key k = cs.key_of(y);
      if (found.contains(k)) continue;
      const AffineElement c(group.point_classes()[k.point_class], k.trans, group.denom());
      found.emplace(std::move(k), c);
      queue.push_back(c);
      if (static_cast<std::int64_t>(found.size()) > cap)
        throw ResourceError("coset enumeration exceeded the cap " + std::to_string(cap));
    }
  }
  if (static_cast<std::int64_t>(found.size()) != index)
    throw InvariantViolation("coset enumeration found " + std::to_string(found.size()) +
                             " cosets, expected index " + std::to_string(index));
  // std::map order is (point class, translation): the canonical order.
  int next = 0;
  for (auto& [k, rep] : found) {
    cs.ids_.emplace(k, next++);
    cs.reps_.push_back(rep);
  }
  for (const auto& g : group.generators()) {
    std::vector<int> perm(cs.reps_.size());
    for (std::size_t i = 0; i < cs.reps_.size(); ++i) perm[i] = cs.coset_id(g.element * cs.reps_[i]);
    cs.gen_perms_.push_back(std::move(perm));
  }
  return cs;
}

// ---------------------------------------------------------------------------
// Cores

FiniteIndexSubgroup normal_core(const AffineGroup& group, const FiniteIndexSubgroup& h,
                                std::int64_t cap) {
  const CosetSpace cs = CosetSpace::build(group, h, cap);
  return kernels::intersect_conjugates(cs.reps(), h);
}

FiniteIndexSubgroup normal_core_by_generators(const AffineGroup& group, const FiniteIndexSubgroup& h) {
  FiniteIndexSubgroup n = h;
  for (;;) {
    FiniteIndexSubgroup next = n;
    for (const auto& g : group.generators()) next = intersect(next, conjugate(g.element, n));
    if (next == n) return n;
    n = std::move(next);
  }
}

}  // namespace solenoid

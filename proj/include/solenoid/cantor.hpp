#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "solenoid/rational.hpp"

namespace solenoid {

inline constexpr int kDefaultPairwiseCap = 4000;

/// kDefaultPairwiseCap unless SOLENOID_PAIRWISE_CAP holds a positive integer.
int configured_pairwise_cap();

struct TreeMetric {
  Rational lambda;  ///< distance λ^j for first disagreement at level j+1
};

/// Point of K = (K₀×K₁)/({0}×K₁). `x` is the middle-thirds coordinate, `y`
/// a residue mod 2^depth read as a 2-adic address.
struct WarpPoint {
  bool collapsed = false;
  std::string x_digits;  ///< over {0,2}, most significant first
  std::int64_t y = 0;
  Rational x;
};

struct WarpMetric {
  Rational lambda;  ///< base of the 2-adic tree metric d₁ on K₁
  int depth = 0;
  std::vector<WarpPoint> points;
};

struct ExplicitMetric {
  std::vector<std::vector<Rational>> table;
};

using Metric = std::variant<TreeMetric, WarpMetric, ExplicitMetric>;

/// A finite-depth Cantor model: an ordered address set, its cylinder
/// structure at every depth 0..K, and an exact rational metric.
class CantorModel {
 public:
  CantorModel() = default;

  /// Addresses given as level paths (one symbol per level); cylinders are
  /// path prefixes.
  static CantorModel tree(std::vector<std::string> labels, const std::vector<std::vector<int>>& paths,
                          Rational lambda);
  /// Equal-length address strings with prefix cylinders and a distance
  /// table. Validates symmetry and zero-exactly-on-the-diagonal.
  static CantorModel explicit_table(std::vector<std::string> labels,
                                    std::vector<std::vector<Rational>> table);
  /// Warp-product model at depth K; d₁ uses base `lambda`.
  static CantorModel warp(int depth, Rational lambda);

  std::size_t size() const { return labels_.size(); }
  int depth() const { return depth_; }
  const std::string& label(int a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<int> index_of(std::string_view label) const;
  const Metric& metric() const { return metric_; }
  bool is_tree_metric() const { return std::holds_alternative<TreeMetric>(metric_); }
  bool is_warp() const { return std::holds_alternative<WarpMetric>(metric_); }

  /// Id of the depth-j cylinder containing address a. Depth 0 is the whole
  /// space; ids are dense and numbered by first appearance.
  int cylinder(int depth, int a) const { return cylinders_[depth][a]; }
  int cylinder_count(int depth) const { return cylinder_counts_[depth]; }
  /// All addresses in the depth-j cylinder around a, ascending.
  std::vector<int> cylinder_members(int depth, int a) const;
  /// Smallest depth at which the set is a union of cylinders.
  int cylinder_resolution(const std::vector<int>& set) const;

  Rational distance(int a, int b) const;
  Rational diameter(const std::vector<int>& set) const;
  Rational set_distance(const std::vector<int>& a, const std::vector<int>& b) const;

 private:
  void assign_cylinders(const std::vector<std::vector<std::string>>& keys);

  std::vector<std::string> labels_;
  int depth_ = 0;
  std::vector<std::vector<int>> cylinders_;
  std::vector<int> cylinder_counts_;
  std::vector<Rational> lambda_powers_;
  Metric metric_;
};

/// Warp-product distance d₀(x,x') + max{x,x'}·d₁(y,y'), with the collapsed
/// class at distance x' from [x',y'].
Rational warp_distance(const WarpMetric& m, const WarpPoint& a, const WarpPoint& b);

struct Generator {
  std::string name;
  std::vector<int> perm;
  std::vector<int> inverse;
};

/// A word over signed generators: letter +(g+1) is generator g, −(g+1) its
/// inverse. Evaluated right to left.
using Word = std::vector<int>;

/// A group acting on a Cantor model by named bijections, with a basepoint.
class CantorAction {
 public:
  static CantorAction create(CantorModel model, std::vector<std::pair<std::string, std::vector<int>>> gens,
                             int basepoint);

  const CantorModel& model() const { return model_; }
  std::size_t size() const { return model_.size(); }
  const std::vector<Generator>& generators() const { return gens_; }
  int basepoint() const { return basepoint_; }

  int apply_letter(int letter, int point) const {
    return letter > 0 ? gens_[letter - 1].perm[point] : gens_[-letter - 1].inverse[point];
  }
  /// Letters in canonical order: g1, g1⁻¹, g2, g2⁻¹, …
  std::vector<int> letters() const;
  /// Action restricted to a subset of generators (by index).
  CantorAction restricted(const std::vector<int>& generator_indices) const;

 private:
  CantorModel model_;
  std::vector<Generator> gens_;
  int basepoint_ = 0;
};

/// Parses "t t^-1 g1^3" (also '*' or '.' separators, "e" or "" for the
/// identity). Throws PreconditionError on unknown generator names.
Word parse_word(const CantorAction& action, std::string_view text);
std::string word_str(const CantorAction& action, const Word& word);
Word word_inverse(const Word& w);
/// w₁·w₂ (w₂ acts first).
Word word_concat(const Word& w1, const Word& w2);

int act(const CantorAction& action, const Word& word, int point);
/// Permutation of the address set realized by a word.
std::vector<int> word_permutation(const CantorAction& action, const Word& word);

/// Breadth-first closure of {point} under generators and inverses, words of
/// length ≤ max_length; ascending addresses.
std::vector<int> orbit(const CantorAction& action, int point, int max_length);
std::vector<int> full_orbit(const CantorAction& action, int point);

struct MinimalityResult {
  bool minimal = true;
  std::vector<int> witness_orbit;  ///< a non-full orbit when not minimal
};
MinimalityResult is_minimal(const CantorAction& action);

struct ModulusRow {
  Rational r;
  Rational kappa;
};

struct ModulusTable {
  std::vector<ModulusRow> rows;  ///< r strictly decreasing over realized positive distances
  std::string method;            ///< "ultrametric" or "pairwise"

  /// Largest tabled δ with κ(δ) < ε.
  std::optional<Rational> equicontinuity_witness(const Rational& epsilon) const;
  bool is_isometric() const;  ///< κ(r) = r on every row
  bool is_monotone() const;
  friend bool operator==(const ModulusTable& a, const ModulusTable& b) {
    if (a.rows.size() != b.rows.size()) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i)
      if (a.rows[i].r != b.rows[i].r || a.rows[i].kappa != b.rows[i].kappa) return false;
    return true;
  }
};

/// Builds a table from per-distance maxima (unsorted, possibly repeated r).
ModulusTable modulus_from_maxima(std::vector<ModulusRow> maxima, std::string method);

/// Exact κ over all pairs and generators. Tree metrics use the per-level
/// ultrametric route with no cap; other metrics go pairwise and respect
/// `pairwise_cap` addresses.
ModulusTable modulus_table(const CantorAction& action, int pairwise_cap = configured_pairwise_cap());
ModulusTable modulus_ultrametric(const CantorAction& action);

struct DistalityResult {
  bool distal = true;
  std::string method;  ///< "isometry" or "enumeration"
  std::size_t elements = 0;
  Rational min_delta;
  int worst_a = -1;
  int worst_b = -1;
  /// δ_{w,w'} per unordered pair (a < b) in row-major triangular order;
  /// empty for the isometry route, where δ_{w,w'} = d(w,w').
  std::vector<Rational> deltas;
};

/// Distinct group elements (as permutations) reachable by words of length
/// ≤ max_length, breadth-first; throws ResourceError above `cap` elements.
std::vector<std::vector<int>> enumerate_elements(const CantorAction& action, int max_length,
                                                 std::size_t cap = 200'000);

DistalityResult is_distal(const CantorAction& action, int max_length,
                          int pairwise_cap = configured_pairwise_cap());

struct CylinderMeasure {
  std::vector<Rational> weights;
  std::vector<int> support;    ///< the orbit closure carrying the mass
  bool full_support = true;
  bool verified = false;       ///< g_*μ = μ for every generator, exactly
};
CylinderMeasure invariant_measure(const CantorAction& action);
bool is_invariant(const CantorAction& action, const std::vector<Rational>& weights);

struct HolonomyTrivial {
  int depth;
};
struct HolonomyNontrivial {
  int depth;             ///< the model depth K
  int witness_depth;     ///< deepest cylinder on which the word still moves a point
  int moved_address;
  int moved_to;
};
using HolonomyResult = std::variant<HolonomyTrivial, HolonomyNontrivial>;

/// Germ of a stabilizing word at w: the least j < K with the word the
/// identity on the depth-j cylinder around w. The depth-K cylinder is {w}
/// itself and carries no germinal information.
HolonomyResult germinal_holonomy(const CantorAction& action, const Word& word, int w);

/// Largest eccentricity in the Schreier graph of the generators.
int schreier_diameter(const CantorAction& action);

struct TriangleCheck {
  bool holds = true;
  std::size_t triples_checked = 0;
  bool exhaustive = true;
  int a = -1, b = -1, c = -1;  ///< violating triple: d(a,c) > d(a,b) + d(b,c)
};
/// Exhaustive up to `exhaustive_limit` addresses, otherwise `samples`
/// seeded random triples.
TriangleCheck check_triangle(const CantorModel& model, std::size_t exhaustive_limit, std::size_t samples,
                             std::uint64_t seed);
/// Strong triangle inequality d(a,c) ≤ max(d(a,b), d(b,c)).
TriangleCheck check_ultrametric(const CantorModel& model, std::size_t exhaustive_limit,
                                std::size_t samples, std::uint64_t seed);

}  // namespace solenoid

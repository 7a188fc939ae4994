#pragma once

#include <optional>
#include <string>
#include <vector>

#include "solenoid/cantor.hpp"

namespace solenoid {

/// Disjoint address blocks, each ascending, ordered by least address.
struct ClopenPartition {
  std::vector<std::vector<int>> blocks;

  static ClopenPartition from_blocks(std::vector<std::vector<int>> blocks);
  /// Block index (from 1) per address, 0 for addresses in no block.
  std::vector<int> labels(std::size_t size) const;
};

/// Words γ with γ(w₀) ∈ W, one per distinct restriction of γ to W, in
/// shortlex order of discovery.
struct ReturnWordSet {
  std::vector<Word> words;
  std::vector<std::vector<int>> images;  ///< images[i][k] = γ_i(W[k])
  int max_length = 0;
  std::size_t states = 0;  ///< distinct restrictions explored, returning or not
  bool closed = false;     ///< no new restriction appeared before max_length
};

inline constexpr std::size_t kDefaultStateBudget = 20'000'000;  ///< states × |W|

ReturnWordSet return_words(const CantorAction& action, const std::vector<int>& window, int max_length,
                           std::size_t budget = kDefaultStateBudget);

/// Index of the block containing γ(u), or 0 when γ(u) ∉ W.
int code(const CantorAction& action, const std::vector<int>& window, const ClopenPartition& partition, int u,
         const Word& word);

/// {u ∈ W : code(u, γ) = code(w₀, γ) for every listed γ}.
std::vector<int> compute_V(const CantorAction& action, const std::vector<int>& window,
                           const ClopenPartition& partition, const ReturnWordSet& words);

/// Coarsest partition of the whole address set refining "block of W, or
/// outside W" that every generator maps block-wise; class ids per address.
std::vector<int> refine_fixed_point(const CantorAction& action, const std::vector<int>& window,
                                    const ClopenPartition& partition);
/// The class of w₀ under refine_fixed_point, intersected with W.
std::vector<int> fixed_point_block(const CantorAction& action, const std::vector<int>& window,
                                   const ClopenPartition& partition);

struct Translate {
  std::vector<int> set;
  Word word;
};

/// Distinct images γ(V) over the return words; the first is V itself under
/// the empty word, the rest ordered by least address. Throws
/// InvariantViolation when two images overlap without being equal.
std::vector<Translate> translates(const CantorAction& action, const std::vector<int>& window,
                                  const std::vector<int>& v, const ReturnWordSet& words);

struct CodingLevel {
  int level = 0;
  Rational epsilon;
  std::optional<Rational> eta;
  std::optional<Rational> delta;
  bool resolution_limit = false;  ///< δ missing because η is at or below the least realized distance
  int partition_depth = 0;
  ClopenPartition partition;
  std::vector<int> v;
  std::vector<Translate> translates;
  ReturnWordSet words;
  bool fixed_point_agrees = false;
  bool covers_window = false;
};

struct CodingOptions {
  int window_depth = 1;
  int max_levels = 64;
  int word_length = 8;
  std::size_t budget = kDefaultStateBudget;
  int pairwise_cap = configured_pairwise_cap();
};

struct CodingChain {
  std::vector<int> window;
  int window_depth = 0;
  bool minimal = false;
  int schreier_diameter = 0;
  ModulusTable modulus;
  std::vector<CodingLevel> levels;
  std::string stop_reason;  ///< "singletons", "levels", "single-address window" or "not equicontinuous"
  bool aborted = false;
};

CodingChain coding_chain(const CantorAction& action, const CodingOptions& options = {});

struct LemmaCounts {
  std::size_t checks = 0;
  std::size_t violations = 0;
};

struct LemmaReport {
  LemmaCounts fixset, disjointness, coverage, equivariance, local_constancy, nesting;
  std::vector<std::string> messages;  ///< first few violations, human readable
  bool ok() const {
    return fixset.violations + disjointness.violations + coverage.violations + equivariance.violations +
               local_constancy.violations + nesting.violations ==
           0;
  }
};

/// Exhaustive re-verification of a produced chain: the fixset law for every
/// listed word, disjointness and (for minimal actions) coverage of the
/// translates, code equivariance, cylinder structure of V and its translates,
/// and the nesting and halving inequalities.
LemmaReport check_lemmas(const CantorAction& action, const CodingChain& chain);

}  // namespace solenoid

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "solenoid/cantor.hpp"
#include "solenoid/matrix.hpp"
#include "solenoid/rational.hpp"
#include "solenoid/tower.hpp"

namespace solenoid {

// Line-oriented config: "[section]" headers, "key = value" or
// "key name = value" entries, '#' comments. Matrices are written row by row
// as "3 0 / 0 35"; an affine element is "matrix | translation" with exact
// rationals "p/q".

struct AffineSpec {
  IntMatrix point;
  std::vector<Rational> trans;
  friend bool operator==(const AffineSpec&, const AffineSpec&) = default;
};

struct NamedAffineSpec {
  std::string name;
  AffineSpec element;
  friend bool operator==(const NamedAffineSpec&, const NamedAffineSpec&) = default;
};

struct LevelSpec {
  IntMatrix lattice;
  std::vector<AffineSpec> reps;
  friend bool operator==(const LevelSpec&, const LevelSpec&) = default;
};

struct ChainSpec {
  std::string gallery;  ///< empty for an explicit chain
  std::int64_t p = 2;   ///< vietoris base
  int depth = 0;        ///< gallery depth
  int dimension = 0;
  std::int64_t denominator = 1;
  std::vector<NamedAffineSpec> generators;
  std::vector<LevelSpec> levels;
  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;
};

struct PermutationSpec {
  std::string name;
  std::vector<std::string> images;  ///< image of each address, in address order
  friend bool operator==(const PermutationSpec&, const PermutationSpec&) = default;
};

struct DistanceSpec {
  std::string a, b;
  Rational d;
  friend bool operator==(const DistanceSpec&, const DistanceSpec&) = default;
};

struct ActionSpec {
  std::string gallery;  ///< "warp" or empty for an explicit action
  int depth = 6;
  int fiber_generators = 1;
  bool free_generator = true;
  std::vector<std::string> addresses;
  std::string basepoint;
  std::string metric = "tree";  ///< "tree" (prefix cylinders) or "table"
  std::vector<PermutationSpec> generators;
  std::vector<DistanceSpec> distances;
  friend bool operator==(const ActionSpec&, const ActionSpec&) = default;
};

struct RunSpec {
  std::optional<int> depth;
  std::optional<int> words;
  std::optional<Rational> lambda;
  std::optional<std::uint64_t> seed;
  std::optional<int> window_depth;
  std::optional<int> levels;
  friend bool operator==(const RunSpec&, const RunSpec&) = default;
};

struct ConfigFile {
  std::optional<ChainSpec> chain;
  std::optional<ActionSpec> action;
  RunSpec run;
  friend bool operator==(const ConfigFile&, const ConfigFile&) = default;
};

/// Throws ParseError with line and column on syntax errors and
/// StructuralError naming the section on semantic ones.
ConfigFile parse_config(std::string_view text);
ConfigFile load_config(const std::string& path);
/// Canonical text: fixed section and key order, normalized numerals.
std::string serialize_config(const ConfigFile& config);

/// Builds the chain described by a config (gallery builder or explicit).
SubgroupChain build_chain(const ChainSpec& spec);
/// Builds the action described by an action section.
CantorAction build_action(const ActionSpec& spec, const Rational& lambda);

}  // namespace solenoid

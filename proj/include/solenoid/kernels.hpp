#pragma once

// Data-parallel kernels. Each OpenMP kernel has a serial reference twin with
// the same contract; results are exact, so the two must agree bit for bit.

#include <vector>

#include "solenoid/affine.hpp"

namespace solenoid {

class CantorAction;
struct ModulusTable;
struct DistalityResult;

namespace kernels {

/// ⋂ x H x⁻¹ over the given coset representatives x.
FiniteIndexSubgroup intersect_conjugates(const std::vector<AffineElement>& reps,
                                         const FiniteIndexSubgroup& h);
FiniteIndexSubgroup intersect_conjugates_serial(const std::vector<AffineElement>& reps,
                                                const FiniteIndexSubgroup& h);

/// Exact modulus of continuity over all address pairs and all generators.
ModulusTable modulus_pairwise(const CantorAction& action);
ModulusTable modulus_pairwise_serial(const CantorAction& action);

/// Per-pair minimum image distance over a set of group elements given as
/// permutations of the address set.
DistalityResult distality_pairwise(const CantorAction& action,
                                   const std::vector<std::vector<int>>& elements);
DistalityResult distality_pairwise_serial(const CantorAction& action,
                                          const std::vector<std::vector<int>>& elements);

}  // namespace kernels
}  // namespace solenoid

#pragma once

#include "solenoid/affine.hpp"
#include "solenoid/cantor.hpp"
#include "solenoid/tower.hpp"

namespace solenoid::gallery {

/// G = Z, H_ℓ = p^ℓ Z.
SubgroupChain vietoris(std::int64_t p, int depth);

/// The Klein-type group ⟨t(1,0), t(0,1), γ = (D, (1/2, 0))⟩, D = diag(1, −1).
AffineGroup klein_group();

/// H_ℓ = ⟨A^ℓ Z², (D, (a^ℓ/2, 0))⟩ in the Klein-type group, A = diag(a, b)
/// with a odd.
SubgroupChain klein_chain(std::int64_t a, std::int64_t b, int depth, int max_depth);

/// A = diag(3, 35); depth ≤ 3.
SubgroupChain fokkink_oversteegen(int depth);
/// A = diag(1, 2); depth ≤ 8.
SubgroupChain rogers_tollefson(int depth);
/// A = diag(3, 5); depth ≤ 4.
SubgroupChain small_fo_variant(int depth);

/// Warp-product model at depth K with k₁ commuting odometer generators
/// g_i(y) = y + (2i − 1) on the fiber, fixing the collapsed class, and
/// (optionally) f, the cyclic shift of the address order.
CantorAction warp_example(int depth, int k1_gens, bool with_f = true, const Rational& lambda = Rational(1, 2));

}  // namespace solenoid::gallery

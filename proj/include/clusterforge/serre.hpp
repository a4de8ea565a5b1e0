#pragma once

// Nakayama functor, AR translation on exceptional lattices, the symbolic
// action of F = S Σ^-2 on shifted modules, and BGP reflections.
//
// τM is the kernel of ν applied to the minimal resolution
// 0 -> P_1 -> P_0 -> M -> 0; ν(P_i) = I_i and on maps ν sends the dual path
// r* to s* whenever r = s·p. τ^-1 is D τ D with D the Z-dual (a lattice over
// the opposite quiver).

#include <vector>

#include "clusterforge/rep.hpp"

namespace clusterforge {

/// Direct sum of the injective lattices I_v over the vertex list, basis at w
/// summand by summand (dual paths w ~> v).
ZRep injective_sum(const Quiver& q, const std::vector<int>& vertices);

/// ν of a map P(source_terms) -> P(target_terms) given by path entries
/// [target summand][source summand]; the result maps
/// injective_sum(source_terms) -> injective_sum(target_terms).
RepMap nakayama(const Quiver& q, const std::vector<int>& target_terms, const std::vector<int>& source_terms,
                const std::vector<std::vector<PathEntry>>& entries);

/// Throws IsProjective, NotExceptional.
ZRep tau(const ZRep& m);
/// Throws IsInjective, NotExceptional.
ZRep tau_inv(const ZRep& m);
/// Same, for lattices the caller already knows to be exceptional (e.g.
/// translates of projectives); skips the Hom/Ext test.
ZRep tau_known_exceptional(const ZRep& m);
ZRep tau_inv_known_exceptional(const ZRep& m);

struct ShiftedModule {
  ZRep module;
  int shift = 0;
};

/// F (power +1) or F^-1 (power -1):
///   F(M, s) = (τM, s-1),  F(P_i, s) = (I_i, s-2),
///   F^-1(M, s) = (τ^-1 M, s+1),  F^-1(I_i, s) = (P_i, s+2).
ShiftedModule f_apply(const ShiftedModule& x, int power, bool known_exceptional = false);

/// C+ at a sink or C- at a source; the result lives over q.reflected_at(v).
/// Throws VertexNotSinkOrSource, SimpleAtVertex.
ZRep reflect(const ZRep& m, int v);

}  // namespace clusterforge

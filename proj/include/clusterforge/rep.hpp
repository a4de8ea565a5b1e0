#pragma once

// Finitely presented representations of an acyclic quiver over Z.
//
// Arrows act along their direction: the action of a: i -> j is a matrix
// from the generators at i to the generators at j. A vertex group is
// Z^generators / image(relations); a representation without relations is a
// lattice.
//
// With this convention the torsion module "Z/2 at vertex 1" of the quiver
// 1 -> 2 has the minimal resolution
//   0 -> P_2 --[a; -2]--> P_1 + P_2 --[2  a]--> P_1 -> M -> 0,
// i.e. the three-term shape with one multiplication by 2 and one arrow.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clusterforge/errors.hpp"
#include "clusterforge/field.hpp"
#include "clusterforge/quiver.hpp"
#include "clusterforge/zlinalg.hpp"

namespace clusterforge {

class ZRep {
 public:
  ZRep() = default;
  /// Shapes are checked; use descends() to check that the actions respect
  /// the relations. `relations` may be empty (lattice); otherwise it holds
  /// one matrix per vertex.
  ZRep(Quiver q, std::vector<std::size_t> generators,
       std::vector<IntMatrix> relations, std::vector<IntMatrix> actions);

  /// Lattice with the given ranks and actions.
  static ZRep lattice(Quiver q, std::vector<std::size_t> ranks,
                      std::vector<IntMatrix> actions);
  static ZRep zero(Quiver q);

  const Quiver& quiver() const { return q_; }
  std::size_t generators(int v) const { return gens_.at(static_cast<std::size_t>(v - 1)); }
  /// g_v x r_v; zero columns for free vertex groups.
  const IntMatrix& relations(int v) const { return rels_.at(static_cast<std::size_t>(v - 1)); }
  const IntMatrix& action(std::size_t arrow) const { return acts_.at(arrow); }

  bool is_lattice() const;
  bool is_zero() const;
  /// Free rank of every vertex group.
  DimVector rank_vector() const;
  /// Total generator count per vertex (equals rank_vector for lattices).
  std::vector<std::size_t> generator_counts() const { return gens_; }
  Presentation vertex_group(int v) const;
  /// Composite action along a path (identity for trivial paths).
  IntMatrix path_action(const Path& p) const;

  /// Every action maps relations into relations.
  bool descends() const;

  /// Exact textual fingerprint of the data; equal keys mean equal data.
  std::string structural_key() const;

  friend bool operator==(const ZRep&, const ZRep&) = default;

 private:
  Quiver q_;
  std::vector<std::size_t> gens_;
  std::vector<IntMatrix> rels_;
  std::vector<IntMatrix> acts_;
};

/// A morphism of representations: one integer matrix per vertex acting on
/// generators (target generators x source generators).
struct RepMap {
  std::vector<IntMatrix> components;

  const IntMatrix& at(int v) const { return components.at(static_cast<std::size_t>(v - 1)); }
  friend bool operator==(const RepMap&, const RepMap&) = default;
};

RepMap compose(const RepMap& after, const RepMap& before);
RepMap identity_map(const ZRep& m);
/// True if f is a morphism M -> N on generators (commutes with the actions
/// modulo the relations of N, and respects the relations of M).
bool is_morphism(const ZRep& m, const ZRep& n, const RepMap& f);

ZRep projective(const Quiver& q, int i);
ZRep injective_lattice(const Quiver& q, int i);
/// Z at vertex i, zero elsewhere.
ZRep simple_lattice(const Quiver& q, int i);

struct HomResult {
  FinAbGroup group;
  /// Generators of the homomorphism group; a Z-basis when N is a lattice.
  std::vector<RepMap> basis;
};

HomResult hom_group(const ZRep& m, const ZRep& n);
FinAbGroup ext1_group(const ZRep& m, const ZRep& n);
/// Ext^1 computed from the projective resolution of m, for any finitely
/// presented m and n.
FinAbGroup ext1_via_resolution(const ZRep& m, const ZRep& n);
/// Hom computed as H^0 of Hom(resolution of m, n).
FinAbGroup hom_via_resolution(const ZRep& m, const ZRep& n);

/// Map P_source -> P_target given by a Z-combination of the paths
/// target ~> source, listed in Quiver::paths order.
struct PathEntry {
  int target = 0;
  int source = 0;
  IntVector coefficients;

  bool is_zero() const;
  /// e.g. "2*e1", "a1", "-2*e2 + a1*a3"; arrows are named a<index>.
  std::string to_string(const Quiver& q) const;
};

struct ProjResolution {
  Quiver quiver;
  /// terms[k] lists the vertices of the indecomposable summands of P_k.
  std::vector<std::vector<int>> terms;
  /// differentials[k]: P_{k+1} -> P_k, indexed [target summand][source summand].
  std::vector<std::vector<std::vector<PathEntry>>> differentials;
  /// Image in M of the generator of each summand of P_0.
  std::vector<IntVector> augmentation;

  std::size_t length() const { return terms.empty() ? 0 : terms.size() - 1; }
  std::string to_string() const;
};

/// Resolution built from minimal generating sets of the tops; length <= 1
/// for lattices and <= 2 in general. Projective summands P_v with the same
/// vertex never cancel (no unit entries on trivial paths).
ProjResolution projective_resolution(const ZRep& m);

/// Vertexwise realization of a differential d_k: P_{k+1} -> P_k as a map
/// between the projective-sum representations.
RepMap realize_differential(const ProjResolution& r, std::size_t k);
/// The representation sum of P_v over the given vertex list.
ZRep projective_sum(const Quiver& q, const std::vector<int>& vertices);

/// Representation over F_p (or Q when p == 0).
struct FieldRep {
  Quiver quiver;
  Field field;
  std::vector<std::size_t> dims;
  std::vector<FieldMatrix> actions;

  DimVector dim_vector() const;
  bool is_zero() const;
};

FieldRep base_change(const ZRep& m, unsigned long p);

struct FieldDims {
  std::size_t hom = 0;
  std::size_t ext1 = 0;
  friend bool operator==(const FieldDims&, const FieldDims&) = default;
};

FieldDims field_hom_ext_dims(const FieldRep& m, const FieldRep& n);

bool is_rigid(const ZRep& m);
/// Rigid with endomorphism ring Z.
bool is_exceptional(const ZRep& m);

ZRep direct_sum(const ZRep& m, const ZRep& n);
/// Complement C with M = S + C, for a lattice M and exceptional lattice S.
/// Throws NotASummand.
ZRep strip_summand(const ZRep& m, const ZRep& s);

/// Both arguments must be exceptional (PreconditionViolated otherwise).
bool are_isomorphic_exceptional(const ZRep& m, const ZRep& n);

/// Hom_Z(M, Z) as a lattice over the opposite quiver.
ZRep dual(const ZRep& m);

/// Kernel of a morphism between lattices, as a sublattice of the source.
ZRep kernel(const ZRep& source, const RepMap& f);

struct CokernelResult {
  ZRep cokernel;  // torsion-free quotient of the target
  bool saturated = false;  // image was a direct summand at every vertex
};
/// Cokernel of a morphism into a lattice, modulo torsion.
CokernelResult cokernel(const ZRep& target, const RepMap& f);

/// P_v when m is (isomorphic to) an indecomposable projective, else nullopt.
std::optional<int> projective_vertex(const ZRep& m);
/// I_v when m is (isomorphic to) an indecomposable injective lattice.
std::optional<int> injective_vertex(const ZRep& m);

}  // namespace clusterforge

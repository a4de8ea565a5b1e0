#pragma once

// The integral cluster category of an acyclic quiver, modelled on the
// fundamental set ind(lattices) ∪ {ΣP_i}.
//
// Hom_C(X, Y) = ⊕_l Hom_D(X, F^l Y) with F = S Σ^-2. In the derived category
// of the hereditary order ZQ, Hom_D((M, s), (N, t)) is Hom(M, N) for t = s,
// Ext^1(M, N) for t = s + 1 and zero otherwise, so only finitely many l
// contribute.

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "clusterforge/rep.hpp"
#include "clusterforge/serre.hpp"

namespace clusterforge {

class ClusterObject {
 public:
  enum class Kind { Module, ShiftedProjective };

  ClusterObject() = default;
  /// m must be exceptional; not rechecked here.
  static ClusterObject module(ZRep m);
  static ClusterObject shifted_projective(const Quiver& q, int i);

  Kind kind() const { return kind_; }
  bool is_module() const { return kind_ == Kind::Module; }
  /// The lattice for Module objects, P_i for ShiftedProjective(i).
  const ZRep& rep() const { return rep_; }
  int vertex() const { return vertex_; }
  const Quiver& quiver() const { return rep_.quiver(); }

  /// Representative in the derived category: (M, 0) or (P_i, 1).
  ShiftedModule representative() const;
  /// dim M, or -dim P_i for ΣP_i.
  IntVector class_vector() const;
  /// Canonical key: "M(1,0)" or "SP2". Exceptional lattices are determined by
  /// their rank vector, so the key identifies the object up to isomorphism.
  std::string key() const;
  /// Human readable: "(1,0)" or "ΣP2".
  std::string label() const;

  friend bool operator<(const ClusterObject& a, const ClusterObject& b);
  friend bool operator==(const ClusterObject& a, const ClusterObject& b) { return a.key() == b.key(); }

 private:
  Kind kind_ = Kind::Module;
  ZRep rep_;
  int vertex_ = 0;
};

/// Reduce with F^{±1} to (M, 0) or (P_i, 1).
ClusterObject normalize(const ShiftedModule& x);

/// Hom in the derived category between shifted lattices.
FinAbGroup hom_d(const ShiftedModule& x, const ShiftedModule& y);

FinAbGroup hom_c(const ClusterObject& x, const ClusterObject& y);
/// Hom_C(x, F^l y) summed over l, for an arbitrary shifted representative.
FinAbGroup hom_c(const ShiftedModule& x, const ShiftedModule& y);
FinAbGroup ext1_c(const ClusterObject& x, const ClusterObject& y);

/// The orbit term that carries Hom_C(x, y): pairs (l, Hom_D(x, F^l y)) with
/// nonzero group.
std::vector<std::pair<int, FinAbGroup>> hom_c_terms(const ShiftedModule& x, const ShiftedModule& y);

/// G(Module(M)) = M, G(ΣP_i) = 0.
ZRep g_functor(const ClusterObject& x);

struct PoolEntry {
  ClusterObject object;
  std::string provenance;  // projective, injective, tau-orbit, reflection, mutation-cone, shifted-projective
};

class RigidPool {
 public:
  RigidPool() = default;
  RigidPool(Quiver q, int dim_bound) : q_(std::move(q)), bound_(dim_bound) {}

  const Quiver& quiver() const { return q_; }
  int dim_bound() const { return bound_; }
  bool complete() const { return complete_; }
  void set_complete(bool c) { complete_ = c; }

  /// Snapshot of the entries, sorted by key.
  std::vector<PoolEntry> entries() const;
  std::vector<ClusterObject> objects() const;
  std::size_t size() const;
  /// Adds the object unless its key is present; returns true if added.
  bool insert(const ClusterObject& x, const std::string& provenance);
  std::optional<ClusterObject> find(const std::string& key) const;

 private:
  Quiver q_;
  int bound_ = 0;
  bool complete_ = false;
  std::map<std::string, PoolEntry> by_key_;
  mutable std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
};

RigidPool build_pool(const Quiver& q, int dim_bound);

struct TiltingCheck {
  bool ok = false;
  std::string certificate;  // first failing condition, empty when ok
};

TiltingCheck is_cluster_tilting(const std::vector<ClusterObject>& t);

struct ExchangeTriangleData {
  ClusterObject x;  // the summand being replaced
  ClusterObject y;  // its replacement
  std::vector<ClusterObject> e;        // middle term of y -> e -> x -> Σy
  std::vector<ClusterObject> e_prime;  // middle term of x -> e' -> y -> Σx
  int l = 0;        // orbit index carrying the connecting map of the first triangle
  int l_prime = 0;  // same for the second
  /// For all-module triangles with l = 0: the injection of 0 -> y -> e -> x -> 0
  /// (resp. 0 -> x -> e' -> y -> 0), as a map of lattices.
  std::optional<RepMap> witness;
  std::optional<RepMap> witness_prime;

  std::string to_string() const;
};

struct MutationResult {
  std::vector<ClusterObject> cluster;  // position k replaced
  ExchangeTriangleData triangles;
  bool constructed = false;  // replacement came from mutate_construct
};

/// Throws NotFoundWithinBound.
MutationResult mutate(const std::vector<ClusterObject>& t, std::size_t k, RigidPool& pool);
/// Throws ConstructionFailed.
ClusterObject mutate_construct(const std::vector<ClusterObject>& t, std::size_t k);
/// Throws BalanceUnsolvable.
ExchangeTriangleData exchange_triangles(const ClusterObject& x, const ClusterObject& y,
                                        const std::vector<ClusterObject>& complement);

struct ExchangeEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t position = 0;  // summand index in the sorted `from` node
  ExchangeTriangleData triangles;
};

struct ExchangeGraph {
  Quiver quiver;
  std::vector<std::vector<ClusterObject>> nodes;  // each sorted by key
  std::vector<ExchangeEdge> edges;                // one per unordered pair
  bool truncated = false;
  std::vector<std::string> notes;  // why exploration stopped early

  std::size_t degree(std::size_t node) const;
  std::string node_key(std::size_t node) const;
  std::string to_dot() const;
  std::string to_json() const;
};

std::vector<ClusterObject> sorted_cluster(std::vector<ClusterObject> t);
std::string cluster_key(const std::vector<ClusterObject>& t);

ExchangeGraph exchange_graph(const Quiver& q, int dim_bound, std::size_t max_nodes);
ExchangeGraph exchange_graph(RigidPool& pool, std::size_t max_nodes);

struct BijectionReport {
  unsigned long prime = 0;
  std::size_t objects = 0;
  std::size_t rigid_reductions = 0;
  std::size_t distinct_reductions = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

BijectionReport verify_bijection_mod_p(const RigidPool& pool, unsigned long p);

}  // namespace clusterforge

#pragma once

// Finite acyclic quivers, dimension vectors and the bilinear forms attached
// to them.
//
// Vertices are numbered 1..n in every public interface. Per-vertex vectors
// are stored 0-based (entry v-1 belongs to vertex v). Arrows are identified
// by their position in the arrow list, also 1-based in text formats and
// 0-based in containers.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "clusterforge/errors.hpp"
#include "clusterforge/zlinalg.hpp"

namespace clusterforge {

struct Arrow {
  int source = 0;
  int target = 0;

  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// A path is the sequence of arrow indices (0-based) it traverses, together
/// with its endpoints; the trivial path at v has no arrows.
struct Path {
  int start = 0;
  int end = 0;
  std::vector<std::size_t> arrows;

  std::size_t length() const { return arrows.size(); }
  friend bool operator==(const Path&, const Path&) = default;
};

class CyclicQuiver : public Error {
 public:
  CyclicQuiver(const std::string& what, std::vector<int> cycle)
      : Error(what), cycle_(std::move(cycle)) {}
  /// Vertices of one oriented cycle, in order.
  const std::vector<int>& cycle() const { return cycle_; }

 private:
  std::vector<int> cycle_;
};

class Quiver {
 public:
  Quiver() = default;
  /// Throws std::invalid_argument on out-of-range endpoints and loops.
  /// Acyclicity is checked by validate().
  Quiver(int vertices, std::vector<Arrow> arrows);

  int vertex_count() const { return n_; }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(std::size_t a) const { return arrows_.at(a); }

  /// Indices of arrows ending (resp. starting) at v.
  std::vector<std::size_t> arrows_into(int v) const;
  std::vector<std::size_t> arrows_out_of(int v) const;

  bool is_sink(int v) const { return arrows_out_of(v).empty(); }
  bool is_source(int v) const { return arrows_into(v).empty(); }

  /// All paths from `from` to `to`, sorted lexicographically by arrow
  /// sequence (the trivial path first).
  std::vector<Path> paths(int from, int to) const;

  /// Same vertices, every arrow reversed (arrow indices preserved).
  Quiver opposite() const;
  /// Reverses every arrow incident to v (BGP reflection of the quiver).
  Quiver reflected_at(int v) const;

  void check_vertex(int v) const;

  friend bool operator==(const Quiver&, const Quiver&) = default;

 private:
  int n_ = 0;
  std::vector<Arrow> arrows_;
};

/// Nonnegative ranks, one per vertex.
using DimVector = std::vector<Integer>;

/// Returns a topological order (every arrow goes from earlier to later),
/// choosing the smallest available vertex first. Throws CyclicQuiver.
std::vector<int> validate(const Quiver& q);

struct EulerData {
  IntMatrix euler;    // <d, e> = d^T euler e
  IntMatrix coxeter;  // coxeter * dim M = dim tau M
  IntMatrix coxeter_inverse;
};

EulerData euler_data(const Quiver& q);

Integer euler_form(const Quiver& q, const DimVector& d, const DimVector& e);

/// Applies the Coxeter transformation `power` times (negative powers apply
/// its inverse).
IntVector coxeter_apply(const Quiver& q, const IntVector& d, int power);

enum class DynkinType { A, D, E6, E7, E8, NotDynkin };

struct DynkinClass {
  DynkinType type = DynkinType::NotDynkin;
  int rank = 0;

  std::string to_string() const;
  bool is_dynkin() const { return type != DynkinType::NotDynkin; }
};

/// Classifies the underlying graph. Disconnected quivers, multiple edges
/// and cycles give NotDynkin.
DynkinClass dynkin_type(const Quiver& q);

/// Dimension vector of the projective P_v (number of paths from v).
DimVector projective_dims(const Quiver& q, int v);
/// Dimension vector of the injective I_v (number of paths into v).
DimVector injective_dims(const Quiver& q, int v);

std::string dims_to_string(const IntVector& d);

}  // namespace clusterforge

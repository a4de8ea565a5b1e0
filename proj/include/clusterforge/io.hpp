#pragma once

// Text formats. Every file starts with the header line `clusterforge/1`;
// `#` starts a comment; other lines are `key: value`. Integers are decimal
// and unbounded, matrices are bracketed row lists.
//
// Quiver file:
//   clusterforge/1
//   vertices: 2
//   arrows: [[1,2]]
//
// Representation file (quiver inline, or `quiver: other-file` relative to
// this file):
//   clusterforge/1
//   vertices: 2
//   arrows: [[1,2]]
//   generators: [1,0]
//   relations 1: [[2]]        # g_1 x r_1, optional
//   action 1: [[1]]           # g_target x g_source, zero if omitted

#include <string>
#include <vector>

#include "clusterforge/cluster.hpp"
#include "clusterforge/rep.hpp"

namespace clusterforge {

Quiver parse_quiver(const std::string& text, const std::string& name = "<input>");
Quiver load_quiver(const std::string& path);

/// `q` is used when the text carries no quiver of its own; if it does, the
/// two must agree.
ZRep parse_rep(const std::string& text, const std::string& name = "<input>", const Quiver* q = nullptr,
               const std::string& base_dir = ".");
ZRep load_rep(const std::string& path, const Quiver* q = nullptr);

std::string format_quiver(const Quiver& q);
std::string format_rep(const ZRep& m);

/// A representation argument: a file path, or one of P<i>, I<i>, S<i>.
ZRep resolve_rep(const std::string& arg, const Quiver& q);

/// `;`-separated tokens P<i>, I<i>, S<i>, SP<i> or a rank vector (d1,...,dn)
/// looked up in the pool. Throws std::invalid_argument.
std::vector<ClusterObject> parse_cluster(const std::string& text, const RigidPool& pool);

}  // namespace clusterforge

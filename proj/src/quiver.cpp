#include "clusterforge/quiver.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace clusterforge {

Quiver::Quiver(int vertices, std::vector<Arrow> arrows)
    : n_(vertices), arrows_(std::move(arrows)) {
  if (n_ <= 0) throw std::invalid_argument("a quiver needs at least one vertex");
  for (const auto& a : arrows_) {
    if (a.source < 1 || a.source > n_ || a.target < 1 || a.target > n_)
      throw std::invalid_argument("arrow endpoint out of range");
    if (a.source == a.target)
      throw CyclicQuiver("loop at vertex " + std::to_string(a.source), {a.source});
  }
}

void Quiver::check_vertex(int v) const {
  if (v < 1 || v > n_)
    throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
}

std::vector<std::size_t> Quiver::arrows_into(int v) const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < arrows_.size(); ++a)
    if (arrows_[a].target == v) out.push_back(a);
  return out;
}

std::vector<std::size_t> Quiver::arrows_out_of(int v) const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < arrows_.size(); ++a)
    if (arrows_[a].source == v) out.push_back(a);
  return out;
}

std::vector<Path> Quiver::paths(int from, int to) const {
  check_vertex(from);
  check_vertex(to);
  std::vector<Path> out;
  Path cur{from, from, {}};
  std::function<void(int)> walk = [&](int v) {
    if (cur.arrows.size() > static_cast<std::size_t>(n_))
      throw CyclicQuiver("path enumeration on a quiver with an oriented cycle", {});
    if (v == to) out.push_back(Path{from, to, cur.arrows});
    for (std::size_t a = 0; a < arrows_.size(); ++a) {
      if (arrows_[a].source != v) continue;
      cur.arrows.push_back(a);
      walk(arrows_[a].target);
      cur.arrows.pop_back();
    }
  };
  walk(from);
  std::sort(out.begin(), out.end(),
            [](const Path& x, const Path& y) { return x.arrows < y.arrows; });
  return out;
}

Quiver Quiver::opposite() const {
  std::vector<Arrow> rev;
  rev.reserve(arrows_.size());
  for (const auto& a : arrows_) rev.push_back({a.target, a.source});
  return Quiver(n_, std::move(rev));
}

Quiver Quiver::reflected_at(int v) const {
  check_vertex(v);
  std::vector<Arrow> out = arrows_;
  for (auto& a : out)
    if (a.source == v || a.target == v) std::swap(a.source, a.target);
  return Quiver(n_, std::move(out));
}

std::vector<int> validate(const Quiver& q) {
  const int n = q.vertex_count();
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  for (const auto& a : q.arrows()) ++indeg[static_cast<std::size_t>(a.target - 1)];
  std::set<int> ready;
  for (int v = 1; v <= n; ++v)
    if (indeg[static_cast<std::size_t>(v - 1)] == 0) ready.insert(v);
  std::vector<int> order;
  while (!ready.empty()) {
    int v = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(v);
    for (const auto& a : q.arrows())
      if (a.source == v && --indeg[static_cast<std::size_t>(a.target - 1)] == 0)
        ready.insert(a.target);
  }
  if (static_cast<int>(order.size()) == n) return order;

  // Walk backwards along incoming arrows inside the unsorted remainder until
  // a vertex repeats; that closes a cycle.
  std::vector<bool> left(static_cast<std::size_t>(n), true);
  for (int v : order) left[static_cast<std::size_t>(v - 1)] = false;
  int start = 1;
  while (!left[static_cast<std::size_t>(start - 1)]) ++start;
  std::vector<int> trail;
  std::map<int, std::size_t> seen;
  int v = start;
  while (!seen.count(v)) {
    seen[v] = trail.size();
    trail.push_back(v);
    for (const auto& a : q.arrows())
      if (a.target == v && left[static_cast<std::size_t>(a.source - 1)]) {
        v = a.source;
        break;
      }
  }
  std::vector<int> cycle(trail.begin() + static_cast<std::ptrdiff_t>(seen[v]), trail.end());
  std::reverse(cycle.begin(), cycle.end());
  std::string msg = "oriented cycle:";
  for (int c : cycle) msg += " " + std::to_string(c);
  msg += " " + std::to_string(cycle.front());
  throw CyclicQuiver(msg, cycle);
}

namespace {

IntMatrix euler_matrix(const Quiver& q) {
  const auto n = static_cast<std::size_t>(q.vertex_count());
  IntMatrix b = IntMatrix::identity(n);
  for (const auto& a : q.arrows())
    b(static_cast<std::size_t>(a.source - 1), static_cast<std::size_t>(a.target - 1)) -= 1;
  return b;
}

// Inverse of a unimodular matrix via SNF (S is the identity).
IntMatrix unimodular_inverse(const IntMatrix& m) {
  SnfDecomposition d = snf(m);
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (d.rank != m.rows() || d.S(i, i) != 1)
      throw std::logic_error("matrix is not unimodular");
  return d.V_inv * d.U_inv;
}

}  // namespace

EulerData euler_data(const Quiver& q) {
  validate(q);
  EulerData e;
  e.euler = euler_matrix(q);
  // <x, y> = -<y, coxeter x> for x = dim of a non-projective indecomposable
  // forces coxeter = -euler^{-1} euler^T.
  IntMatrix inv = unimodular_inverse(e.euler);
  e.coxeter = Integer(-1) * (inv * e.euler.transpose());
  e.coxeter_inverse = unimodular_inverse(e.coxeter);
  return e;
}

Integer euler_form(const Quiver& q, const DimVector& d, const DimVector& e) {
  const auto n = static_cast<std::size_t>(q.vertex_count());
  if (d.size() != n || e.size() != n)
    throw std::invalid_argument("dimension vector length does not match quiver");
  Integer s = 0;
  for (std::size_t i = 0; i < n; ++i) s += d[i] * e[i];
  for (const auto& a : q.arrows())
    s -= d[static_cast<std::size_t>(a.source - 1)] * e[static_cast<std::size_t>(a.target - 1)];
  return s;
}

IntVector coxeter_apply(const Quiver& q, const IntVector& d, int power) {
  if (d.size() != static_cast<std::size_t>(q.vertex_count()))
    throw std::invalid_argument("dimension vector length does not match quiver");
  EulerData e = euler_data(q);
  const IntMatrix& step = power >= 0 ? e.coxeter : e.coxeter_inverse;
  IntVector v = d;
  for (int k = 0; k < (power >= 0 ? power : -power); ++k) v = step * v;
  return v;
}

std::string DynkinClass::to_string() const {
  switch (type) {
    case DynkinType::A: return "A" + std::to_string(rank);
    case DynkinType::D: return "D" + std::to_string(rank);
    case DynkinType::E6: return "E6";
    case DynkinType::E7: return "E7";
    case DynkinType::E8: return "E8";
    case DynkinType::NotDynkin: break;
  }
  return "NotDynkin";
}

DynkinClass dynkin_type(const Quiver& q) {
  const int n = q.vertex_count();
  DynkinClass none{DynkinType::NotDynkin, n};
  // a tree on n vertices has n-1 simple edges
  if (static_cast<int>(q.arrow_count()) != n - 1) return none;
  std::set<std::pair<int, int>> edges;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + 1);
  for (const auto& a : q.arrows()) {
    auto e = std::minmax(a.source, a.target);
    if (!edges.insert(e).second) return none;
    adj[static_cast<std::size_t>(a.source)].push_back(a.target);
    adj[static_cast<std::size_t>(a.target)].push_back(a.source);
  }
  // connectivity
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  std::vector<int> stack{1};
  seen[1] = true;
  int count = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++count;
    for (int w : adj[static_cast<std::size_t>(v)])
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        stack.push_back(w);
      }
  }
  if (count != n) return none;

  std::vector<int> branch;
  for (int v = 1; v <= n; ++v) {
    auto deg = adj[static_cast<std::size_t>(v)].size();
    if (deg > 3) return none;
    if (deg == 3) branch.push_back(v);
  }
  if (branch.empty()) return {DynkinType::A, n};
  if (branch.size() > 1) return none;

  // three legs out of the branch vertex; lengths count vertices
  int c = branch.front();
  std::vector<int> legs;
  for (int w : adj[static_cast<std::size_t>(c)]) {
    int len = 1, prev = c, cur = w;
    while (adj[static_cast<std::size_t>(cur)].size() == 2) {
      int next = adj[static_cast<std::size_t>(cur)][0] == prev
                     ? adj[static_cast<std::size_t>(cur)][1]
                     : adj[static_cast<std::size_t>(cur)][0];
      prev = cur;
      cur = next;
      ++len;
    }
    legs.push_back(len);
  }
  std::sort(legs.begin(), legs.end());
  if (legs[0] == 1 && legs[1] == 1) return {DynkinType::D, n};
  if (legs[0] == 1 && legs[1] == 2) {
    if (legs[2] == 2) return {DynkinType::E6, 6};
    if (legs[2] == 3) return {DynkinType::E7, 7};
    if (legs[2] == 4) return {DynkinType::E8, 8};
  }
  return none;
}

DimVector projective_dims(const Quiver& q, int v) {
  DimVector d(static_cast<std::size_t>(q.vertex_count()));
  for (int w = 1; w <= q.vertex_count(); ++w)
    d[static_cast<std::size_t>(w - 1)] = static_cast<unsigned long>(q.paths(v, w).size());
  return d;
}

DimVector injective_dims(const Quiver& q, int v) {
  DimVector d(static_cast<std::size_t>(q.vertex_count()));
  for (int w = 1; w <= q.vertex_count(); ++w)
    d[static_cast<std::size_t>(w - 1)] = static_cast<unsigned long>(q.paths(w, v).size());
  return d;
}

std::string dims_to_string(const IntVector& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += d[i].get_str();
  }
  return s + ")";
}

}  // namespace clusterforge

#include "clusterforge/cluster.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace clusterforge {

namespace {

// Process-wide memo tables. Keys are structural keys, which include the
// quiver, so entries from different quivers never collide.
template <class V>
class Memo {
 public:
  std::optional<V> get(const std::string& k) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(k);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }
  void put(const std::string& k, V v) {
    std::lock_guard<std::mutex> lock(mu_);
    map_.emplace(k, std::move(v));
  }

 private:
  std::mutex mu_;
  std::unordered_map<std::string, V> map_;
};

Memo<FinAbGroup>& hom_memo() {
  static Memo<FinAbGroup> m;
  return m;
}
Memo<FinAbGroup>& ext_memo() {
  static Memo<FinAbGroup> m;
  return m;
}
Memo<ShiftedModule>& f_memo() {
  static Memo<ShiftedModule> m;
  return m;
}

FinAbGroup cached_hom(const ZRep& m, const ZRep& n) {
  std::string k = m.structural_key() + "#" + n.structural_key();
  if (auto g = hom_memo().get(k)) return *g;
  FinAbGroup g = hom_group(m, n).group;
  hom_memo().put(k, g);
  return g;
}

FinAbGroup cached_ext(const ZRep& m, const ZRep& n) {
  std::string k = m.structural_key() + "#" + n.structural_key();
  if (auto g = ext_memo().get(k)) return *g;
  FinAbGroup g = ext1_group(m, n);
  ext_memo().put(k, g);
  return g;
}

// F^{power} for power = +-1, memoized on the module; the shift moves along.
ShiftedModule f_step(const ShiftedModule& x, int power) {
  std::string k = (power > 0 ? "+" : "-") + x.module.structural_key();
  ShiftedModule step;
  if (auto s = f_memo().get(k)) {
    step = *s;
  } else {
    step = f_apply({x.module, 0}, power, true);
    f_memo().put(k, step);
  }
  step.shift += x.shift;
  return step;
}

ShiftedModule f_power(ShiftedModule x, int l) {
  for (; l > 0; --l) x = f_step(x, 1);
  for (; l < 0; ++l) x = f_step(x, -1);
  return x;
}

IntVector class_of(const ShiftedModule& x) {
  IntVector d = x.module.rank_vector();
  if (x.shift % 2 != 0)
    for (auto& c : d) c = -c;
  return d;
}

bool within(const DimVector& d, int bound) {
  return std::all_of(d.begin(), d.end(), [&](const Integer& c) { return c <= bound; });
}

std::string join_labels(const std::vector<ClusterObject>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i].label();
  return s + "}";
}

}  // namespace

// ---------------------------------------------------------------- objects

ClusterObject ClusterObject::module(ZRep m) {
  ClusterObject x;
  x.kind_ = Kind::Module;
  x.rep_ = std::move(m);
  return x;
}

ClusterObject ClusterObject::shifted_projective(const Quiver& q, int i) {
  ClusterObject x;
  x.kind_ = Kind::ShiftedProjective;
  x.rep_ = projective(q, i);
  x.vertex_ = i;
  return x;
}

ShiftedModule ClusterObject::representative() const { return {rep_, is_module() ? 0 : 1}; }

IntVector ClusterObject::class_vector() const { return class_of(representative()); }

std::string ClusterObject::key() const {
  if (is_module()) return "M" + dims_to_string(rep_.rank_vector());
  return "SP" + std::to_string(vertex_);
}

std::string ClusterObject::label() const {
  if (is_module()) return dims_to_string(rep_.rank_vector());
  return "ΣP" + std::to_string(vertex_);
}

bool operator<(const ClusterObject& a, const ClusterObject& b) {
  if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
  if (!a.is_module()) return a.vertex_ < b.vertex_;
  return a.rep_.rank_vector() < b.rep_.rank_vector();
}

ClusterObject normalize(const ShiftedModule& x) {
  ShiftedModule cur = x;
  for (;;) {
    if (cur.shift == 0) return ClusterObject::module(cur.module);
    if (cur.shift == 1)
      if (auto i = projective_vertex(cur.module)) return ClusterObject::shifted_projective(cur.module.quiver(), *i);
    cur = f_step(cur, cur.shift > 0 ? 1 : -1);
  }
}

// ---------------------------------------------------------------- Hom in C

FinAbGroup hom_d(const ShiftedModule& x, const ShiftedModule& y) {
  const int d = y.shift - x.shift;
  if (d == 0) return cached_hom(x.module, y.module);
  if (d == 1) return cached_ext(x.module, y.module);
  return {};
}

std::vector<std::pair<int, FinAbGroup>> hom_c_terms(const ShiftedModule& x, const ShiftedModule& y) {
  std::vector<std::pair<int, FinAbGroup>> terms;
  // F lowers the shift, F^-1 raises it; Hom_D is nonzero only for offsets 0, 1
  ShiftedModule cur = y;
  for (int l = 0; cur.shift >= x.shift; ++l) {
    FinAbGroup g = hom_d(x, cur);
    if (!g.is_zero()) terms.emplace_back(l, g);
    cur = f_step(cur, 1);
  }
  cur = f_step(y, -1);
  for (int l = -1; cur.shift <= x.shift + 1; --l) {
    FinAbGroup g = hom_d(x, cur);
    if (!g.is_zero()) terms.emplace_back(l, g);
    cur = f_step(cur, -1);
  }
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return terms;
}

FinAbGroup hom_c(const ShiftedModule& x, const ShiftedModule& y) {
  FinAbGroup total;
  for (const auto& t : hom_c_terms(x, y)) total = total + t.second;
  return total;
}

FinAbGroup hom_c(const ClusterObject& x, const ClusterObject& y) {
  return hom_c(x.representative(), y.representative());
}

FinAbGroup ext1_c(const ClusterObject& x, const ClusterObject& y) {
  static Memo<FinAbGroup> memo;
  std::string k = x.key() + "#" + x.rep().structural_key() + "#" + y.key() + "#" + y.rep().structural_key();
  if (auto g = memo.get(k)) return *g;
  ShiftedModule sy = y.representative();
  sy.shift += 1;
  FinAbGroup g = hom_c(x.representative(), sy);
  memo.put(k, g);
  return g;
}

ZRep g_functor(const ClusterObject& x) {
  if (x.is_module()) return x.rep();
  return ZRep::zero(x.quiver());
}

// ---------------------------------------------------------------- pool

std::vector<PoolEntry> RigidPool::entries() const {
  std::lock_guard<std::mutex> lock(*mu_);
  std::vector<PoolEntry> out;
  for (const auto& [k, e] : by_key_) out.push_back(e);
  std::sort(out.begin(), out.end(), [](const PoolEntry& a, const PoolEntry& b) { return a.object < b.object; });
  return out;
}

std::vector<ClusterObject> RigidPool::objects() const {
  std::vector<ClusterObject> out;
  for (auto& e : entries()) out.push_back(std::move(e.object));
  return out;
}

std::size_t RigidPool::size() const {
  std::lock_guard<std::mutex> lock(*mu_);
  return by_key_.size();
}

bool RigidPool::insert(const ClusterObject& x, const std::string& provenance) {
  std::lock_guard<std::mutex> lock(*mu_);
  return by_key_.emplace(x.key(), PoolEntry{x, provenance}).second;
}

std::optional<ClusterObject> RigidPool::find(const std::string& key) const {
  std::lock_guard<std::mutex> lock(*mu_);
  auto it = by_key_.find(key);
  if (it == by_key_.end()) return std::nullopt;
  return it->second.object;
}

namespace {

// τ^-k P_i and τ^k I_i inside the bound. Returns false if some orbit was cut
// by the bound rather than ending at an injective (resp. projective).
bool orbit_modules(const Quiver& q, int bound,
                   const std::function<void(const ZRep&, const std::string&)>& emit) {
  bool closed = true;
  for (int i = 1; i <= q.vertex_count(); ++i) {
    ZRep m = projective(q, i);
    for (std::string tag = "projective";; tag = "tau-orbit") {
      if (!within(m.rank_vector(), bound)) {
        closed = false;
        break;
      }
      emit(m, tag);
      if (injective_vertex(m)) break;
      m = tau_inv_known_exceptional(m);
    }
    m = injective_lattice(q, i);
    for (std::string tag = "injective";; tag = "tau-orbit") {
      if (!within(m.rank_vector(), bound)) {
        closed = false;
        break;
      }
      emit(m, tag);
      if (projective_vertex(m)) break;
      m = tau_known_exceptional(m);
    }
  }
  return closed;
}

}  // namespace

RigidPool build_pool(const Quiver& q, int dim_bound) {
  if (dim_bound < 1) throw std::invalid_argument("dim bound must be positive");
  validate(q);
  RigidPool pool(q, dim_bound);
  for (int i = 1; i <= q.vertex_count(); ++i)
    pool.insert(ClusterObject::shifted_projective(q, i), "shifted-projective");
  bool closed = orbit_modules(q, dim_bound, [&](const ZRep& m, const std::string& tag) {
    pool.insert(ClusterObject::module(m), tag);
  });
  // transport orbit pools of reflected quivers back along C+-
  for (int v = 1; v <= q.vertex_count(); ++v) {
    if (!q.is_sink(v) && !q.is_source(v)) continue;
    if (q.arrows_into(v).empty() && q.arrows_out_of(v).empty()) continue;
    Quiver rq = q.reflected_at(v);
    orbit_modules(rq, dim_bound, [&](const ZRep& m, const std::string&) {
      ZRep back;
      try {
        back = reflect(m, v);
      } catch (const SimpleAtVertex&) {
        return;
      }
      if (!within(back.rank_vector(), dim_bound)) return;
      auto key = ClusterObject::module(back).key();
      if (pool.find(key)) return;
      if (is_exceptional(back)) pool.insert(ClusterObject::module(back), "reflection");
    });
  }
  pool.set_complete(closed && dynkin_type(q).is_dynkin());
  return pool;
}

// ---------------------------------------------------------------- tilting

TiltingCheck is_cluster_tilting(const std::vector<ClusterObject>& t) {
  if (t.empty()) return {false, "empty object"};
  const Quiver& q = t[0].quiver();
  if (t.size() != static_cast<std::size_t>(q.vertex_count()))
    return {false, "has " + std::to_string(t.size()) + " summands, expected " + std::to_string(q.vertex_count())};
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (t[i].key() == t[j].key()) return {false, "summands " + t[i].label() + " and " + t[j].label() + " are isomorphic"};
  for (const auto& a : t)
    for (const auto& b : t) {
      FinAbGroup g = ext1_c(a, b);
      if (!g.is_zero()) return {false, "Ext^1_C(" + a.label() + ", " + b.label() + ") = " + g.to_string()};
    }
  return {true, ""};
}

// ---------------------------------------------------------------- mutation

namespace {

bool compatible_with(const ClusterObject& y, const std::vector<ClusterObject>& complement) {
  for (const auto& c : complement)
    if (!ext1_c(y, c).is_zero() || !ext1_c(c, y).is_zero()) return false;
  return true;
}

const FinAbGroup kRankOne{1, {}};

bool injective_saturated(const RepMap& f) {
  for (const auto& c : f.components) {
    if (c.cols() == 0) continue;
    SnfDecomposition d = snf(c);
    if (d.rank != c.cols()) return false;
    for (std::size_t i = 0; i < d.rank; ++i)
      if (d.S(i, i) != 1) return false;
  }
  return true;
}

bool surjective(const RepMap& f) {
  for (const auto& c : f.components) {
    if (c.rows() == 0) continue;
    SnfDecomposition d = snf(c);
    if (d.rank != c.rows()) return false;
    for (std::size_t i = 0; i < d.rank; ++i)
      if (d.S(i, i) != 1) return false;
  }
  return true;
}

ZRep sum_of(const Quiver& q, const std::vector<ZRep>& parts) {
  ZRep out = ZRep::zero(q);
  for (const auto& p : parts) out = direct_sum(out, p);
  return out;
}

}  // namespace

ClusterObject mutate_construct(const std::vector<ClusterObject>& t, std::size_t k) {
  if (k >= t.size()) throw std::out_of_range("mutation position out of range");
  for (const auto& x : t)
    if (!x.is_module()) throw ConstructionFailed("construction needs module summands only; " + x.label() + " is shifted");
  const ZRep& x = t[k].rep();
  const Quiver& q = x.quiver();
  std::vector<ZRep> comp;
  std::vector<ClusterObject> complement;
  for (std::size_t j = 0; j < t.size(); ++j)
    if (j != k) {
      comp.push_back(t[j].rep());
      complement.push_back(t[j]);
    }

  std::optional<ZRep> y;
  // left approximation x -> sum C_j^{h_j}
  std::vector<ZRep> targets;
  std::vector<RepMap> maps;
  for (const auto& c : comp)
    for (auto& b : hom_group(x, c).basis) {
      targets.push_back(c);
      maps.push_back(std::move(b));
    }
  if (!maps.empty()) {
    RepMap u;
    for (int v = 1; v <= q.vertex_count(); ++v) {
      IntMatrix m(0, x.generators(v));
      for (const auto& f : maps) m = vstack(m, f.at(v));
      u.components.push_back(std::move(m));
    }
    if (injective_saturated(u)) y = cokernel(sum_of(q, targets), u).cokernel;
  }
  if (!y) {
    // right approximation sum C_j^{h_j} -> x
    std::vector<ZRep> sources;
    std::vector<RepMap> back;
    for (const auto& c : comp)
      for (auto& b : hom_group(c, x).basis) {
        sources.push_back(c);
        back.push_back(std::move(b));
      }
    if (back.empty()) throw ConstructionFailed("no maps between " + t[k].label() + " and its complement");
    RepMap w;
    for (int v = 1; v <= q.vertex_count(); ++v) {
      IntMatrix m(x.generators(v), 0);
      for (const auto& f : back) m = hstack(m, f.at(v));
      w.components.push_back(std::move(m));
    }
    if (!surjective(w))
      throw ConstructionFailed("approximations of " + t[k].label() + " are neither injective nor surjective");
    y = kernel(sum_of(q, sources), w);
  }
  for (const auto& c : comp)
    for (;;) {
      try {
        y = strip_summand(*y, c);
      } catch (const NotASummand&) {
        break;
      }
    }
  if (y->is_zero()) throw ConstructionFailed("approximation cone is in add of the complement");
  if (!is_exceptional(*y)) throw ConstructionFailed("approximation cone " + dims_to_string(y->rank_vector()) + " is not exceptional");
  ClusterObject out = ClusterObject::module(*y);
  if (ext1_c(t[k], out) != kRankOne || !compatible_with(out, complement))
    throw ConstructionFailed("constructed object " + out.label() + " fails the rank-one criterion");
  return out;
}

MutationResult mutate(const std::vector<ClusterObject>& t, std::size_t k, RigidPool& pool) {
  if (k >= t.size()) throw std::out_of_range("mutation position out of range");
  const ClusterObject& x = t[k];
  std::vector<ClusterObject> complement;
  for (std::size_t j = 0; j < t.size(); ++j)
    if (j != k) complement.push_back(t[j]);

  std::vector<ClusterObject> found;
  for (const auto& c : pool.objects()) {
    if (std::any_of(t.begin(), t.end(), [&](const ClusterObject& s) { return s.key() == c.key(); })) continue;
    if (ext1_c(x, c) != kRankOne) continue;
    if (!compatible_with(c, complement)) continue;
    found.push_back(c);
  }
  if (found.size() > 1)
    throw std::logic_error("several replacements for " + x.label() + " in " + join_labels(t) + ": " + join_labels(found));

  MutationResult r;
  if (found.empty()) {
    bool all_modules = std::all_of(t.begin(), t.end(), [](const ClusterObject& s) { return s.is_module(); });
    if (!all_modules)
      throw NotFoundWithinBound("no replacement for " + x.label() + " in " + join_labels(t) + " within dim bound " +
                                std::to_string(pool.dim_bound()));
    try {
      found.push_back(mutate_construct(t, k));
    } catch (const ConstructionFailed& e) {
      throw NotFoundWithinBound("no replacement for " + x.label() + " in " + join_labels(t) + " within dim bound " +
                                std::to_string(pool.dim_bound()) + " (construction: " + e.what() + ")");
    }
    if (!within(found[0].rep().rank_vector(), pool.dim_bound()))
      throw NotFoundWithinBound("replacement " + found[0].label() + " for " + x.label() + " exceeds dim bound " +
                                std::to_string(pool.dim_bound()));
    pool.insert(found[0], "mutation-cone");
    r.constructed = true;
  }
  r.cluster = t;
  r.cluster[k] = found[0];
  r.triangles = exchange_triangles(x, found[0], complement);
  return r;
}

// ---------------------------------------------------------------- triangles

namespace {

struct MiddleTerm {
  std::vector<ClusterObject> objects;
  int l = 0;
  std::optional<RepMap> witness;
};

// Triangle a -> e -> b -> Σa in C. Its connecting map lives in the single
// orbit term Hom_D(b, F^l Σa) = Z; lifting gives F^l a -> E~ -> b -> ΣF^l a in
// D, so [E~] = [F^l a] + [b] in K_0(D). The summands of E~ are F-translates
// of complement summands sitting between F^l a and b.
MiddleTerm middle_term(const ClusterObject& a, const ClusterObject& b, const std::vector<ClusterObject>& complement) {
  ShiftedModule ra = a.representative(), rb = b.representative();
  ShiftedModule sa = ra;
  sa.shift += 1;
  auto terms = hom_c_terms(rb, sa);
  if (terms.size() != 1 || terms[0].second != kRankOne)
    throw BalanceUnsolvable("Hom_C(" + b.label() + ", Σ" + a.label() + ") is not carried by a single rank-one term");
  MiddleTerm out;
  out.l = terms[0].first;
  ShiftedModule fa = f_power(ra, out.l);

  IntVector target = class_of(fa);
  IntVector cb = class_of(rb);
  for (std::size_t i = 0; i < target.size(); ++i) target[i] += cb[i];

  struct Candidate {
    std::size_t summand;
    ShiftedModule lift;
  };
  std::vector<Candidate> cands;
  for (std::size_t j = 0; j < complement.size(); ++j) {
    auto consider = [&](const ShiftedModule& c) {
      if (!hom_d(fa, c).is_zero() && !hom_d(c, rb).is_zero()) cands.push_back({j, c});
    };
    ShiftedModule c = complement[j].representative();
    for (ShiftedModule cur = c; cur.shift >= fa.shift; cur = f_step(cur, 1))
      if (cur.shift <= rb.shift) consider(cur);
    for (ShiftedModule cur = f_step(c, -1); cur.shift <= rb.shift; cur = f_step(cur, -1))
      if (cur.shift >= fa.shift) consider(cur);
  }

  // smallest multiplicities (total, then lexicographic) balancing the classes
  const int max_mult = 3;
  std::vector<int> mult(cands.size(), 0), best;
  int best_total = -1;
  std::vector<IntVector> cls;
  for (const auto& c : cands) cls.push_back(class_of(c.lift));
  std::function<void(std::size_t, IntVector, int)> search = [&](std::size_t i, IntVector rest, int total) {
    if (best_total >= 0 && total > best_total) return;
    if (i == cands.size()) {
      if (std::all_of(rest.begin(), rest.end(), [](const Integer& v) { return v == 0; }) &&
          (best_total < 0 || total < best_total)) {
        best = mult;
        best_total = total;
      }
      return;
    }
    for (int m = 0; m <= max_mult; ++m) {
      mult[i] = m;
      search(i + 1, rest, total + m);
      for (std::size_t d = 0; d < rest.size(); ++d) rest[d] -= cls[i][d];
    }
    mult[i] = 0;
  };
  search(0, target, 0);
  if (best_total < 0)
    throw BalanceUnsolvable("no middle term in add of the complement balances " + a.label() + " -> ? -> " + b.label());

  bool plain = out.l == 0 && a.is_module() && b.is_module();
  std::vector<ZRep> parts;
  for (std::size_t i = 0; i < cands.size(); ++i)
    for (int m = 0; m < best[i]; ++m) {
      out.objects.push_back(complement[cands[i].summand]);
      plain = plain && cands[i].lift.shift == 0;
      parts.push_back(cands[i].lift.module);
    }
  std::sort(out.objects.begin(), out.objects.end());

  if (plain && !parts.empty()) {
    // 0 -> a -> E -> b -> 0: look for an injection with saturated cokernel b
    const Quiver& q = a.quiver();
    ZRep e = sum_of(q, parts);
    auto basis = hom_group(a.rep(), e).basis;
    if (basis.size() <= 8) {
      std::vector<int> coef(basis.size(), -1);
      std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == basis.size()) {
          RepMap f;
          for (int v = 1; v <= q.vertex_count(); ++v) {
            IntMatrix m(e.generators(v), a.rep().generators(v));
            for (std::size_t s = 0; s < basis.size(); ++s)
              if (coef[s] != 0) m = m + Integer(coef[s]) * basis[s].at(v);
            f.components.push_back(std::move(m));
          }
          if (!injective_saturated(f)) return false;
          for (const auto& c : f.components)
            if (c.cols() && c.is_zero()) return false;
          ZRep cok = cokernel(e, f).cokernel;
          if (cok.rank_vector() != b.rep().rank_vector() || !is_exceptional(cok)) return false;
          if (!are_isomorphic_exceptional(cok, b.rep())) return false;
          out.witness = f;
          return true;
        }
        for (int c : {1, 0, -1}) {
          coef[i] = c;
          if (rec(i + 1)) return true;
        }
        return false;
      };
      rec(0);
    }
  }
  return out;
}

std::string map_to_string(const RepMap& f) {
  std::string s;
  for (std::size_t v = 0; v < f.components.size(); ++v)
    s += (v ? " " : "") + std::to_string(v + 1) + ":" + f.components[v].to_string();
  return s;
}

}  // namespace

ExchangeTriangleData exchange_triangles(const ClusterObject& x, const ClusterObject& y,
                                        const std::vector<ClusterObject>& complement) {
  if (ext1_c(x, y) != kRankOne)
    throw PreconditionViolated("Ext^1_C(" + x.label() + ", " + y.label() + ") is not free of rank one");
  ExchangeTriangleData d;
  d.x = x;
  d.y = y;
  MiddleTerm first = middle_term(y, x, complement);
  MiddleTerm second = middle_term(x, y, complement);
  d.e = first.objects;
  d.l = first.l;
  d.witness = first.witness;
  d.e_prime = second.objects;
  d.l_prime = second.l;
  d.witness_prime = second.witness;
  return d;
}

std::string ExchangeTriangleData::to_string() const {
  std::ostringstream os;
  os << y.label() << " -> " << join_labels(e) << " -> " << x.label() << " -> Σ" << y.label() << "  [l=" << l << "]";
  if (witness) os << "  injection " << map_to_string(*witness);
  os << "\n";
  os << x.label() << " -> " << join_labels(e_prime) << " -> " << y.label() << " -> Σ" << x.label() << "  [l="
     << l_prime << "]";
  if (witness_prime) os << "  injection " << map_to_string(*witness_prime);
  os << "\n";
  return os.str();
}

// ---------------------------------------------------------------- graph

std::vector<ClusterObject> sorted_cluster(std::vector<ClusterObject> t) {
  std::sort(t.begin(), t.end());
  return t;
}

std::string cluster_key(const std::vector<ClusterObject>& t) {
  std::string s;
  for (const auto& x : sorted_cluster(t)) s += x.key() + ";";
  return s;
}

std::size_t ExchangeGraph::degree(std::size_t node) const {
  std::size_t d = 0;
  for (const auto& e : edges) d += (e.from == node) + (e.to == node);
  return d;
}

std::string ExchangeGraph::node_key(std::size_t node) const { return cluster_key(nodes.at(node)); }

std::string ExchangeGraph::to_dot() const {
  std::ostringstream os;
  os << "graph exchange {\n";
  if (truncated) os << "  // truncated\n  label=\"truncated\";\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) os << "  n" << i << " [label=\"" << join_labels(nodes[i]) << "\"];\n";
  for (const auto& e : edges)
    os << "  n" << e.from << " -- n" << e.to << " [label=\"" << e.position + 1 << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string ExchangeGraph::to_json() const {
  using nlohmann::ordered_json;
  auto labels = [](const std::vector<ClusterObject>& xs) {
    ordered_json a = ordered_json::array();
    for (const auto& x : xs) a.push_back(x.label());
    return a;
  };
  ordered_json j;
  ordered_json arrows = ordered_json::array();
  for (const auto& a : quiver.arrows()) arrows.push_back({a.source, a.target});
  j["quiver"] = {{"vertices", quiver.vertex_count()}, {"arrows", arrows}};
  j["truncated"] = truncated;
  j["notes"] = notes;
  ordered_json ns = ordered_json::array();
  for (std::size_t i = 0; i < nodes.size(); ++i) ns.push_back({{"id", i}, {"summands", labels(nodes[i])}});
  j["nodes"] = ns;
  ordered_json es = ordered_json::array();
  for (const auto& e : edges)
    es.push_back({{"from", e.from},
                  {"to", e.to},
                  {"position", e.position + 1},
                  {"x", e.triangles.x.label()},
                  {"y", e.triangles.y.label()},
                  {"e", labels(e.triangles.e)},
                  {"e_prime", labels(e.triangles.e_prime)}});
  j["edges"] = es;
  return j.dump(2) + "\n";
}

ExchangeGraph exchange_graph(RigidPool& pool, std::size_t max_nodes) {
  const Quiver& q = pool.quiver();
  ExchangeGraph g;
  g.quiver = q;
  std::vector<ClusterObject> start;
  for (int i = 1; i <= q.vertex_count(); ++i) start.push_back(ClusterObject::module(projective(q, i)));
  std::unordered_map<std::string, std::size_t> index;
  g.nodes.push_back(sorted_cluster(start));
  index[cluster_key(start)] = 0;
  bool capped = false;
  for (std::size_t cur = 0; cur < g.nodes.size(); ++cur) {
    const auto node = g.nodes[cur];
    for (std::size_t k = 0; k < node.size(); ++k) {
      MutationResult r;
      try {
        r = mutate(node, k, pool);
      } catch (const NotFoundWithinBound& e) {
        g.truncated = true;
        g.notes.push_back(e.what());
        continue;
      }
      std::string key = cluster_key(r.cluster);
      auto it = index.find(key);
      std::size_t to;
      if (it == index.end()) {
        if (g.nodes.size() >= max_nodes) {
          if (!capped) g.notes.push_back("stopped at max nodes " + std::to_string(max_nodes));
          capped = true;
          g.truncated = true;
          continue;
        }
        to = g.nodes.size();
        g.nodes.push_back(sorted_cluster(r.cluster));
        index[key] = to;
      } else {
        to = it->second;
      }
      if (to > cur) g.edges.push_back({cur, to, k, r.triangles});
    }
  }
  return g;
}

ExchangeGraph exchange_graph(const Quiver& q, int dim_bound, std::size_t max_nodes) {
  RigidPool pool = build_pool(q, dim_bound);
  return exchange_graph(pool, max_nodes);
}

// ---------------------------------------------------------------- mod p

BijectionReport verify_bijection_mod_p(const RigidPool& pool, unsigned long p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  BijectionReport r;
  r.prime = p;
  std::map<std::string, std::string> seen;
  for (const auto& x : pool.objects()) {
    ++r.objects;
    FieldRep f = base_change(x.rep(), p);
    FieldDims d = field_hom_ext_dims(f, f);
    if (d.hom == 1 && d.ext1 == 0)
      ++r.rigid_reductions;
    else
      r.violations.push_back(x.label() + " reduces to End dim " + std::to_string(d.hom) + ", Ext^1 dim " +
                             std::to_string(d.ext1));
    std::string red = (x.is_module() ? "M" : "S") + dims_to_string(f.dim_vector());
    auto [it, fresh] = seen.emplace(red, x.label());
    if (fresh)
      ++r.distinct_reductions;
    else
      r.violations.push_back(x.label() + " and " + it->second + " have the same reduction");
  }
  return r;
}

}  // namespace clusterforge
